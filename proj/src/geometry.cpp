#include "spinsurf/geometry.hpp"

#include <algorithm>

namespace spinsurf {

// ---------------------------------------------------------------------------
// Coefficients

Coefficient Coefficient::diff(Deriv which) const {
  if (is_constant()) return Coefficient(0.0);
  return Coefficient(spinsurf::diff(field(), which));
}

ScalarField Coefficient::materialize(const Grid& g) const {
  if (is_constant()) return ScalarField(g, constant());
  check_grid(g);
  return field();
}

void Coefficient::check_grid(const Grid& g) const {
  if (is_constant()) {
    if (!std::isfinite(constant())) throw GridError("non-finite coefficient");
    return;
  }
  require_same_grid(field().grid(), g, "coefficient");
  if (!all_finite(field())) throw GridError("non-finite coefficient field");
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
  if (a.is_constant() && b.is_constant()) return Coefficient(a.constant() + b.constant());
  const Grid& g = a.is_constant() ? b.field().grid() : a.field().grid();
  return Coefficient(a.materialize(g) + b.materialize(g));
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
  if (a.is_constant() && b.is_constant()) return Coefficient(a.constant() - b.constant());
  const Grid& g = a.is_constant() ? b.field().grid() : a.field().grid();
  return Coefficient(a.materialize(g) - b.materialize(g));
}

void CoefficientSet::check_grid(const Grid& g) const {
  for (const auto& c : a) c.check_grid(g);
  for (const auto& c : b) c.check_grid(g);
}

CoefficientSet operator+(const CoefficientSet& x, const CoefficientSet& y) {
  CoefficientSet out;
  for (int k = 0; k < 5; ++k) {
    out.a[k] = x.a[k] + y.a[k];
    out.b[k] = x.b[k] + y.b[k];
  }
  return out;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Coefficient negate(const Coefficient& c) { return Coefficient(0.0) - c; }

template <class K>
CoefficientSet mxiii_family(const K& k, const Grid& g, bool variant_b) {
  require_same_grid(k.phi.grid(), g, "classical_coeffs phi");
  CoefficientSet c;
  c.a[0] = k.a1;
  c.a[1] = k.a2;
  c.b[0] = k.b1;
  c.b[1] = k.b2;
  c.a[2] = k.a3;
  c.b[3] = k.a3;
  const Coefficient phi_x(diff(k.phi, Deriv::Dx));
  const Coefficient phi_y(diff(k.phi, Deriv::Dy));
  const Coefficient a3x = k.a3.diff(Deriv::Dx);
  const Coefficient a3y = k.a3.diff(Deriv::Dy);
  // A: a5 = a3_x + phi_x, b5 = a3_y - phi_y.  B: a5 = a3_x + phi_y, b5 = a3_y - phi_x.
  c.a[4] = a3x + (variant_b ? phi_y : phi_x);
  c.b[4] = a3y - (variant_b ? phi_x : phi_y);
  return c;
}

} // namespace

CoefficientSet classical_coeffs(const coeffs::Kind& kind, const Grid& grid) {
  CoefficientSet c = std::visit(
      overloaded{
          [](const coeffs::Rodrigues& k) {
            CoefficientSet c;
            c.a[2] = negate(k.rho1);
            c.b[3] = negate(k.rho2);
            return c;
          },
          [](const coeffs::Lelieuvre& k) {
            CoefficientSet c;
            c.a[0] = negate(k.rho);
            c.b[1] = k.rho;
            return c;
          },
          [](const coeffs::Schief& k) {
            CoefficientSet c;
            c.a[0] = negate(k.rho);
            c.b[1] = k.rho;
            c.a[2] = k.mu;
            c.b[3] = k.mu;
            return c;
          },
          [](const coeffs::HF&) {
            CoefficientSet c;
            c.a[4] = 1.0;
            c.b[0] = 1.0;
            return c;
          },
          [](const coeffs::LLEStationary&) {
            CoefficientSet c;
            c.a[1] = 1.0;
            c.b[0] = -1.0;
            return c;
          },
          [&](const coeffs::MXIIIA& k) { return mxiii_family(k, grid, false); },
          [&](const coeffs::MXIIIB& k) { return mxiii_family(k, grid, true); },
      },
      kind);
  c.check_grid(grid);
  return c;
}

CoefficientSet coeffs_from_params(const std::string& name,
                                  const std::map<std::string, double>& params, const Grid& grid,
                                  const std::optional<ScalarField>& phi) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw MissingParameter("coefficient kind '" + name + "' needs parameter '" + key + "'");
    return it->second;
  };
  auto get_or = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "rodrigues") return classical_coeffs(coeffs::Rodrigues{get("rho1"), get("rho2")}, grid);
  if (name == "lelieuvre") return classical_coeffs(coeffs::Lelieuvre{get("rho")}, grid);
  if (name == "schief") return classical_coeffs(coeffs::Schief{get("rho"), get("mu")}, grid);
  if (name == "hf") return classical_coeffs(coeffs::HF{}, grid);
  if (name == "lle") return classical_coeffs(coeffs::LLEStationary{}, grid);
  if (name == "m-xiiia" || name == "m-xiiib") {
    if (!phi) throw MissingParameter("coefficient kind '" + name + "' needs a potential phi");
    const double a1 = get("a1"), a2 = get("a2"), b1 = get("b1"), b2 = get("b2");
    const double a3 = get_or("a3", 0.0);
    if (name == "m-xiiia") return classical_coeffs(coeffs::MXIIIA{a1, a2, b1, b2, a3, *phi}, grid);
    return classical_coeffs(coeffs::MXIIIB{a1, a2, b1, b2, a3, *phi}, grid);
  }
  throw MissingParameter("unknown coefficient kind '" + name + "'");
}

// ---------------------------------------------------------------------------
// Tangents and residuals

namespace {

VecField times(const Coefficient& c, const VecField& v) {
  if (c.is_constant()) return c.constant() * v;
  return scale(c.field(), v);
}

ScalarField times(const Coefficient& c, const ScalarField& v) {
  if (c.is_constant()) return c.constant() * v;
  return multiply(c.field(), v);
}

/// The five basis vectors T = {N^N_x, N^N_y, N_x, N_y, N}. The y-based
/// entries are only computed when `need_y`.
struct Basis {
  std::array<std::optional<VecField>, 5> t;
};

bool uses_y(const CoefficientSet& c) {
  return !c.a[1].is_zero() || !c.a[3].is_zero() || !c.b[1].is_zero() || !c.b[3].is_zero();
}

Basis basis(const VecField& n, bool need_y) {
  Basis out;
  const VecField nx = diff(n, Deriv::Dx);
  out.t[0] = cross(n, nx);
  out.t[2] = nx;
  out.t[4] = n;
  if (need_y) {
    VecField ny = diff(n, Deriv::Dy);
    out.t[1] = cross(n, ny);
    out.t[3] = std::move(ny);
  }
  return out;
}

VecField combine(const std::array<Coefficient, 5>& coef, const Basis& t, const Grid& g) {
  VecField out(g);
  for (int k = 0; k < 5; ++k) {
    if (coef[k].is_zero()) continue;
    out += times(coef[k], *t.t[k]);
  }
  return out;
}

Tangents tangents_impl(const VecField& n, const CoefficientSet& c) {
  const Grid& g = n.grid();
  c.check_grid(g);
  const Basis t = basis(n, uses_y(c));
  return {combine(c.a, t, g), combine(c.b, t, g)};
}

VecField flux_residual(const VecField& n, const CoefficientSet& c) {
  const Grid& g = n.grid();
  if (g.is_1d()) throw GridError("N-system residual needs a 2-D grid");
  c.check_grid(g);
  const Basis t = basis(n, true);
  VecField out(g);
  for (int k = 0; k < 5; ++k) {
    if (!c.a[k].is_zero()) out += diff(times(c.a[k], *t.t[k]), Deriv::Dy);
    if (!c.b[k].is_zero()) out -= diff(times(c.b[k], *t.t[k]), Deriv::Dx);
  }
  return out;
}

struct Derivs {
  VecField nx, ny, nxx, nyy, nxy;
  explicit Derivs(const VecField& n)
      : nx(diff(n, Deriv::Dx)), ny(diff(n, Deriv::Dy)), nxx(diff(n, Deriv::Dxx)),
        nyy(diff(n, Deriv::Dyy)), nxy(diff(n, Deriv::Dxy)) {}
};

/// (a3 - b4) N_xy + a4 N_yy - b3 N_xx
VecField second_order_bracket(const CoefficientSet& c, const Derivs& d, const Grid& g) {
  VecField out(g);
  const Coefficient a3_b4 = c.a[2] - c.b[3];
  if (!a3_b4.is_zero()) out += times(a3_b4, d.nxy);
  if (!c.a[3].is_zero()) out += times(c.a[3], d.nyy);
  if (!c.b[2].is_zero()) out -= times(c.b[2], d.nxx);
  return out;
}

ScalarField scalar_residual(const VecField& n, const CoefficientSet& c, const Derivs& d,
                            bool spin_form) {
  const Grid& g = n.grid();
  const ScalarField lhs = (c.b[4].diff(Deriv::Dx) - c.a[4].diff(Deriv::Dy)).materialize(g);
  const Coefficient a1_b2 = c.a[0] + c.b[1];
  ScalarField rhs = times(a1_b2, triple(n, d.ny, d.nx));
  rhs += dot(n, second_order_bracket(c, d, g));
  if (spin_form) return lhs - rhs;

  const Coefficient cx = c.a[2].diff(Deriv::Dy) - c.b[4] - c.b[2].diff(Deriv::Dx);
  const Coefficient cy = c.a[4] + c.a[3].diff(Deriv::Dy) - c.b[3].diff(Deriv::Dx);
  rhs += times(cx, dot(n, d.nx));
  rhs += times(cy, dot(n, d.ny));
  ScalarField out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double nn = dot(n(i, j), n(i, j));
      if (!(std::sqrt(nn) >= 1e-8)) throw NearZeroNorm(i, j);
      out(i, j) = lhs(i, j) - rhs(i, j) / nn;
    }
  return out;
}

VecField expanded_vector_residual(const VecField& n, const CoefficientSet& c, const Derivs& d) {
  const Grid& g = n.grid();
  VecField out(g);
  auto add = [&](const Coefficient& k, const VecField& v) {
    if (!k.is_zero()) out += times(k, v);
  };
  add(c.a[0].diff(Deriv::Dy) - c.b[0].diff(Deriv::Dx), cross(n, d.nx));
  add(c.a[1].diff(Deriv::Dy) - c.b[1].diff(Deriv::Dx), cross(n, d.ny));
  add(c.a[0] + c.b[1], cross(d.ny, d.nx));
  {
    VecField bracket(g);
    if (!c.a[1].is_zero()) bracket += times(c.a[1], d.nyy);
    const Coefficient a1_b2 = c.a[0] - c.b[1];
    if (!a1_b2.is_zero()) bracket += times(a1_b2, d.nxy);
    if (!c.b[0].is_zero()) bracket -= times(c.b[0], d.nxx);
    out += cross(n, bracket);
  }
  add(c.a[4].diff(Deriv::Dy) - c.b[4].diff(Deriv::Dx), n);
  add(c.a[2].diff(Deriv::Dy) - c.b[4] - c.b[2].diff(Deriv::Dx), d.nx);
  add(c.a[4] + c.a[3].diff(Deriv::Dy) - c.b[3].diff(Deriv::Dx), d.ny);
  out += second_order_bracket(c, d, g);
  return out;
}

ResidualReport residual_impl(const VecField& n, const CoefficientSet& c, bool spin_form,
                             bool expanded) {
  const Grid& g = n.grid();
  if (g.is_1d()) throw GridError("N-system residual needs a 2-D grid");
  c.check_grid(g);
  const Derivs d(n);
  VecField vec = expanded ? expanded_vector_residual(n, c, d) : flux_residual(n, c);
  return ResidualReport(std::move(vec), scalar_residual(n, c, d, spin_form));
}

} // namespace

Tangents mf_tangents(const SpinField& s, const CoefficientSet& c) { return tangents_impl(s.vec(), c); }
Tangents mf_tangents(const VecField& n, const CoefficientSet& c) { return tangents_impl(n, c); }

ResidualReport::ResidualReport(VecField v, ScalarField s)
    : vector_residual(std::move(v)), scalar_residual(std::move(s)) {
  vector_max = max_norm(vector_residual);
  vector_l2 = l2_norm(vector_residual);
  scalar_max = max_abs(scalar_residual);
  scalar_l2 = l2_norm(scalar_residual);
}

ResidualReport n_system_residual(const VecField& n, const CoefficientSet& c) {
  return residual_impl(n, c, false, false);
}
ResidualReport n_system_residual(const SpinField& s, const CoefficientSet& c) {
  return residual_impl(s.vec(), c, true, false);
}
ResidualReport n_system_residual_expanded(const VecField& n, const CoefficientSet& c) {
  return residual_impl(n, c, false, true);
}
ResidualReport n_system_residual_expanded(const SpinField& s, const CoefficientSet& c) {
  return residual_impl(s.vec(), c, true, true);
}

// ---------------------------------------------------------------------------
// Reconstruction

Reconstruction reconstruct_from_tangents(const VecField& rx, const VecField& ry, const Vec3& base) {
  require_same_grid(rx.grid(), ry.grid(), "reconstruct");
  const Grid& src = rx.grid();
  if (src.ny() < 2) throw GridError("surface reconstruction needs ny >= 2");
  const Grid g = src.with_boundary(Boundary::Clamped);
  const double hx = 0.5 * g.dx(), hy = 0.5 * g.dy();
  const int nx = g.nx(), ny = g.ny();

  VecField a(g), b(g);
  // Sweep A: along row 0, then up each column.
  a(0, 0) = base;
  for (int i = 1; i < nx; ++i) a(i, 0) = a(i - 1, 0) + hx * (rx(i - 1, 0) + rx(i, 0));
  for (int i = 0; i < nx; ++i)
    for (int j = 1; j < ny; ++j) a(i, j) = a(i, j - 1) + hy * (ry(i, j - 1) + ry(i, j));
  // Sweep B: up column 0, then along each row.
  b(0, 0) = base;
  for (int j = 1; j < ny; ++j) b(0, j) = b(0, j - 1) + hy * (ry(0, j - 1) + ry(0, j));
  for (int j = 0; j < ny; ++j)
    for (int i = 1; i < nx; ++i) b(i, j) = b(i - 1, j) + hx * (rx(i - 1, j) + rx(i, j));

  double mismatch = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) mismatch = std::max(mismatch, (a[k] - b[k]).norm());
  return {SurfaceMesh{std::move(a)}, mismatch};
}

Reconstruction reconstruct_surface(const SpinField& s, const CoefficientSet& c, const Vec3& base) {
  if (s.grid().ny() < 2) throw GridError("surface reconstruction needs ny >= 2");
  const Tangents t = mf_tangents(s, c);
  return reconstruct_from_tangents(t.rx, t.ry, base);
}

VecField unit_normal(const SurfaceMesh& m) {
  const VecField rx = diff(m.positions, Deriv::Dx);
  const VecField ry = diff(m.positions, Deriv::Dy);
  const Grid& g = m.grid();
  VecField n(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Vec3 c = cross(rx(i, j), ry(i, j));
      const double len = c.norm();
      if (!(len >= 1e-10)) throw DegenerateTangent(i, j);
      n(i, j) = c / len;
    }
  return n;
}

} // namespace spinsurf
