#include "spinsurf/spin_models.hpp"

#include <cmath>
#include <numbers>

#include "spinsurf/solvers.hpp"

namespace spinsurf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_2d(const Grid& g, const char* what) {
  if (g.is_1d()) throw GridError(std::string(what) + " needs a 2-D grid");
}

VecField times(const Coefficient& c, const VecField& v) {
  if (c.is_constant()) return c.constant() * v;
  return scale(c.field(), v);
}

/// S ^ [a2 S_yy + (a1 - b2) S_xy - b1 S_xx]
VecField wedge_part(const VecField& s, double a1, double a2, double b1, double b2) {
  VecField inner(s.grid());
  if (a2 != 0.0) inner += a2 * diff(s, Deriv::Dyy);
  if (a1 - b2 != 0.0) inner += (a1 - b2) * diff(s, Deriv::Dxy);
  if (b1 != 0.0) inner -= b1 * diff(s, Deriv::Dxx);
  return cross(s, inner);
}

VecField wedge_part(const VecField& s, const CoefficientSet& c) {
  VecField inner(s.grid());
  if (!c.a[1].is_zero()) inner += times(c.a[1], diff(s, Deriv::Dyy));
  const Coefficient a1_b2 = c.a[0] - c.b[1];
  if (!a1_b2.is_zero()) inner += times(a1_b2, diff(s, Deriv::Dxy));
  if (!c.b[0].is_zero()) inner -= times(c.b[0], diff(s, Deriv::Dxx));
  return cross(s, inner);
}

ScalarField charge_density(const VecField& s) {
  return triple(s, diff(s, Deriv::Dx), diff(s, Deriv::Dy));
}

void check_mxiii_shape(const CoefficientSet& c, const Grid& g) {
  c.check_grid(g);
  if (!c.b[2].is_zero() || !c.a[3].is_zero())
    throw InvalidCoefficients("M-XIII requires b3 = a4 = 0");
  const Coefficient d = c.b[3] - c.a[2];
  bool same = d.is_constant() ? d.constant() == 0.0 : max_abs(d.field()) == 0.0;
  if (!same) throw InvalidCoefficients("M-XIII requires b4 = a3");
}

} // namespace

std::string model_name(const SpinModelKind& kind) {
  return std::visit(overloaded{
                        [](const model::HF&) { return std::string("hf"); },
                        [](const model::LLE&) { return std::string("lle"); },
                        [](const model::MXIII&) { return std::string("m-xiii"); },
                        [](const model::MXIIIA&) { return std::string("m-xiiia"); },
                        [](const model::MXIIIB&) { return std::string("m-xiiib"); },
                        [](const model::IshimoriStationary&) { return std::string("ishimori"); },
                    },
                    kind);
}

std::string orientation_tag(const SpinModelKind& kind) {
  const bool syx = std::holds_alternative<model::HF>(kind) || std::holds_alternative<model::LLE>(kind);
  return model_name(kind) + "-orientation:" + (syx ? "SyxSx" : "SxxSy");
}

VecField hf_rhs(const VecField& s) { return cross(s, diff(s, Deriv::Dxx)); }

VecField lle_rhs(const VecField& s) {
  require_2d(s.grid(), "lle_rhs");
  return cross(s, diff(s, Deriv::Dxx) + diff(s, Deriv::Dyy));
}

MXIIIResult mxiii_rhs(const VecField& s, const CoefficientSet& c) {
  const VecField& S = s;
  const Grid& g = s.grid();
  require_2d(g, "mxiii_rhs");
  check_mxiii_shape(c, g);
  const VecField sx = diff(S, Deriv::Dx), sy = diff(S, Deriv::Dy);

  VecField rhs = wedge_part(S, c);
  const Coefficient cx = c.a[2].diff(Deriv::Dy) - c.b[4];
  const Coefficient cy = c.a[4] - c.a[2].diff(Deriv::Dx);
  if (!cx.is_zero()) rhs += times(cx, sx);
  if (!cy.is_zero()) rhs += times(cy, sy);

  const Coefficient lhs = c.a[4].diff(Deriv::Dy) - c.b[4].diff(Deriv::Dx);
  const Coefficient a1_b2 = c.a[0] + c.b[1];
  ScalarField constraint = lhs.materialize(g);
  if (!a1_b2.is_zero()) {
    const ScalarField t = triple(S, sx, sy);
    constraint -= a1_b2.is_constant() ? a1_b2.constant() * t : multiply(a1_b2.field(), t);
  }
  return {std::move(rhs), std::move(constraint)};
}

PotentialSystem mxiiia_system(const VecField& s, const model::MXIIIA& p,
                              const std::vector<double>& phi_row0,
                              const std::vector<double>& phi_col0) {
  const VecField& S = s;
  require_2d(s.grid(), "mxiiia_system");
  const ScalarField source = (0.5 * (p.a1 + p.b2)) * charge_density(S);
  PotentialField phi = mixed_integrate(source, phi_row0, phi_col0);
  VecField rhs = wedge_part(S, p.a1, p.a2, p.b1, p.b2);
  rhs += scale(diff(phi, Deriv::Dy), diff(S, Deriv::Dx));
  rhs += scale(diff(phi, Deriv::Dx), diff(S, Deriv::Dy));
  return {std::move(rhs), std::move(phi), 0.0};
}

int lattice_degree(const SpinField& s) {
  const Grid& g = s.grid();
  if (g.boundary() != Boundary::Periodic || g.is_1d())
    throw GridError("lattice_degree needs a periodic 2-D grid");
  auto omega = [](const Vec3& a, const Vec3& b, const Vec3& c) {
    return 2.0 * std::atan2(triple(a, b, c), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
  };
  double total = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const int ip = (i + 1) % g.nx(), jp = (j + 1) % g.ny();
      const Vec3 &s00 = s(i, j), &s10 = s(ip, j), &s11 = s(ip, jp), &s01 = s(i, jp);
      total += omega(s00, s10, s11) + omega(s00, s11, s01);
    }
  return static_cast<int>(std::lround(total / (4.0 * std::numbers::pi)));
}

PotentialSystem mxiiib_system(const VecField& s, const model::MXIIIB& p) {
  const VecField& S = s;
  const Grid& g = s.grid();
  require_2d(g, "mxiiib_system");
  if (g.boundary() != Boundary::Periodic) throw GridError("mxiiib_system needs a periodic grid");

  ScalarField source = (p.a1 + p.b2) * charge_density(S);
  double removed = 0.0;
  if (p.a1 + p.b2 != 0.0) {
    if (lattice_degree(project_sphere(s)) != 0) throw NonZeroMeanSource(mean(source), max_abs(source));
    removed = mean(source);
    for (auto& v : source.values()) v -= removed;
  }
  PotentialField phi = poisson_solve(source);
  VecField rhs = wedge_part(S, p.a1, p.a2, p.b1, p.b2);
  rhs += scale(diff(phi, Deriv::Dx), diff(S, Deriv::Dx));
  rhs += scale(diff(phi, Deriv::Dy), diff(S, Deriv::Dy));
  return {std::move(rhs), std::move(phi), removed};
}

ResidualReport stationary_residual(const SpinModelKind& kind, const SpinField& s,
                                   const std::optional<PotentialField>& phi) {
  const VecField& S = s.vec();
  const Grid& g = s.grid();
  require_2d(g, "stationary_residual");
  auto need_phi = [&]() -> const PotentialField& {
    if (!phi) throw MissingParameter("model " + model_name(kind) + " needs a potential phi");
    require_same_grid(phi->grid(), g, "stationary_residual phi");
    return *phi;
  };

  return std::visit(
      overloaded{
          [&](const model::HF&) {
            return ResidualReport(diff(S, Deriv::Dy) - hf_rhs(s), ScalarField(g));
          },
          [&](const model::LLE&) { return ResidualReport(lle_rhs(s), ScalarField(g)); },
          [&](const model::MXIII& m) {
            auto r = mxiii_rhs(s, m.c);
            return ResidualReport(std::move(r.rhs), std::move(r.constraint_residual));
          },
          [&](const model::MXIIIA& m) {
            const PotentialField& f = need_phi();
            VecField v = wedge_part(S, m.a1, m.a2, m.b1, m.b2);
            v += scale(diff(f, Deriv::Dy), diff(S, Deriv::Dx));
            v += scale(diff(f, Deriv::Dx), diff(S, Deriv::Dy));
            ScalarField sc = diff(f, Deriv::Dxy) - (0.5 * (m.a1 + m.b2)) * charge_density(S);
            return ResidualReport(std::move(v), std::move(sc));
          },
          [&](const model::MXIIIB& m) {
            const PotentialField& f = need_phi();
            VecField v = wedge_part(S, m.a1, m.a2, m.b1, m.b2);
            v += scale(diff(f, Deriv::Dx), diff(S, Deriv::Dx));
            v += scale(diff(f, Deriv::Dy), diff(S, Deriv::Dy));
            ScalarField sc = diff(f, Deriv::Dxx) + diff(f, Deriv::Dyy) -
                             (m.a1 + m.b2) * charge_density(S);
            return ResidualReport(std::move(v), std::move(sc));
          },
          [&](const model::IshimoriStationary& m) {
            if (!(m.alpha != 0.0) || !std::isfinite(m.alpha))
              throw InvalidCoefficients("Ishimori requires a finite alpha != 0");
            const PotentialField& f = need_phi();
            const double a2 = m.alpha * m.alpha;
            VecField v = cross(S, diff(S, Deriv::Dxx) + a2 * diff(S, Deriv::Dyy));
            v += scale(diff(f, Deriv::Dx), diff(S, Deriv::Dy));
            v += scale(diff(f, Deriv::Dy), diff(S, Deriv::Dx));
            ScalarField sc =
                a2 * diff(f, Deriv::Dyy) - diff(f, Deriv::Dxx) - a2 * charge_density(S);
            return ResidualReport(std::move(v), std::move(sc));
          },
      },
      kind);
}

} // namespace spinsurf
