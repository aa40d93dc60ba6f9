#include "spinsurf/magnetoelastic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <complex>

#include <Eigen/Dense>

#include "spinsurf/calculus.hpp"
#include "spinsurf/errors.hpp"

namespace spinsurf {

std::string to_string(SpinFamily f) {
  switch (f) {
  case SpinFamily::A: return "A";
  case SpinFamily::B: return "B";
  case SpinFamily::C: return "C";
  case SpinFamily::D: return "D";
  case SpinFamily::E: return "E";
  }
  return "?";
}

std::string to_string(PhononFamily f) {
  switch (f) {
  case PhononFamily::None: return "None";
  case PhononFamily::Wave: return "Wave";
  case PhononFamily::Boussinesq: return "Boussinesq";
  case PhononFamily::Advection: return "Advection";
  case PhononFamily::KdV: return "KdV";
  }
  return "?";
}

std::string to_string(CouplingSource s) {
  switch (s) {
  case CouplingSource::S3: return "S3";
  case CouplingSource::S3sq: return "S3sq";
  case CouplingSource::SxSq: return "SxSq";
  case CouplingSource::TrForm: return "TrForm";
  }
  return "?";
}

int ModelSpec::max_derivative_order() const {
  if (spin == SpinFamily::D || phonon == PhononFamily::Boussinesq) return 4;
  if (phonon == PhononFamily::KdV) return 3;
  return 2;
}

namespace {

std::vector<ModelSpec> build_catalog() {
  std::vector<ModelSpec> out;
  auto add = [&](const char* name, SpinFamily s, PhononFamily p, CouplingSource q, int type) {
    ModelSpec m;
    m.name = name;
    m.spin = s;
    m.phonon = p;
    m.source = q;
    m.system_type = type;
    out.push_back(m);
  };
  using S = SpinFamily;
  using P = PhononFamily;
  using Q = CouplingSource;

  // 0-type: u is external, no lattice equation.
  add("M-LVII", S::A, P::None, Q::S3, 0);
  add("M-LVI", S::B, P::None, Q::S3sq, 0);
  add("M-LV", S::C, P::None, Q::SxSq, 0);
  add("M-LIV", S::D, P::None, Q::SxSq, 0);
  add("M-LIII", S::E, P::None, Q::TrForm, 0);

  struct Row {
    S spin;
    Q source;
    std::array<const char*, 4> names; // Wave, Boussinesq, Advection, KdV
  };
  const Row rows[] = {
      {S::A, Q::S3, {"M-LII", "M-LI", "M-L", "M-XLIX"}},
      {S::B, Q::S3sq, {"M-XLVIII", "M-XLVII", "M-XLVI", "M-XLV"}},
      {S::C, Q::SxSq, {"M-XLIV", "M-XLIII", "M-XLII", "M-XLI"}},
      {S::D, Q::SxSq, {"M-XL", "M-XXXIX", "M-XXXVIII", "M-XXXVII"}},
      {S::E, Q::TrForm, {"M-XXXVI", "M-XXXV", "M-XXXIV", "M-XXXIII"}},
  };
  const P phonons[] = {P::Wave, P::Boussinesq, P::Advection, P::KdV};
  int type = 1;
  for (const Row& r : rows) {
    for (int k = 0; k < 4; ++k) add(r.names[k], r.spin, phonons[k], r.source, type);
    ++type;
  }

  ModelSpec lxix;
  lxix.name = "M-LXIX";
  lxix.system_type = 6;
  lxix.implemented = false;
  lxix.reason =
      "implicit in S_t through sqrt(S_t^2 - u^2); the stated system has sqrt(S_x^2 - u^2) in the "
      "first equation and sqrt(S_t^2 - u^2) in the second, which looks like a typo";
  out.push_back(lxix);

  ModelSpec v;
  v.name = "M-V";
  v.system_type = 7;
  v.implemented = false;
  v.reason = "S lives in the osp(2|1) superalgebra (S^3 = S), which has no 2x2 spin-vector form";
  out.push_back(v);
  return out;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

void require_line(const Grid& g) {
  if (!g.is_1d()) throw GridError("magnetoelastic models need a 1-D grid");
}

void check_state(const ModelSpec& spec, const VecField& s, const ScalarField& u,
                 const std::optional<ScalarField>& w) {
  require_implemented(spec);
  require_line(s.grid());
  require_same_grid(s.grid(), u.grid(), "magnetoelastic state");
  if (w) require_same_grid(s.grid(), w->grid(), "magnetoelastic state");
}

} // namespace

const std::vector<ModelSpec>& catalog() {
  static const std::vector<ModelSpec> reg = build_catalog();
  return reg;
}

ModelSpec catalog_lookup(const std::string& name) {
  const std::string key = upper(name);
  for (const auto& m : catalog())
    if (m.name == key) return m;
  throw UnknownModel(name);
}

void require_implemented(const ModelSpec& spec) {
  if (!spec.implemented) throw UnimplementedModel(spec.name, spec.reason);
}

ScalarField coupling_source(CouplingSource source, const VecField& s) {
  switch (source) {
  case CouplingSource::S3: return component(s, 2);
  case CouplingSource::S3sq: {
    ScalarField s3 = component(s, 2);
    return multiply(s3, s3);
  }
  case CouplingSource::SxSq: return norm_squared(diff(s, Deriv::Dx));
  case CouplingSource::TrForm: return 0.5 * norm_squared(diff(s, Deriv::Dx));
  }
  throw Error("bad coupling source");
}

VecField me_spin_rhs(const ModelSpec& spec, const MEState& st) {
  return me_spin_rhs(spec, st.s.vec(), st.u);
}

VecField me_spin_rhs(const ModelSpec& spec, const VecField& s, const ScalarField& u) {
  check_state(spec, s, u, std::nullopt);
  const Grid& g = s.grid();
  const MEParams& p = spec.params;
  const VecField sxx = diff(s, Deriv::Dxx);
  const Vec3 e3(0, 0, 1);

  // d/dx[g (S^S_x)] = g_x (S^S_x) + g (S^S_xx)
  auto flux_term = [&]() {
    const VecField sx = diff(s, Deriv::Dx);
    ScalarField gf = p.mu * norm_squared(sx) - u;
    for (auto& v : gf.values()) v += p.m;
    const ScalarField gx = diff(gf, Deriv::Dx);
    return scale(gx, cross(s, sx)) + scale(gf, cross(s, sxx));
  };

  switch (spec.spin) {
  case SpinFamily::A: {
    VecField out = cross(s, sxx);
    for (std::size_t k = 0; k < g.size(); ++k) out[k] += u[k] * cross(s[k], e3);
    return out;
  }
  case SpinFamily::B: {
    VecField out = cross(s, sxx);
    for (std::size_t k = 0; k < g.size(); ++k) out[k] += u[k] * s[k].z() * cross(s[k], e3);
    return out;
  }
  case SpinFamily::C: return flux_term();
  case SpinFamily::D: return p.n * cross(s, diff4x(s)) + 2.0 * flux_term();
  case SpinFamily::E: return cross(s, sxx) + scale(u, diff(s, Deriv::Dx));
  }
  throw Error("bad spin family");
}

PhononRhs me_phonon_rhs(const ModelSpec& spec, const MEState& st) {
  return me_phonon_rhs(spec, st.s.vec(), st.u, st.w);
}

PhononRhs me_phonon_rhs(const ModelSpec& spec, const VecField& s, const ScalarField& u,
                        const std::optional<ScalarField>& w) {
  check_state(spec, s, u, w);
  const MEParams& p = spec.params;
  if (spec.phonon == PhononFamily::None) throw PhononAbsent(spec.name);
  const ScalarField q = coupling_source(spec.source, s);

  switch (spec.phonon) {
  case PhononFamily::Wave:
  case PhononFamily::Boussinesq: {
    if (!w) throw MissingParameter("w (u_t) is required for " + spec.name);
    if (!(p.rho > 0)) throw InvalidCoefficients("rho must be positive");
    ScalarField acc = p.nu0 * p.nu0 * diff(u, Deriv::Dxx) + p.lambda * diff(q, Deriv::Dxx);
    if (spec.phonon == PhononFamily::Boussinesq)
      acc += p.alpha * diff(multiply(u, u), Deriv::Dxx) + p.beta * diff4x(u);
    acc *= 1.0 / p.rho;
    return {*w, std::move(acc)};
  }
  case PhononFamily::Advection:
    return {-(diff(u, Deriv::Dx) + p.lambda * diff(q, Deriv::Dx)), std::nullopt};
  case PhononFamily::KdV: {
    ScalarField r = diff(u, Deriv::Dx) + p.alpha * diff(multiply(u, u), Deriv::Dx) +
                    p.beta * derivative(u, Axis::X, 3) + p.lambda * diff(q, Deriv::Dx);
    return {-r, std::nullopt};
  }
  case PhononFamily::None: break;
  }
  throw PhononAbsent(spec.name);
}

// ---- matrix representation oracle ----

namespace {

using Mat = Eigen::Matrix2cd;
using cd = std::complex<double>;

const std::array<Mat, 3>& pauli() {
  static const std::array<Mat, 3> s = [] {
    std::array<Mat, 3> m;
    m[0] << 0, 1, 1, 0;
    m[1] << 0, cd(0, -1), cd(0, 1), 0;
    m[2] << 1, 0, 0, -1;
    return m;
  }();
  return s;
}

Mat to_matrix(const Vec3& v) {
  const auto& s = pauli();
  return v.x() * s[0] + v.y() * s[1] + v.z() * s[2];
}

Vec3 to_vector(const Mat& m) {
  const auto& s = pauli();
  Vec3 v;
  for (int k = 0; k < 3; ++k) v[k] = 0.5 * (m * s[k]).trace().real();
  return v;
}

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Matrix-valued field with entrywise differentiation through the real
/// and imaginary parts of each entry.
struct MatField {
  Grid grid;
  std::vector<Mat> m;

  MatField derivative_x(int order) const {
    MatField out{grid, std::vector<Mat>(m.size(), Mat::Zero())};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        ScalarField re(grid), im(grid);
        for (std::size_t k = 0; k < m.size(); ++k) {
          re[k] = m[k](r, c).real();
          im[k] = m[k](r, c).imag();
        }
        const ScalarField dre = order == 4 ? diff4x(re) : derivative(re, Axis::X, order);
        const ScalarField dim = order == 4 ? diff4x(im) : derivative(im, Axis::X, order);
        for (std::size_t k = 0; k < m.size(); ++k) out.m[k](r, c) = cd(dre[k], dim[k]);
      }
    return out;
  }
};

} // namespace

VecField pauli_oracle_rhs(const ModelSpec& spec, const MEState& st) {
  check_state(spec, st.s.vec(), st.u, st.w);
  const Grid& g = st.s.grid();
  const MEParams& p = spec.params;
  const std::size_t n = g.size();
  const Mat& s3 = pauli()[2];

  MatField S{g, std::vector<Mat>(n)};
  for (std::size_t k = 0; k < n; ++k) S.m[k] = to_matrix(st.s[k]);
  const MatField Sx = S.derivative_x(1);
  const MatField Sxx = S.derivative_x(2);

  // {G [S, S_x]}_x by the Leibniz rule, G = mu tr(S_x^2)/2 - u + m
  auto flux = [&]() {
    ScalarField G(g);
    for (std::size_t k = 0; k < n; ++k)
      G[k] = p.mu * 0.5 * (Sx.m[k] * Sx.m[k]).trace().real() - st.u[k] + p.m;
    const ScalarField Gx = derivative(G, Axis::X, 1);
    std::vector<Mat> out(n);
    for (std::size_t k = 0; k < n; ++k)
      out[k] = Gx[k] * comm(S.m[k], Sx.m[k]) +
               G[k] * (comm(Sx.m[k], Sx.m[k]) + comm(S.m[k], Sxx.m[k]));
    return out;
  };

  std::vector<Mat> lhs(n); // 2i S_t
  switch (spec.spin) {
  case SpinFamily::A:
    for (std::size_t k = 0; k < n; ++k)
      lhs[k] = comm(S.m[k], Sxx.m[k]) + st.u[k] * comm(S.m[k], s3);
    break;
  case SpinFamily::B:
    for (std::size_t k = 0; k < n; ++k) {
      const double S3 = 0.5 * (S.m[k] * s3).trace().real();
      lhs[k] = comm(S.m[k], Sxx.m[k]) + st.u[k] * S3 * comm(S.m[k], s3);
    }
    break;
  case SpinFamily::C: lhs = flux(); break;
  case SpinFamily::D: {
    const MatField Sxxxx = S.derivative_x(4);
    const auto f = flux();
    for (std::size_t k = 0; k < n; ++k) lhs[k] = p.n * comm(S.m[k], Sxxxx.m[k]) + 2.0 * f[k];
    break;
  }
  case SpinFamily::E:
    for (std::size_t k = 0; k < n; ++k)
      lhs[k] = comm(S.m[k], Sxx.m[k]) + cd(0, 2) * st.u[k] * Sx.m[k];
    break;
  }

  VecField out(g);
  const cd two_i(0, 2);
  for (std::size_t k = 0; k < n; ++k) out[k] = to_vector(lhs[k] / two_i);
  return out;
}

} // namespace spinsurf
