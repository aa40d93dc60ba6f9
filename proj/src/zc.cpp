#include "spinsurf/zc.hpp"

#include <array>
#include <cmath>

#include "spinsurf/calculus.hpp"
#include "spinsurf/errors.hpp"

namespace spinsurf {

namespace {

MatrixField from_entries(const Grid& g, const std::array<std::array<const ScalarField*, 3>, 3>& e,
                         const std::array<std::array<double, 3>, 3>& sign) {
  MatrixField out(g);
  for (std::size_t n = 0; n < g.size(); ++n)
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (e[r][c]) out[n](r, c) = sign[r][c] * (*e[r][c])[n];
  return out;
}

double frobenius_max(const MatrixField& m) {
  double out = 0.0;
  for (const auto& v : m.values()) out = std::max(out, v.norm());
  return out;
}

ScalarField real_part(const ComplexField& f) {
  ScalarField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

ScalarField imag_part(const ComplexField& f) {
  ScalarField out(f.grid());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].imag();
  return out;
}

} // namespace

MatrixField build_C(const ScalarField& k, const ScalarField& tau) {
  require_same_grid(k.grid(), tau.grid(), "build_C");
  return from_entries(k.grid(), {{{nullptr, &k, nullptr}, {&k, nullptr, &tau}, {nullptr, &tau, nullptr}}},
                      {{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}});
}

MatrixField build_D(const ScalarField& w1, const ScalarField& w2, const ScalarField& w3,
                    bool antisymmetrize) {
  require_same_grid(w1.grid(), w2.grid(), "build_D");
  require_same_grid(w1.grid(), w3.grid(), "build_D");
  return from_entries(w1.grid(), {{{nullptr, &w3, &w2}, {&w3, nullptr, &w1}, {&w2, &w1, nullptr}}},
                      {{{0, 1, -1}, {-1, 0, 1}, {1, antisymmetrize ? -1.0 : 1.0, 0}}});
}

ScalarField entry(const MatrixField& m, int r, int c) {
  ScalarField out(m.grid());
  for (std::size_t k = 0; k < m.size(); ++k) out[k] = m[k](r, c);
  return out;
}

MatrixField time_derivative(const MatrixField& m) {
  const Grid& g = m.grid();
  const int nt = g.ny();
  if (nt < 2) throw GridError("a time derivative needs at least two slices");
  const double dt = g.dy();
  MatrixField out(g);
  for (int i = 0; i < g.nx(); ++i) {
    if (nt == 2) {
      const Mat3 d = (m(i, 1) - m(i, 0)) / dt;
      out(i, 0) = d;
      out(i, 1) = d;
      continue;
    }
    out(i, 0) = (4.0 * (m(i, 1) - m(i, 0)) - (m(i, 2) - m(i, 0))) / (2 * dt);
    for (int j = 1; j + 1 < nt; ++j) out(i, j) = (m(i, j + 1) - m(i, j - 1)) / (2 * dt);
    out(i, nt - 1) =
        (4.0 * (m(i, nt - 1) - m(i, nt - 2)) - (m(i, nt - 1) - m(i, nt - 3))) / (2 * dt);
  }
  return out;
}

namespace {

MatrixField x_derivative(const MatrixField& m) {
  MatrixField out(m.grid());
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const ScalarField d = derivative(entry(m, r, c), Axis::X, 1);
      for (std::size_t k = 0; k < m.size(); ++k) out[k](r, c) = d[k];
    }
  return out;
}

} // namespace

ZcResidual zc_residual(const MatrixField& C, const MatrixField& D) {
  require_same_grid(C.grid(), D.grid(), "zc_residual");
  MatrixField r = time_derivative(C);
  r -= x_derivative(D);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += C[k] * D[k] - D[k] * C[k];
  const double mx = frobenius_max(r);
  return {std::move(r), mx};
}

MatrixField solve_D(const MatrixField& C, const std::vector<Mat3>& D_at_x0) {
  const Grid& g = C.grid();
  if (D_at_x0.size() != static_cast<std::size_t>(g.ny()))
    throw GridError("solve_D needs one initial matrix per time slice");
  const MatrixField Ct = time_derivative(C);
  const double h = g.dx();
  MatrixField D(g);
  for (int j = 0; j < g.ny(); ++j) {
    D(0, j) = D_at_x0[j];
    for (int i = 0; i + 1 < g.nx(); ++i) {
      const Mat3 c0 = C(i, j), c1 = C(i + 1, j), cm = 0.5 * (c0 + c1);
      const Mat3 t0 = Ct(i, j), t1 = Ct(i + 1, j), tm = 0.5 * (t0 + t1);
      auto f = [](const Mat3& c, const Mat3& ct, const Mat3& d) -> Mat3 {
        return ct + c * d - d * c;
      };
      const Mat3& y = D(i, j);
      const Mat3 k1 = f(c0, t0, y);
      const Mat3 k2 = f(cm, tm, y + 0.5 * h * k1);
      const Mat3 k3 = f(cm, tm, y + 0.5 * h * k2);
      const Mat3 k4 = f(c1, t1, y + h * k3);
      D(i + 1, j) = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!D(i + 1, j).allFinite()) throw Blowup(static_cast<std::size_t>(i + 1));
    }
  }
  return D;
}

ComplexField hasimoto(const ScalarField& k, const ScalarField& tau, int base) {
  require_same_grid(k.grid(), tau.grid(), "hasimoto");
  const Grid& g = k.grid();
  if (base < 0 || base >= g.nx()) throw GridError("hasimoto base point outside the grid");
  const double h = g.dx();
  ComplexField out(g);
  std::vector<double> theta(g.nx());
  for (int j = 0; j < g.ny(); ++j) {
    theta[base] = 0.0;
    for (int i = base + 1; i < g.nx(); ++i)
      theta[i] = theta[i - 1] + 0.5 * h * (tau(i - 1, j) + tau(i, j));
    for (int i = base - 1; i >= 0; --i)
      theta[i] = theta[i + 1] - 0.5 * h * (tau(i, j) + tau(i + 1, j));
    for (int i = 0; i < g.nx(); ++i)
      out(i, j) = std::polar(0.5 * k(i, j), -theta[i]);
  }
  return out;
}

std::vector<ScalarField> nlse_residual(const std::vector<ComplexField>& psi, double dt) {
  if (psi.size() < 3) throw GridError("nlse_residual needs at least three time slices");
  if (!(dt > 0)) throw GridError("nlse_residual needs dt > 0");
  const Grid& g = psi.front().grid();
  for (const auto& p : psi) require_same_grid(g, p.grid(), "nlse_residual");
  const std::size_t nt = psi.size();
  std::vector<ScalarField> out;
  out.reserve(nt);
  using cd = std::complex<double>;
  for (std::size_t n = 0; n < nt; ++n) {
    const ScalarField re = derivative(real_part(psi[n]), Axis::X, 2);
    const ScalarField im = derivative(imag_part(psi[n]), Axis::X, 2);
    ScalarField r(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      cd pt;
      if (n == 0)
        pt = (4.0 * (psi[1][k] - psi[0][k]) - (psi[2][k] - psi[0][k])) / (2 * dt);
      else if (n == nt - 1)
        pt = (4.0 * (psi[n][k] - psi[n - 1][k]) - (psi[n][k] - psi[n - 2][k])) / (2 * dt);
      else
        pt = (psi[n + 1][k] - psi[n - 1][k]) / (2 * dt);
      const cd p = psi[n][k];
      r[k] = std::abs(cd(0, 1) * pt + cd(re[k], im[k]) + 2.0 * std::norm(p) * p);
    }
    out.push_back(std::move(r));
  }
  return out;
}

ComplexField nlse_soliton(double a, const Grid& x_grid, double t, double center) {
  if (!(a > 0)) throw InvalidCoefficients("soliton amplitude must be positive");
  return ComplexField::sample(x_grid, [&](double x, double) {
    return std::polar(a / std::cosh(a * (x - center)), a * a * t);
  });
}

VecResidual vector_zc_residual(const VecPair& p) {
  require_same_grid(p.r1.grid(), p.r2.grid(), "vector_zc_residual");
  if (p.r1.grid().is_1d()) throw GridError("vector_zc_residual needs a 2-D grid");
  VecField r = diff(p.r1, Deriv::Dy) - diff(p.r2, Deriv::Dx) + 2.0 * cross(p.r1, p.r2);
  const double mx = max_norm(r);
  return {std::move(r), mx};
}

} // namespace spinsurf
