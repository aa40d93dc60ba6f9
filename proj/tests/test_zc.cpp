#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "spinsurf/errors.hpp"
#include "spinsurf/zc.hpp"
#include "support.hpp"

using namespace spinsurf;
using spinsurf::testing::random_smooth_scalar;
using spinsurf::testing::random_smooth_vec;
using spinsurf::testing::uniform;

namespace {

/// (x, t) grid, x in [-L/2, L/2) shifted to start at 0.
Grid xt(int nx, int nt, double L, double T) {
  return Grid(nx, nt, L / (nx - 1), T / (nt - 1), Boundary::Clamped);
}

ScalarField constant(const Grid& g, double v) { return ScalarField(g, v); }

} // namespace

TEST_CASE("build_C and build_D entry placement") {
  const Grid g = xt(5, 3, 1.0, 1.0);
  const MatrixField zero = build_C(constant(g, 0), constant(g, 0));
  for (const auto& m : zero.values()) CHECK(m.isZero(0));

  const MatrixField c = build_C(constant(g, 1), constant(g, 0));
  Mat3 expect;
  expect << 0, 1, 0, -1, 0, 0, 0, 0, 0;
  CHECK(c[4] == expect);

  std::mt19937_64 rng(1);
  const MatrixField cr = build_C(random_smooth_scalar(g, rng), random_smooth_scalar(g, rng));
  for (const auto& m : cr.values()) CHECK((m - m.transpose()) == 2.0 * m);

  const MatrixField d = build_D(constant(g, 1), constant(g, 0), constant(g, 0));
  CHECK(d[0](1, 2) == 1.0);
  CHECK(d[0](2, 1) == 1.0);
  const MatrixField da = build_D(constant(g, 1), constant(g, 0), constant(g, 0), true);
  CHECK(da[0](2, 1) == -1.0);
  const MatrixField dw = build_D(constant(g, 0), constant(g, 2), constant(g, 3));
  Mat3 e2;
  e2 << 0, 3, -2, -3, 0, 0, 2, 0, 0;
  CHECK(dw[0] == e2);
  for (const auto& m : build_D(constant(g, 0), constant(g, 0), constant(g, 0)).values())
    CHECK(m.isZero(0));

  CHECK_THROWS_AS(build_C(constant(g, 0), constant(xt(6, 3, 1, 1), 0)), GridError);
}

TEST_CASE("zc_residual trivial cases") {
  const Grid g = xt(8, 2, 1.0, 0.1);
  const ScalarField z = constant(g, 0);
  CHECK(zc_residual(build_C(z, z), build_D(z, z, z)).max_norm == 0.0);

  const MatrixField C = build_C(constant(g, 0.7), constant(g, -0.3));
  MatrixField D = C;
  D *= 2.5;
  CHECK(zc_residual(C, D).max_norm <= 1e-15); // CD and DC round differently

  const Grid one(8, 1, 0.1, 1.0, Boundary::Clamped);
  CHECK_THROWS_AS(zc_residual(build_C(constant(one, 1), constant(one, 1)),
                              build_C(constant(one, 1), constant(one, 1))),
                  GridError);
}

TEST_CASE("solve_D trivial cases") {
  const Grid g = xt(10, 3, 1.0, 0.2);
  const ScalarField z = constant(g, 0);
  const std::vector<Mat3> d0(3, Mat3::Zero());
  for (const auto& m : solve_D(build_C(z, z), d0).values()) CHECK(m.isZero(0));
  const MatrixField D = solve_D(build_C(constant(g, 0.4), constant(g, 1.1)), d0);
  for (const auto& m : D.values()) CHECK(m.isZero(0));
  CHECK_THROWS_AS(solve_D(build_C(z, z), std::vector<Mat3>(2, Mat3::Zero())), GridError);
}

TEST_CASE("zc residual of solve_D output converges at second order") {
  // curve data of the moving NLSE soliton: k = 2|psi|, tau = -v
  const double a = 1.0, v = 0.5;
  auto residual = [&](int nx) {
    const double L = 12.0, T = 0.5;
    const int nt = 11;
    const Grid g = xt(nx, nt, L, T);
    const ScalarField k = ScalarField::sample(g, [&](double x, double t) {
      return 2 * a / std::cosh(a * (x - L / 2 - 2 * v * t));
    });
    const ScalarField tau = constant(g, -v);
    const MatrixField C = build_C(k, tau);
    const MatrixField D = solve_D(C, std::vector<Mat3>(nt, Mat3::Zero()));
    return zc_residual(C, D).max_norm;
  };
  const double e1 = residual(101), e2 = residual(201);
  CHECK(e1 / e2 > 3.5);
  CHECK(e1 / e2 < 4.5);
}

TEST_CASE("hasimoto map") {
  const Grid g = Grid(20, 2, 0.1, 0.1, Boundary::Clamped);
  const ComplexField one = hasimoto(constant(g, 2), constant(g, 0));
  for (const auto& p : one.values()) CHECK(p == std::complex<double>(1.0, 0.0));

  const double c = 0.8;
  const ComplexField rot = hasimoto(constant(g, 2), constant(g, c), 5);
  for (int i = 0; i < g.nx(); ++i) {
    const std::complex<double> expect = std::polar(1.0, -c * (g.x(i) - g.x(5)));
    CHECK(std::abs(rot(i, 1) - expect) < 1e-14);
  }

  const double a = 1.3;
  const Grid line = Grid::line(81, 0.1, Boundary::Clamped);
  const ScalarField k =
      ScalarField::sample(line, [&](double x, double) { return 2 * a / std::cosh(a * (x - 4)); });
  const ComplexField psi = hasimoto(k, constant(line, 0));
  const ComplexField sol = nlse_soliton(a, line, 0.0, 4.0);
  for (std::size_t n = 0; n < line.size(); ++n) {
    CHECK(std::abs(psi[n] - sol[n]) < 1e-15);
    // round trip k = 2|psi|
    CHECK(std::abs(2 * std::abs(psi[n]) - k[n]) <= 1e-13);
  }

  std::mt19937_64 rng(4);
  ScalarField kr = random_smooth_scalar(g, rng);
  for (auto& x : kr.values()) x = std::abs(x) + 0.1;
  const ComplexField pr = hasimoto(kr, random_smooth_scalar(g, rng), 3);
  for (std::size_t n = 0; n < g.size(); ++n)
    CHECK(std::abs(std::abs(pr[n]) - kr[n] / 2) <= 1e-15 * kr[n]);

  CHECK_THROWS_AS(hasimoto(kr, kr, 40), GridError);
}

TEST_CASE("NLSE soliton properties") {
  const Grid g = Grid::line(41, 0.25, Boundary::Clamped);
  const ComplexField s = nlse_soliton(1.0, g, 0.0, 5.0);
  CHECK(s(20, 0) == std::complex<double>(1.0, 0.0));
  for (int i = 0; i < 20; ++i) CHECK(std::abs(s(20 - i, 0)) == doctest::Approx(std::abs(s(20 + i, 0))).epsilon(1e-15));
  const double a = 1.7;
  const ComplexField p0 = nlse_soliton(a, g, 0.3, 5.0);
  const ComplexField p1 = nlse_soliton(a, g, 0.3 + 2 * std::numbers::pi / (a * a), 5.0);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(std::abs(p0[n] - p1[n]) < 1e-14);
  CHECK_THROWS_AS(nlse_soliton(0.0, g, 0.0), InvalidCoefficients);
}

TEST_CASE("NLSE residual") {
  SUBCASE("zero field") {
    const Grid g = Grid::line(16, 0.1, Boundary::Clamped);
    const std::vector<ComplexField> z(3, ComplexField(g));
    for (const auto& r : nlse_residual(z, 0.1)) CHECK(max_abs(r) == 0.0);
    CHECK_THROWS_AS(nlse_residual(std::vector<ComplexField>(2, ComplexField(g)), 0.1), GridError);
  }
  SUBCASE("plane wave is O(dt^2)") {
    const double a = 0.9;
    auto err = [&](double dt) {
      const Grid g = Grid::line(8, 0.1, Boundary::Periodic);
      std::vector<ComplexField> psi;
      for (int n = 0; n < 5; ++n)
        psi.push_back(ComplexField(g, std::polar(a, 2 * a * a * n * dt)));
      double m = 0;
      for (const auto& r : nlse_residual(psi, dt)) m = std::max(m, max_abs(r));
      return m;
    };
    const double ratio = err(0.02) / err(0.01);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
  }
  SUBCASE("standing soliton converges at second order") {
    const double a = 1.0;
    auto err = [&](int nx) {
      const double L = 20.0;
      const Grid g = Grid::line(nx, L / (nx - 1), Boundary::Clamped);
      const double dt = g.dx();
      std::vector<ComplexField> psi;
      for (int n = 0; n < 5; ++n) psi.push_back(nlse_soliton(a, g, n * dt, L / 2));
      double m = 0;
      for (const auto& r : nlse_residual(psi, dt)) m = std::max(m, max_abs(r));
      return m;
    };
    const double ratio = err(201) / err(401);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("vector zero-curvature residual") {
  const Grid g(6, 5, 0.2, 0.2, Boundary::Periodic);
  CHECK(vector_zc_residual({VecField(g), VecField(g)}).max_norm == 0.0);
  const Vec3 r(0.3, -1.0, 2.0);
  CHECK(vector_zc_residual({VecField(g, r), VecField(g, r)}).max_norm == 0.0);
  const Vec3 r1(1, 2, 3), r2(-0.5, 0.25, 4);
  const VecResidual res = vector_zc_residual({VecField(g, r1), VecField(g, r2)});
  for (const auto& v : res.field.values()) CHECK(v == 2.0 * cross(r1, r2));

  std::mt19937_64 rng(2);
  const VecField p = random_smooth_vec(g, rng), q = random_smooth_vec(g, rng);
  const VecResidual rr = vector_zc_residual({p, q});
  CHECK(rr.max_norm == max_norm(rr.field));
  CHECK_THROWS_AS(vector_zc_residual({VecField(Grid::line(6, 0.1, Boundary::Periodic)),
                                      VecField(Grid::line(6, 0.1, Boundary::Periodic))}),
                  GridError);
}
