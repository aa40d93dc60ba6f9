#include "doctest.h"

#include <cmath>
#include <numbers>

#include "spinsurf/calculus.hpp"
#include "spinsurf/solvers.hpp"
#include "support.hpp"

using namespace spinsurf;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField laplacian(const ScalarField& f) { return diff(f, Deriv::Dxx) + diff(f, Deriv::Dyy); }
} // namespace

TEST_CASE("poisson_solve: zero source gives zero") {
  Grid g(16, 12, 0.1, 0.2, Boundary::Periodic);
  auto phi = poisson_solve(ScalarField(g));
  CHECK(max_abs(phi) == 0.0);
}

TEST_CASE("poisson_solve: Laplacian eigenfunction back-substitution") {
  const int nx = 48, ny = 32;
  const double Lx = 3.0, Ly = 2.0;
  Grid g(nx, ny, Lx / nx, Ly / ny, Boundary::Periodic);
  const double k = 2 * kPi / Lx, l = 2 * kPi / Ly;
  auto rhs = ScalarField::sample(
      g, [&](double x, double y) { return -(k * k + l * l) * std::sin(k * x) * std::sin(l * y); });
  auto phi = poisson_solve(rhs);
  CHECK(max_abs(laplacian(phi) - rhs) <= 1e-10 * max_abs(rhs));
  CHECK(std::abs(mean(phi)) <= 1e-12);
  // Up to the discrete-eigenvalue correction phi is sin(kx) sin(ly).
  auto exact = ScalarField::sample(g, [&](double x, double y) { return std::sin(k * x) * std::sin(l * y); });
  CHECK(max_abs(phi - exact) < 0.02);
}

TEST_CASE("poisson_solve: random zero-mean source") {
  std::mt19937_64 rng(12);
  Grid g(40, 40, 0.05, 0.05, Boundary::Periodic);
  auto rhs = spinsurf::testing::random_smooth_scalar(g, rng, 3);
  const double m = mean(rhs);
  for (auto& v : rhs.values()) v -= m;
  auto phi = poisson_solve(rhs);
  CHECK(max_abs(laplacian(phi) - rhs) <= 1e-10 * max_abs(rhs));
}

TEST_CASE("poisson_solve: solvability and grid checks") {
  Grid g(16, 16, 0.1, 0.1, Boundary::Periodic);
  auto rhs = ScalarField::sample(g, [](double x, double) { return 1.0 + std::sin(x); });
  CHECK_THROWS_AS(poisson_solve(rhs), NonZeroMeanSource);
  CHECK_THROWS_AS(poisson_solve(ScalarField(g.with_boundary(Boundary::Clamped))), GridError);
  CHECK_THROWS_AS(poisson_solve(ScalarField(Grid::line(16, 0.1, Boundary::Periodic))), GridError);
}

TEST_CASE("mixed_integrate: exact cases") {
  Grid g(9, 7, 0.25, 0.5, Boundary::Clamped);
  CHECK(max_abs(mixed_integrate(ScalarField(g))) == 0.0);

  auto phi = mixed_integrate(ScalarField(g, 1.0));
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) CHECK(phi(i, j) == doctest::Approx(g.x(i) * g.y(j)).epsilon(1e-14));

  // Axis data enter additively.
  std::vector<double> row(g.nx()), col(g.ny());
  for (int i = 0; i < g.nx(); ++i) row[i] = 2.0 + g.x(i);
  for (int j = 0; j < g.ny(); ++j) col[j] = 2.0 - g.y(j);
  auto with_axes = mixed_integrate(ScalarField(g, 1.0), row, col);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      CHECK(with_axes(i, j) ==
            doctest::Approx(2.0 + g.x(i) - g.y(j) + g.x(i) * g.y(j)).epsilon(1e-14));

  col[0] = 5.0;
  CHECK_THROWS_AS(mixed_integrate(ScalarField(g, 1.0), row, col), GridError);
  CHECK_THROWS_AS(mixed_integrate(ScalarField(g.with_boundary(Boundary::Periodic))), GridError);
}

TEST_CASE("mixed_integrate: separable polynomial source") {
  // f = g'(x) h'(y) with g = x^3 - x, h = y^2 + 2y: phi = (g(x)-g(0))(h(y)-h(0)).
  auto err = [](int n) {
    Grid g(n, n, 1.0 / (n - 1), 1.0 / (n - 1), Boundary::Clamped);
    auto f = ScalarField::sample(g, [](double x, double y) { return (3 * x * x - 1) * (2 * y + 2); });
    auto phi = mixed_integrate(f);
    double e = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double x = g.x(i), y = g.y(j);
        e = std::max(e, std::abs(phi(i, j) - (x * x * x - x) * (y * y + 2 * y)));
      }
    return e;
  };
  const double ratio = err(17) / err(33);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("mixed_integrate then Dxy recovers f at second order") {
  auto err = [](int n) {
    Grid g(n, n, 1.0 / (n - 1), 1.0 / (n - 1), Boundary::Clamped);
    auto f = ScalarField::sample(g, [](double x, double y) { return std::cos(3 * x + y) * std::exp(y); });
    auto back = diff(mixed_integrate(f), Deriv::Dxy);
    double e = 0;
    for (int j = 1; j < n - 1; ++j)
      for (int i = 1; i < n - 1; ++i) e = std::max(e, std::abs(back(i, j) - f(i, j)));
    return e;
  };
  const double ratio = err(33) / err(65);
  CHECK(ratio > 3.3);
  CHECK(ratio < 4.7);
}
