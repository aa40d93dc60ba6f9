#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "spinsurf/field.hpp"

namespace spinsurf::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Smooth field of a few low Fourier modes, periodic on the grid's extent.
inline VecField random_smooth_vec(const Grid& g, std::mt19937_64& rng, int modes = 2,
                                  double offset = 0.0) {
  const double lx = g.nx() * g.dx();
  const double ly = g.ny() * g.dy();
  const double two_pi = 2.0 * std::numbers::pi;
  VecField out(g);
  for (int c = 0; c < 3; ++c) {
    const double base = uniform(rng, -1.0, 1.0) + (c == 2 ? offset : 0.0);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out(i, j)[c] = base;
    for (int kx = 0; kx <= modes; ++kx)
      for (int ky = 0; ky <= (g.is_1d() ? 0 : modes); ++ky) {
        if (kx == 0 && ky == 0) continue;
        const double amp = uniform(rng, -0.6, 0.6) / (kx + ky);
        const double phase = uniform(rng, 0.0, two_pi);
        for (int j = 0; j < g.ny(); ++j)
          for (int i = 0; i < g.nx(); ++i)
            out(i, j)[c] += amp * std::cos(two_pi * (kx * g.x(i) / lx + ky * g.y(j) / ly) + phase);
      }
  }
  return out;
}

/// Random smooth unit field; the +2 bias on the third component keeps
/// the pre-projection vectors away from the origin.
inline SpinField random_smooth_spin(const Grid& g, std::mt19937_64& rng, int modes = 2) {
  return project_sphere(random_smooth_vec(g, rng, modes, 2.0));
}

inline ScalarField random_smooth_scalar(const Grid& g, std::mt19937_64& rng, int modes = 2) {
  return component(random_smooth_vec(g, rng, modes), 0);
}

/// (cos(a x + b y), sin(a x + b y), 0)
inline SpinField equator_map(const Grid& g, double a, double b) {
  return SpinField(VecField::sample(g, [&](double x, double y) {
    return Vec3(std::cos(a * x + b * y), std::sin(a * x + b * y), 0.0);
  }));
}

inline SpinField constant_spin(const Grid& g, const Vec3& s) {
  return SpinField(VecField(g, s.normalized()));
}

} // namespace spinsurf::testing
