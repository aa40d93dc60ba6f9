#include "spinsurf/field.hpp"

#include <algorithm>

namespace spinsurf {

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "clamped"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "clamped") return Boundary::Clamped;
  throw GridError("unknown boundary '" + s + "'");
}

Grid::Grid(int nx, int ny, double dx, double dy, Boundary boundary)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy), boundary_(boundary) {
  if (nx < 3) throw GridError("grid needs nx >= 3");
  if (ny < 1) throw GridError("grid needs ny >= 1");
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
    throw GridError("grid spacings must be positive and finite");
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) throw GridError(std::string("grid mismatch in ") + context);
}

SpinField::SpinField(VecField v) : v_(std::move(v)) {
  const Grid& g = v_.grid();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const double n = v_(i, j).norm();
      if (!(std::abs(n - 1.0) <= kNormTolerance))
        throw InvalidSpinField("spin at node (" + std::to_string(i) + "," +
                               std::to_string(j) + ") is not unit length");
    }
}

VecField cross(const VecField& a, const VecField& b) {
  require_same_grid(a.grid(), b.grid(), "cross");
  VecField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = cross(a[k], b[k]);
  return out;
}

ScalarField dot(const VecField& a, const VecField& b) {
  require_same_grid(a.grid(), b.grid(), "dot");
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = dot(a[k], b[k]);
  return out;
}

ScalarField triple(const VecField& a, const VecField& b, const VecField& c) {
  require_same_grid(a.grid(), b.grid(), "triple");
  require_same_grid(a.grid(), c.grid(), "triple");
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = triple(a[k], b[k], c[k]);
  return out;
}

VecField scale(const ScalarField& s, const VecField& v) {
  require_same_grid(s.grid(), v.grid(), "scale");
  VecField out(v.grid());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = s[k] * v[k];
  return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "multiply");
  ScalarField out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

ScalarField norm_squared(const VecField& v) { return dot(v, v); }

ScalarField component(const VecField& v, int c) {
  ScalarField out(v.grid());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k][c];
  return out;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VecField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, v.norm());
  return m;
}

namespace {
double cell_measure(const Grid& g) { return g.is_1d() ? g.dx() : g.dx() * g.dy(); }
} // namespace

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * cell_measure(f.grid()));
}

double l2_norm(const VecField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += dot(v, v);
  return std::sqrt(s * cell_measure(f.grid()));
}

double mean(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

bool all_finite(const ScalarField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](double v) { return std::isfinite(v); });
}

bool all_finite(const VecField& f) {
  return std::all_of(f.values().begin(), f.values().end(),
                     [](const Vec3& v) { return v.allFinite(); });
}

SpinField project_sphere(const VecField& v) {
  const Grid& g = v.grid();
  VecField out(g);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const Vec3& a = v(i, j);
      const double n = a.norm();
      if (!(n >= 1e-8)) throw NearZeroNorm(i, j);
      out(i, j) = a / n;
    }
  return SpinField(std::move(out));
}

} // namespace spinsurf
