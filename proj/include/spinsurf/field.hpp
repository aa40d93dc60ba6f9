#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "spinsurf/errors.hpp"

namespace spinsurf {

using Vec3 = Eigen::Vector3d;

enum class Boundary { Periodic, Clamped };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform node-centred grid. Node (i, j) sits at (i*dx, j*dy) and is stored
/// at row-major index i + nx*j. ny == 1 denotes a 1-D grid.
class Grid {
public:
  Grid(int nx, int ny, double dx, double dy, Boundary boundary);

  /// 1-D grid along x.
  static Grid line(int nx, double dx, Boundary boundary) {
    return Grid(nx, 1, dx, 1.0, boundary);
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  Boundary boundary() const { return boundary_; }
  bool is_1d() const { return ny_ == 1; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j;
  }
  double x(int i) const { return i * dx_; }
  double y(int j) const { return j * dy_; }

  Grid with_boundary(Boundary b) const { return Grid(nx_, ny_, dx_, dy_, b); }

  bool operator==(const Grid& o) const = default;

private:
  int nx_, ny_;
  double dx_, dy_;
  Boundary boundary_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* context);

/// Grid-sampled values, row-major.
template <class T>
class Field {
public:
  using value_type = T;

  explicit Field(const Grid& g, const T& fill = zero())
      : grid_(g), values_(g.size(), fill) {}
  Field(const Grid& g, std::vector<T> values) : grid_(g), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw GridError("field value count does not match grid");
  }

  /// Samples f(x, y) at every node.
  template <class F>
  static Field sample(const Grid& g, F&& f) {
    Field out(g);
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) out(i, j) = f(g.x(i), g.y(j));
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  T& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  T& operator[](std::size_t k) { return values_[k]; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  static T zero() {
    if constexpr (requires { T::Zero(); })
      return T::Zero();
    else
      return T{};
  }

  Field& operator+=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field +=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
  }
  Field& operator-=(const Field& o) {
    require_same_grid(grid_, o.grid_, "field -=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
  }
  Field& operator*=(double s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

private:
  Grid grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using VecField = Field<Vec3>;

/// A VecField whose every node has unit length (to 1e-12).
class SpinField {
public:
  static constexpr double kNormTolerance = 1e-12;

  /// Admits `v` after checking the unit-norm invariant; throws
  /// InvalidSpinField naming the first offending node.
  explicit SpinField(VecField v);

  const VecField& vec() const { return v_; }
  const Grid& grid() const { return v_.grid(); }
  const Vec3& operator()(int i, int j) const { return v_(i, j); }
  const Vec3& operator[](std::size_t k) const { return v_[k]; }
  std::size_t size() const { return v_.size(); }

  operator const VecField&() const { return v_; }

private:
  VecField v_;
};

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
              a.x() * b.y() - a.y() * b.x());
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

/// a . (b x c)
inline double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

VecField cross(const VecField& a, const VecField& b);
ScalarField dot(const VecField& a, const VecField& b);
ScalarField triple(const VecField& a, const VecField& b, const VecField& c);
/// Nodewise s(i,j) * v(i,j).
VecField scale(const ScalarField& s, const VecField& v);
ScalarField multiply(const ScalarField& a, const ScalarField& b);
ScalarField norm_squared(const VecField& v);
ScalarField component(const VecField& v, int c);

double max_abs(const ScalarField& f);
/// max over nodes of the Euclidean norm.
double max_norm(const VecField& f);
/// sqrt(sum |f|^2 * dx * dy), the grid L2 norm (dy omitted on 1-D grids).
double l2_norm(const ScalarField& f);
double l2_norm(const VecField& f);
double mean(const ScalarField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const VecField& f);

/// Divides every node by its length. Throws NearZeroNorm for |v| < 1e-8.
SpinField project_sphere(const VecField& v);

} // namespace spinsurf
