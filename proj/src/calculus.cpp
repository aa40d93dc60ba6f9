#include "spinsurf/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace spinsurf {

std::vector<double> fd_weights(int order, const std::vector<int>& offsets) {
  const int n = static_cast<int>(offsets.size());
  // c[j][k]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = offsets[0];
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = offsets[i];
    for (int j = 0; j < i; ++j) {
      const double c3 = static_cast<double>(offsets[i]) - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

namespace {

struct Stencil {
  std::vector<int> offsets;
  std::vector<double> weights;
};

/// One stencil per node position along a line of n nodes.
std::vector<Stencil> line_stencils(int n, int order, Boundary b) {
  const int half = (order + 1) / 2;
  std::vector<int> central;
  for (int o = -half; o <= half; ++o) central.push_back(o);
  const Stencil interior{central, fd_weights(order, central)};

  if (b == Boundary::Periodic) {
    if (n < 2 * half + 1)
      throw GridError("too few nodes for a periodic derivative of order " +
                      std::to_string(order));
    return std::vector<Stencil>(n, interior);
  }

  if (n < order + 1)
    throw GridError("too few nodes for a derivative of order " + std::to_string(order));
  const int width = std::min(n, std::max(2 * half + 1, order + 2));
  std::vector<Stencil> out(n);
  for (int i = 0; i < n; ++i) {
    if (i - half >= 0 && i + half < n) {
      out[i] = interior;
      continue;
    }
    const int start = i - half < 0 ? 0 : n - width;
    std::vector<int> offs;
    for (int k = 0; k < width; ++k) offs.push_back(start + k - i);
    out[i] = Stencil{offs, fd_weights(order, offs)};
  }
  return out;
}

template <class T>
Field<T> derivative_impl(const Field<T>& f, Axis axis, int order) {
  const Grid& g = f.grid();
  if (axis == Axis::Y && g.is_1d()) throw GridError("y-derivative requested on a 1-D grid");
  const int n = axis == Axis::X ? g.nx() : g.ny();
  const int lines = axis == Axis::X ? g.ny() : g.nx();
  const double h = axis == Axis::X ? g.dx() : g.dy();
  const double scale = 1.0 / std::pow(h, order);
  const auto stencils = line_stencils(n, order, g.boundary());

  Field<T> out(g);
  for (int line = 0; line < lines; ++line) {
    auto at = [&](int p) -> const T& {
      return axis == Axis::X ? f(p, line) : f(line, p);
    };
    for (int p = 0; p < n; ++p) {
      const Stencil& s = stencils[p];
      const T& centre = at(p);
      T acc = Field<T>::zero();
      for (std::size_t k = 0; k < s.offsets.size(); ++k) {
        if (s.weights[k] == 0.0) continue;
        int q = p + s.offsets[k];
        if (g.boundary() == Boundary::Periodic) q = ((q % n) + n) % n;
        acc += s.weights[k] * (at(q) - centre);
      }
      T& dst = axis == Axis::X ? out(p, line) : out(line, p);
      dst = scale * acc;
    }
  }
  return out;
}

template <class T>
Field<T> diff_impl(const Field<T>& f, Deriv which) {
  switch (which) {
  case Deriv::Dx: return derivative_impl(f, Axis::X, 1);
  case Deriv::Dy: return derivative_impl(f, Axis::Y, 1);
  case Deriv::Dxx: return derivative_impl(f, Axis::X, 2);
  case Deriv::Dyy: return derivative_impl(f, Axis::Y, 2);
  case Deriv::Dxy:
    if (f.grid().is_1d()) throw GridError("y-derivative requested on a 1-D grid");
    return derivative_impl(derivative_impl(f, Axis::X, 1), Axis::Y, 1);
  }
  throw GridError("unknown derivative");
}

} // namespace

ScalarField derivative(const ScalarField& f, Axis axis, int order) {
  return derivative_impl(f, axis, order);
}
VecField derivative(const VecField& f, Axis axis, int order) {
  return derivative_impl(f, axis, order);
}

ScalarField diff(const ScalarField& f, Deriv which) { return diff_impl(f, which); }
VecField diff(const VecField& f, Deriv which) { return diff_impl(f, which); }
VecField diff(const SpinField& f, Deriv which) { return diff_impl(f.vec(), which); }

ScalarField diff4x(const ScalarField& f) {
  if (f.grid().nx() < 5) throw GridError("fourth derivative needs nx >= 5");
  return derivative_impl(f, Axis::X, 4);
}
VecField diff4x(const VecField& f) {
  if (f.grid().nx() < 5) throw GridError("fourth derivative needs nx >= 5");
  return derivative_impl(f, Axis::X, 4);
}
VecField diff4x(const SpinField& f) { return diff4x(f.vec()); }

} // namespace spinsurf
