#include "spinsurf/solvers.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "spinsurf/calculus.hpp"

namespace spinsurf {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftwBuffer {
public:
  explicit FftwBuffer(std::size_t bytes) : p_(fftw_malloc(bytes)) {
    if (!p_) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p_); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  template <class T>
  T* as() {
    return static_cast<T*>(p_);
  }

private:
  void* p_;
};

class FftwPlan {
public:
  explicit FftwPlan(fftw_plan p) : p_(p) {}
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p_);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  void execute() const { fftw_execute(p_); }

private:
  fftw_plan p_;
};

ScalarField laplacian(const ScalarField& f) {
  return diff(f, Deriv::Dxx) + diff(f, Deriv::Dyy);
}

} // namespace

ScalarField poisson_solve(const ScalarField& rhs) {
  const Grid& g = rhs.grid();
  if (g.boundary() != Boundary::Periodic || g.is_1d())
    throw GridError("poisson_solve needs a periodic 2-D grid");
  if (g.ny() < 3) throw GridError("poisson_solve needs ny >= 3");
  if (!all_finite(rhs)) throw NonFiniteValue("non-finite Poisson source");

  const double peak = max_abs(rhs);
  if (peak == 0.0) return ScalarField(g);
  const double m = mean(rhs);
  if (std::abs(m) > kSolvabilityTolerance * peak) throw NonZeroMeanSource(m, peak);

  ScalarField source = rhs;
  for (auto& v : source.values()) v -= m;

  const int nx = g.nx(), ny = g.ny();
  const int nxc = nx / 2 + 1;
  FftwBuffer real_buf(sizeof(double) * g.size());
  FftwBuffer spec_buf(sizeof(fftw_complex) * static_cast<std::size_t>(nxc) * ny);
  double* real = real_buf.as<double>();
  auto* spec = spec_buf.as<fftw_complex>();

  std::unique_ptr<FftwPlan> forward, backward;
  {
    std::lock_guard lock(planner_mutex());
    forward = std::make_unique<FftwPlan>(fftw_plan_dft_r2c_2d(ny, nx, real, spec, FFTW_ESTIMATE));
    backward = std::make_unique<FftwPlan>(fftw_plan_dft_c2r_2d(ny, nx, spec, real, FFTW_ESTIMATE));
  }

  for (std::size_t k = 0; k < g.size(); ++k) real[k] = source[k];
  forward->execute();

  const double two_pi = 2.0 * std::numbers::pi;
  const double idx2 = 1.0 / (g.dx() * g.dx()), idy2 = 1.0 / (g.dy() * g.dy());
  for (int ky = 0; ky < ny; ++ky) {
    const double ly = (2.0 * std::cos(two_pi * ky / ny) - 2.0) * idy2;
    for (int kx = 0; kx < nxc; ++kx) {
      const double lx = (2.0 * std::cos(two_pi * kx / nx) - 2.0) * idx2;
      fftw_complex& c = spec[static_cast<std::size_t>(ky) * nxc + kx];
      const double eig = lx + ly;
      if (kx == 0 && ky == 0) {
        c[0] = c[1] = 0.0;
      } else {
        c[0] /= eig;
        c[1] /= eig;
      }
    }
  }
  backward->execute();

  ScalarField phi(g);
  const double norm = 1.0 / static_cast<double>(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) phi[k] = real[k] * norm;
  const double phi_mean = mean(phi);
  for (auto& v : phi.values()) v -= phi_mean;

  const double residual = max_abs(laplacian(phi) - source);
  if (!(residual <= kPoissonTolerance * peak)) throw NonConvergence(1, residual / peak);
  return phi;
}

ScalarField mixed_integrate(const ScalarField& f, const std::vector<double>& row0,
                            const std::vector<double>& col0) {
  const Grid& g = f.grid();
  if (g.boundary() != Boundary::Clamped || g.is_1d())
    throw GridError("mixed_integrate needs a clamped 2-D grid");
  const int nx = g.nx(), ny = g.ny();
  if (!row0.empty() && static_cast<int>(row0.size()) != nx)
    throw GridError("mixed_integrate: row data length differs from nx");
  if (!col0.empty() && static_cast<int>(col0.size()) != ny)
    throw GridError("mixed_integrate: column data length differs from ny");
  const double corner = !row0.empty() ? row0[0] : (!col0.empty() ? col0[0] : 0.0);
  if (!row0.empty() && !col0.empty() && row0[0] != col0[0])
    throw GridError("mixed_integrate: axis data disagree at the corner node");

  const double w = 0.25 * g.dx() * g.dy();
  ScalarField acc(g);
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i)
      acc(i, j) = acc(i - 1, j) + acc(i, j - 1) - acc(i - 1, j - 1) +
                  w * (f(i - 1, j - 1) + f(i, j - 1) + f(i - 1, j) + f(i, j));

  ScalarField phi(g);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double r = row0.empty() ? 0.0 : row0[i];
      const double c = col0.empty() ? 0.0 : col0[j];
      phi(i, j) = r + c - corner + acc(i, j);
    }
  return phi;
}

} // namespace spinsurf
