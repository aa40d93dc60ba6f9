#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "spinsurf/field.hpp"

namespace spinsurf {

using Mat3 = Eigen::Matrix3d;

/// 3x3 matrix per node of an (x, t) grid: column i is x, row j is the time
/// slice t = j*dy. The grid boundary applies to x only; t is never wrapped.
using MatrixField = Field<Mat3>;

using ComplexField = Field<std::complex<double>>;

/// Curvature, torsion and the D entries, all on the same (x, t) grid.
struct CurveData {
  ScalarField k, tau, omega1, omega2, omega3;
};

/// C = [[0, k, 0], [-k, 0, tau], [0, -tau, 0]]
MatrixField build_C(const ScalarField& k, const ScalarField& tau);

/// D = [[0, w3, -w2], [-w3, 0, w1], [w2, w1, 0]] as given, which is not
/// antisymmetric. With `antisymmetrize` the (3,2) entry becomes -w1.
MatrixField build_D(const ScalarField& w1, const ScalarField& w2, const ScalarField& w3,
                    bool antisymmetrize = false);

/// Entry (r, c) of every node as a scalar field.
ScalarField entry(const MatrixField& m, int r, int c);

/// d/dt along the slice axis: two-point difference for two slices,
/// otherwise central inside and second-order one-sided at the ends.
MatrixField time_derivative(const MatrixField& m);

struct ZcResidual {
  MatrixField field;
  double max_norm; ///< max Frobenius norm over nodes
};

/// C_t - D_x + CD - DC. Needs at least two time slices.
ZcResidual zc_residual(const MatrixField& C, const MatrixField& D);

/// Integrates D_x = C_t + [C, D] in x from the first column, slice by slice,
/// by RK4 with C and C_t linearly interpolated at half steps. `D_at_x0`
/// holds one matrix per slice.
MatrixField solve_D(const MatrixField& C, const std::vector<Mat3>& D_at_x0);

/// psi = (k/2) exp(-i int_{x0}^{x} tau) per slice, cumulative trapezoid
/// from column `base`.
ComplexField hasimoto(const ScalarField& k, const ScalarField& tau, int base = 0);

/// |i psi_t + psi_xx + 2|psi|^2 psi| per node, for slices psi(., t_n) on a
/// common 1-D grid spaced dt apart. Needs at least three slices.
std::vector<ScalarField> nlse_residual(const std::vector<ComplexField>& psi, double dt);

/// a sech(a (x - center)) exp(i a^2 t) on a 1-D grid.
ComplexField nlse_soliton(double a, const Grid& x_grid, double t, double center = 0.0);

struct VecPair {
  VecField r1, r2;
};

struct VecResidual {
  VecField field;
  double max_norm;
};

/// R1_y - R2_x + 2 R1 ^ R2 on a 2-D grid.
VecResidual vector_zc_residual(const VecPair& p);

} // namespace spinsurf
