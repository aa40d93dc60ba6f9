#pragma once

#include <vector>

#include "spinsurf/field.hpp"

namespace spinsurf {

/// Relative back-substitution tolerance every successful Poisson solve meets.
inline constexpr double kPoissonTolerance = 1e-10;
/// Solvability threshold: |mean(rhs)| must not exceed this times max|rhs|.
inline constexpr double kSolvabilityTolerance = 1e-8;

/// Solves phi_xx + phi_yy = rhs for the discrete 5-point Laplacian on a
/// periodic 2-D grid, in the zero-mean gauge.
///
/// The source is projected onto zero mean before solving (it may carry up
/// to kSolvabilityTolerance * max|rhs| of mean). Diagonalised by a real
/// 2-D FFT; the result is verified by back-substitution against the
/// projected source.
///
/// Throws NonZeroMeanSource when the solvability condition fails and
/// NonConvergence if back-substitution misses kPoissonTolerance.
ScalarField poisson_solve(const ScalarField& rhs);

/// phi(x,y) = phi(x,y0) + phi(x0,y) - phi(x0,y0) + int int f, with the double
/// integral taken by cumulative 2-D trapezoid from node (0,0). Axis data
/// default to zero; when both are given their corner values must agree.
/// Requires a clamped 2-D grid.
ScalarField mixed_integrate(const ScalarField& f, const std::vector<double>& row0 = {},
                            const std::vector<double>& col0 = {});

} // namespace spinsurf
