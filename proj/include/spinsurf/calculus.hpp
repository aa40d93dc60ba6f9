#pragma once

#include <vector>

#include "spinsurf/field.hpp"

namespace spinsurf {

enum class Deriv { Dx, Dy, Dxx, Dyy, Dxy };

enum class Axis { X, Y };

/// Finite-difference weights for the `order`-th derivative at 0 using the
/// given integer node offsets (unit spacing), by Fornberg's recursion.
std::vector<double> fd_weights(int order, const std::vector<int>& offsets);

/// Second-order accurate `order`-th derivative along one axis.
///
/// Interior nodes use the centred stencil of half-width (order+1)/2.
/// Periodic grids wrap; clamped grids shift to a one-sided window of
/// order+2 nodes near the edges. Sums are taken in difference form
/// sum_k w_k (f_k - f_i), so constants differentiate to exactly zero.
ScalarField derivative(const ScalarField& f, Axis axis, int order);
VecField derivative(const VecField& f, Axis axis, int order);

/// The five first/second derivatives; Dxy is Dx followed by Dy.
ScalarField diff(const ScalarField& f, Deriv which);
VecField diff(const VecField& f, Deriv which);
VecField diff(const SpinField& f, Deriv which);

/// Fourth x-derivative; requires nx >= 5.
ScalarField diff4x(const ScalarField& f);
VecField diff4x(const VecField& f);
VecField diff4x(const SpinField& f);

} // namespace spinsurf
