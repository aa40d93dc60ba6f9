#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "spinsurf/calculus.hpp"
#include "spinsurf/field.hpp"

namespace spinsurf {

/// A surface-formula coefficient: a real constant or a grid-sampled field.
class Coefficient {
public:
  Coefficient(double c = 0.0) : v_(c) {}
  Coefficient(ScalarField f) : v_(std::move(f)) {}

  bool is_constant() const { return std::holds_alternative<double>(v_); }
  /// True only for the constant 0; such terms are skipped entirely.
  bool is_zero() const { return is_constant() && std::get<double>(v_) == 0.0; }
  double constant() const { return std::get<double>(v_); }
  const ScalarField& field() const { return std::get<ScalarField>(v_); }

  double at(std::size_t k) const { return is_constant() ? constant() : field()[k]; }

  /// Derivative with the field-core stencils; constants give 0.
  Coefficient diff(Deriv which) const;
  ScalarField materialize(const Grid& g) const;

  void check_grid(const Grid& g) const;

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);

private:
  std::variant<double, ScalarField> v_;
};

/// The ten coefficients of r_x = a1 N^N_x + a2 N^N_y + a3 N_x + a4 N_y + a5 N
/// and r_y = b1 N^N_x + ... + b5 N. Stored zero-based: a[0] is a1.
struct CoefficientSet {
  std::array<Coefficient, 5> a;
  std::array<Coefficient, 5> b;

  void check_grid(const Grid& g) const;
  friend CoefficientSet operator+(const CoefficientSet& x, const CoefficientSet& y);
};

namespace coeffs {
struct Rodrigues {
  Coefficient rho1, rho2;
};
struct Lelieuvre {
  Coefficient rho;
};
struct Schief {
  Coefficient rho, mu;
};
struct HF {};
struct LLEStationary {};
struct MXIIIA {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  Coefficient a3;
  ScalarField phi;
};
struct MXIIIB {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  Coefficient a3;
  ScalarField phi;
};
using Kind = std::variant<Rodrigues, Lelieuvre, Schief, HF, LLEStationary, MXIIIA, MXIIIB>;
} // namespace coeffs

/// Embeds a classical surface formula into the ten-coefficient form.
CoefficientSet classical_coeffs(const coeffs::Kind& kind, const Grid& grid);

/// Builds a classical coefficient set from a name ("rodrigues", "lelieuvre",
/// "schief", "hf", "lle", "m-xiiia", "m-xiiib") and named real parameters.
/// Throws MissingParameter when a required parameter (or phi) is absent.
CoefficientSet coeffs_from_params(const std::string& name,
                                  const std::map<std::string, double>& params, const Grid& grid,
                                  const std::optional<ScalarField>& phi = std::nullopt);

struct Tangents {
  VecField rx, ry;
};

/// r_x, r_y of the spin-form surface formula.
Tangents mf_tangents(const SpinField& s, const CoefficientSet& c);
/// Same formula for a general vector field N.
Tangents mf_tangents(const VecField& n, const CoefficientSet& c);

struct ResidualReport {
  VecField vector_residual;
  ScalarField scalar_residual;
  double vector_max = 0, vector_l2 = 0;
  double scalar_max = 0, scalar_l2 = 0;

  ResidualReport(VecField v, ScalarField s);
};

/// Compatibility residual of the surface formula (the N-system).
///
/// The vector part is assembled term by term in flux form,
/// sum_k [ D_y(a_k T_k) - D_x(b_k T_k) ] over T = {N^N_x, N^N_y, N_x, N_y, N};
/// expanding each product by the Leibniz rule gives the N-system in its usual
/// expanded form, so this matches n_system_residual_expanded to O(h^2) and
/// the discrete curl of mf_tangents to rounding.
///
/// The scalar part is (b5_x - a5_y) minus the right-hand side of the scalar
/// N-equation: divided by N.N for a general VecField, undivided and with
/// the N.N_x / N.N_y terms dropped for a SpinField (orientation
/// S.(S_y ^ S_x)). Throws NearZeroNorm for |N| < 1e-8 in the general form.
ResidualReport n_system_residual(const VecField& n, const CoefficientSet& c);
ResidualReport n_system_residual(const SpinField& s, const CoefficientSet& c);

/// The vector N-equation written out literally, every product pre-expanded
/// and each derivative taken by the stencils. Scalar part as above.
ResidualReport n_system_residual_expanded(const SpinField& s, const CoefficientSet& c);
ResidualReport n_system_residual_expanded(const VecField& n, const CoefficientSet& c);

/// Reconstructed position field with quads (i,j)-(i+1,j)-(i+1,j+1)-(i,j+1).
/// The mesh grid is always Clamped: positions are not periodic in general.
struct SurfaceMesh {
  VecField positions;
  const Grid& grid() const { return positions.grid(); }
  std::size_t quad_count() const {
    return static_cast<std::size_t>(grid().nx() - 1) * (grid().ny() - 1);
  }
};

struct Reconstruction {
  SurfaceMesh mesh;
  double path_mismatch = 0;
};

/// Integrates tangent fields by cumulative trapezoid quadrature. Sweep A
/// (row j=0, then up each column) is returned; the mismatch is the max node
/// distance to sweep B (column i=0, then along each row).
Reconstruction reconstruct_from_tangents(const VecField& rx, const VecField& ry,
                                         const Vec3& base = Vec3::Zero());

Reconstruction reconstruct_surface(const SpinField& s, const CoefficientSet& c,
                                   const Vec3& base = Vec3::Zero());

/// (r_x ^ r_y)/|r_x ^ r_y|; throws DegenerateTangent below 1e-10.
VecField unit_normal(const SurfaceMesh& m);

} // namespace spinsurf
