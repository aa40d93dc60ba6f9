#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinsurf/geometry.hpp"

namespace spinsurf {

/// Auxiliary potential phi of the M-XIIIA/B and Ishimori systems.
using PotentialField = ScalarField;

namespace model {
/// S_y = S ^ S_xx, y read as the evolution variable.
struct HF {};
/// S_t = S ^ (S_xx + S_yy).
struct LLE {};
/// M-XIII with a full coefficient set (b3 = a4 = 0, b4 = a3).
struct MXIII {
  CoefficientSet c;
};
struct MXIIIA {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
};
struct MXIIIB {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
};
struct IshimoriStationary {
  double alpha = 1;
};
} // namespace model

using SpinModelKind = std::variant<model::HF, model::LLE, model::MXIII, model::MXIIIA,
                                   model::MXIIIB, model::IshimoriStationary>;

std::string model_name(const SpinModelKind& kind);

/// Orientation of the triple product in the kind's scalar equation, as
/// reported in residual-report notes: "hf-orientation:SyxSx" for
/// S.(S_y ^ S_x), "m-xiii-orientation:SxxSy" for S.(S_x ^ S_y).
std::string orientation_tag(const SpinModelKind& kind);

/// The right-hand sides accept any VecField so that RK stages, which are
/// only approximately unit, can be evaluated.
VecField hf_rhs(const VecField& s);
VecField lle_rhs(const VecField& s);

struct MXIIIResult {
  VecField rhs;
  ScalarField constraint_residual;
};

/// S ^ [a2 S_yy + (a1-b2) S_xy - b1 S_xx] + (a3_y - b5) S_x + (a5 - a3_x) S_y
/// and the monitored constraint (a5_y - b5_x) - (a1+b2) S.(S_x ^ S_y).
MXIIIResult mxiii_rhs(const VecField& s, const CoefficientSet& c);

struct PotentialSystem {
  VecField rhs;
  PotentialField phi;
  /// Mean removed from the Poisson source (M-XIIIB only).
  double source_mean = 0;
};

/// phi from phi_xy = (a1+b2)/2 S.(S_x ^ S_y) by mixed integration (phi fixed
/// on the seed axes, default zero); rhs carries phi_y S_x + phi_x S_y.
PotentialSystem mxiiia_system(const VecField& s, const model::MXIIIA& p,
                              const std::vector<double>& phi_row0 = {},
                              const std::vector<double>& phi_col0 = {});

/// phi from phi_xx + phi_yy = (a1+b2) S.(S_x ^ S_y) in the zero-mean gauge;
/// rhs carries phi_x S_x + phi_y S_y. Periodic grids only. Throws
/// NonZeroMeanSource when the field has non-zero lattice degree (no periodic
/// solution); otherwise the O(h^2) discrete mean of the source is removed.
PotentialSystem mxiiib_system(const VecField& s, const model::MXIIIB& p);

/// Integer winding number of a periodic 2-D spin field from the solid
/// angles of the lattice triangles.
int lattice_degree(const SpinField& s);

/// Residuals of the stationary equations. For HF the vector part is
/// S_y - S ^ S_xx (the flow with y as evolution variable) and the scalar part
/// is zero; LLE likewise has no scalar equation. phi is required for
/// MXIIIA, MXIIIB and the Ishimori kind (MissingParameter otherwise).
ResidualReport stationary_residual(const SpinModelKind& kind, const SpinField& s,
                                   const std::optional<PotentialField>& phi = std::nullopt);

} // namespace spinsurf
