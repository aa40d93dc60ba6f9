#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinsurf/field.hpp"

namespace spinsurf {

/// Spin equations of the 1+1-D magnetoelastic systems, in vector form
/// (the matrix commutator form divided by 2i):
///   A: S^S_xx + u (S^e3)
///   B: S^S_xx + u S3 (S^e3)
///   C: d/dx[(mu |S_x|^2 - u + m) (S^S_x)]
///   D: n S^S_xxxx + 2 d/dx[(mu |S_x|^2 - u + m) (S^S_x)]
///   E: S^S_xx + u S_x
enum class SpinFamily { A, B, C, D, E };

/// Lattice (phonon) equation for u:
///   None       u prescribed externally
///   Wave       rho u_tt = nu0^2 u_xx + lambda q_xx
///   Boussinesq rho u_tt = nu0^2 u_xx + alpha (u^2)_xx + beta u_xxxx + lambda q_xx
///   Advection  u_t + u_x + lambda q_x = 0
///   KdV        u_t + u_x + alpha (u^2)_x + beta u_xxx + lambda q_x = 0
enum class PhononFamily { None, Wave, Boussinesq, Advection, KdV };

/// q built from the spin field: S3, S3^2, |S_x|^2, or tr(S_x^2)/4 = |S_x|^2/2.
enum class CouplingSource { S3, S3sq, SxSq, TrForm };

std::string to_string(SpinFamily f);
std::string to_string(PhononFamily f);
std::string to_string(CouplingSource s);

struct MEParams {
  double mu = 1, m = 1, n = 1;
  double rho = 1, nu0 = 1, alpha = 1, beta = 1, lambda = 1;
};

struct ModelSpec {
  std::string name;
  SpinFamily spin = SpinFamily::A;
  PhononFamily phonon = PhononFamily::None;
  CouplingSource source = CouplingSource::S3;
  bool implemented = true;
  std::string reason; ///< why an entry is not implemented
  int system_type = 0; ///< 0-type (no lattice equation) up to 7-type
  MEParams params;

  /// Highest spatial derivative order in the coupled system (2, 3 or 4).
  int max_derivative_order() const;
};

/// The full registry ordered by system type.
const std::vector<ModelSpec>& catalog();

/// Case-insensitive lookup; throws UnknownModel.
ModelSpec catalog_lookup(const std::string& name);

/// Throws UnimplementedModel for entries without an implementation.
void require_implemented(const ModelSpec& spec);

/// State on a 1-D grid. w = u_t is present for Wave/Boussinesq models.
struct MEState {
  SpinField s;
  ScalarField u;
  std::optional<ScalarField> w;
};

/// Coupling source q(S).
ScalarField coupling_source(CouplingSource source, const VecField& s);

VecField me_spin_rhs(const ModelSpec& spec, const MEState& state);
/// Same, for RK stage values that are only approximately unit.
VecField me_spin_rhs(const ModelSpec& spec, const VecField& s, const ScalarField& u);

struct PhononRhs {
  ScalarField du_dt;
  std::optional<ScalarField> dw_dt;
};

/// First-order form of the lattice equation. Throws PhononAbsent for
/// 0-type models.
PhononRhs me_phonon_rhs(const ModelSpec& spec, const MEState& state);
PhononRhs me_phonon_rhs(const ModelSpec& spec, const VecField& s, const ScalarField& u,
                        const std::optional<ScalarField>& w);

/// Independent evaluation of me_spin_rhs through 2x2 complex matrices
/// S = S1 sigma1 + S2 sigma2 + S3 sigma3, commutators and traces, divided
/// by 2i at the end.
VecField pauli_oracle_rhs(const ModelSpec& spec, const MEState& state);

} // namespace spinsurf
