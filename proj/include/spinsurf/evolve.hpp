#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <variant>
#include <vector>

#include "spinsurf/errors.hpp"
#include "spinsurf/magnetoelastic.hpp"
#include "spinsurf/spin_models.hpp"

namespace spinsurf {

/// Either one of the 2-D/1-D spin models or a magnetoelastic catalog entry.
using EvolveModel = std::variant<SpinModelKind, ModelSpec>;

std::string model_name(const EvolveModel& m);

/// Evolving fields. u and w are present only for magnetoelastic models
/// (w only for the second-order lattice equations).
struct SystemState {
  VecField s;
  std::optional<ScalarField> u;
  std::optional<ScalarField> w;

  SystemState& operator+=(const SystemState& o);
  SystemState& operator*=(double a);
  friend SystemState operator+(SystemState a, const SystemState& b) { return a += b; }
  friend SystemState operator*(double a, SystemState s) { return s *= a; }
};

inline bool all_finite(double v) { return std::isfinite(v); }
bool all_finite(const SystemState& s);

/// Classical RK4. `f` is called as f(y, t) when it accepts a time argument,
/// otherwise f(y). No renormalization happens here. Throws Blowup(step)
/// if the result is not finite.
template <class State, class F>
State rk4_step(const State& y, F&& f, double dt, double t = 0.0, std::size_t step = 0) {
  auto eval = [&](const State& s, double tt) -> State {
    if constexpr (std::is_invocable_v<F&, const State&, double>)
      return f(s, tt);
    else
      return f(s);
  };
  const State k1 = eval(y, t);
  const State k2 = eval(y + (0.5 * dt) * k1, t + 0.5 * dt);
  const State k3 = eval(y + (0.5 * dt) * k2, t + 0.5 * dt);
  const State k4 = eval(y + dt * k3, t + dt);
  State out = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!all_finite(out)) throw Blowup(step);
  return out;
}

struct EvolveOptions {
  double dt = 0;
  std::size_t steps = 0;
  bool renormalize = true;
  std::size_t snapshot_every = 1;
  double dt_safety = 0.2;
  /// Skip the explicit stability bound.
  bool override_stability = false;
  /// Optional time-dependent external u for 0-type catalog models; when
  /// empty the initial u is held fixed.
  std::function<ScalarField(double)> external_u;
};

struct Diagnostics {
  /// max | |S| - 1 | before the projection that produced this snapshot
  double max_norm_drift = 0;
  /// sum |S_x|^2 dx (1-D) or sum (|S_x|^2 + |S_y|^2) dx dy (2-D); a
  /// monitoring proxy, not a conserved quantity of the models
  double energy_proxy = 0;
  /// max |constraint| for M-XIII
  std::optional<double> constraint_residual;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SystemState> snapshots;
  /// phi at each snapshot for M-XIIIA/B
  std::vector<std::optional<PotentialField>> potentials;
  std::vector<Diagnostics> diagnostics;
  /// largest pre-projection drift over every step
  double max_step_drift = 0;
};

/// Highest spatial derivative order of the model's right-hand side.
int spatial_order(const EvolveModel& m);

/// dt_safety * h^p with h the smallest spacing and p = spatial_order.
double stable_dt(const EvolveModel& m, const Grid& g, double dt_safety = 0.2);

/// Time derivative of the full state.
SystemState system_rhs(const EvolveModel& m, const SystemState& y, double t,
                       const std::function<ScalarField(double)>& external_u = {});

Diagnostics diagnostics(const EvolveModel& m, const SystemState& y, double drift = 0.0);

/// Repeated rk4_step with optional per-step projection onto the sphere.
/// Throws StabilityError when dt exceeds stable_dt without override,
/// InvalidSpinField for a non-unit initial S, MissingParameter when u/w
/// are missing for a catalog model.
Trajectory evolve(const EvolveModel& m, const SystemState& initial, const EvolveOptions& opts);

} // namespace spinsurf
