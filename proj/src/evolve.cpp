#include "spinsurf/evolve.hpp"

#include <algorithm>

#include "spinsurf/calculus.hpp"

namespace spinsurf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void add_opt(std::optional<ScalarField>& a, const std::optional<ScalarField>& b) {
  if (a.has_value() != b.has_value()) throw GridError("state shapes differ");
  if (a) *a += *b;
}

double drift_of(const VecField& s) {
  double d = 0.0;
  for (const auto& v : s.values()) d = std::max(d, std::abs(v.norm() - 1.0));
  return d;
}

bool needs_w(const ModelSpec& m) {
  return m.phonon == PhononFamily::Wave || m.phonon == PhononFamily::Boussinesq;
}

void check_state_shape(const EvolveModel& m, const SystemState& y) {
  if (const auto* spec = std::get_if<ModelSpec>(&m)) {
    require_implemented(*spec);
    if (!y.u) throw MissingParameter("u is required for " + spec->name);
    if (needs_w(*spec) && !y.w) throw MissingParameter("w (u_t) is required for " + spec->name);
  }
}

} // namespace

std::string model_name(const EvolveModel& m) {
  return std::visit(overloaded{[](const SpinModelKind& k) { return model_name(k); },
                               [](const ModelSpec& s) { return s.name; }},
                    m);
}

SystemState& SystemState::operator+=(const SystemState& o) {
  s += o.s;
  add_opt(u, o.u);
  add_opt(w, o.w);
  return *this;
}

SystemState& SystemState::operator*=(double a) {
  s *= a;
  if (u) *u *= a;
  if (w) *w *= a;
  return *this;
}

bool all_finite(const SystemState& y) {
  return all_finite(y.s) && (!y.u || all_finite(*y.u)) && (!y.w || all_finite(*y.w));
}

int spatial_order(const EvolveModel& m) {
  if (const auto* spec = std::get_if<ModelSpec>(&m)) return spec->max_derivative_order();
  return 2;
}

double stable_dt(const EvolveModel& m, const Grid& g, double dt_safety) {
  const double h = g.is_1d() ? g.dx() : std::min(g.dx(), g.dy());
  return dt_safety * std::pow(h, spatial_order(m));
}

SystemState system_rhs(const EvolveModel& m, const SystemState& y, double t,
                       const std::function<ScalarField(double)>& external_u) {
  SystemState out{VecField(y.s.grid()), std::nullopt, std::nullopt};
  std::visit(
      overloaded{
          [&](const SpinModelKind& k) {
            out.s = std::visit(
                overloaded{
                    [&](const model::HF&) { return hf_rhs(y.s); },
                    [&](const model::LLE&) { return lle_rhs(y.s); },
                    [&](const model::MXIII& p) { return mxiii_rhs(y.s, p.c).rhs; },
                    [&](const model::MXIIIA& p) { return mxiiia_system(y.s, p).rhs; },
                    [&](const model::MXIIIB& p) { return mxiiib_system(y.s, p).rhs; },
                    [&](const model::IshimoriStationary&) -> VecField {
                      throw UnimplementedModel("ishimori",
                                               "stationary system, no evolution equation");
                    }},
                k);
          },
          [&](const ModelSpec& spec) {
            check_state_shape(m, y);
            if (spec.phonon == PhononFamily::None) {
              const ScalarField u = external_u ? external_u(t) : *y.u;
              out.s = me_spin_rhs(spec, y.s, u);
              out.u = ScalarField(y.s.grid());
              return;
            }
            out.s = me_spin_rhs(spec, y.s, *y.u);
            PhononRhs p = me_phonon_rhs(spec, y.s, *y.u, y.w);
            out.u = std::move(p.du_dt);
            if (p.dw_dt) out.w = std::move(*p.dw_dt);
          }},
      m);
  return out;
}

Diagnostics diagnostics(const EvolveModel& m, const SystemState& y, double drift) {
  Diagnostics d;
  d.max_norm_drift = drift;
  const Grid& g = y.s.grid();
  const ScalarField ex = norm_squared(diff(y.s, Deriv::Dx));
  double e = 0.0;
  for (double v : ex.values()) e += v;
  if (g.is_1d()) {
    e *= g.dx();
  } else {
    const ScalarField ey = norm_squared(diff(y.s, Deriv::Dy));
    for (double v : ey.values()) e += v;
    e *= g.dx() * g.dy();
  }
  d.energy_proxy = e;
  if (const auto* k = std::get_if<SpinModelKind>(&m))
    if (const auto* p = std::get_if<model::MXIII>(k))
      d.constraint_residual = max_abs(mxiii_rhs(y.s, p->c).constraint_residual);
  return d;
}

namespace {

std::optional<PotentialField> potential_of(const EvolveModel& m, const SystemState& y) {
  const auto* k = std::get_if<SpinModelKind>(&m);
  if (!k) return std::nullopt;
  if (const auto* p = std::get_if<model::MXIIIA>(k)) return mxiiia_system(y.s, *p).phi;
  if (const auto* p = std::get_if<model::MXIIIB>(k)) return mxiiib_system(y.s, *p).phi;
  return std::nullopt;
}

} // namespace

Trajectory evolve(const EvolveModel& m, const SystemState& initial, const EvolveOptions& opts) {
  if (!(opts.dt > 0)) throw ConfigError("dt must be positive");
  if (opts.steps == 0) throw ConfigError("steps must be positive");
  if (opts.snapshot_every == 0) throw ConfigError("snapshot_every must be positive");
  const Grid& g = initial.s.grid();
  if (!opts.override_stability) {
    const double bound = stable_dt(m, g, opts.dt_safety);
    if (opts.dt > bound)
      throw StabilityError("dt = " + std::to_string(opts.dt) + " exceeds the stability bound " +
                           std::to_string(bound) + " for " + model_name(m));
  }
  SpinField check(initial.s); // enforces the unit-norm invariant
  check_state_shape(m, initial);

  Trajectory tr;
  auto record = [&](const SystemState& y, double t, double drift) {
    SystemState snap = y;
    if (opts.external_u && std::holds_alternative<ModelSpec>(m) &&
        std::get<ModelSpec>(m).phonon == PhononFamily::None)
      snap.u = opts.external_u(t);
    tr.times.push_back(t);
    tr.potentials.push_back(potential_of(m, y));
    tr.diagnostics.push_back(diagnostics(m, y, drift));
    tr.snapshots.push_back(std::move(snap));
  };
  record(initial, 0.0, drift_of(initial.s));

  auto f = [&](const SystemState& y, double t) { return system_rhs(m, y, t, opts.external_u); };
  SystemState y = initial;
  for (std::size_t n = 1; n <= opts.steps; ++n) {
    const double t0 = static_cast<double>(n - 1) * opts.dt;
    y = rk4_step(y, f, opts.dt, t0, n);
    const double drift = drift_of(y.s);
    tr.max_step_drift = std::max(tr.max_step_drift, drift);
    if (opts.renormalize) y.s = project_sphere(y.s).vec();
    if (n % opts.snapshot_every == 0) record(y, static_cast<double>(n) * opts.dt, drift);
  }
  return tr;
}

} // namespace spinsurf
