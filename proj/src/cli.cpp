#include "spinsurf/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <ostream>

#include "spinsurf/errors.hpp"
#include "spinsurf/evolve.hpp"
#include "spinsurf/io.hpp"

namespace spinsurf {

namespace {

double param(const RunConfig& cfg, const char* key, double fallback = 0.0) {
  auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

CoefficientSet mxiii_constants(const RunConfig& cfg) {
  CoefficientSet c;
  const char* a[] = {"a1", "a2", "a3", "a4", "a5"};
  const char* b[] = {"b1", "b2", "b3", "b4", "b5"};
  for (int k = 0; k < 5; ++k) {
    c.a[k] = Coefficient(param(cfg, a[k]));
    c.b[k] = Coefficient(param(cfg, b[k]));
  }
  return c;
}

SpinModelKind spin_kind(const RunConfig& cfg) {
  const std::string& m = cfg.model;
  if (m == "hf") return model::HF{};
  if (m == "lle") return model::LLE{};
  if (m == "m-xiii") return model::MXIII{mxiii_constants(cfg)};
  if (m == "m-xiiia")
    return model::MXIIIA{param(cfg, "a1"), param(cfg, "a2"), param(cfg, "b1"), param(cfg, "b2")};
  if (m == "m-xiiib")
    return model::MXIIIB{param(cfg, "a1"), param(cfg, "a2"), param(cfg, "b1"), param(cfg, "b2")};
  if (m == "ishimori") return model::IshimoriStationary{param(cfg, "alpha", 1.0)};
  throw UnknownModel(m);
}

bool is_spin_model(const std::string& m) {
  return m == "hf" || m == "lle" || m == "m-xiii" || m == "m-xiiia" || m == "m-xiiib" ||
         m == "ishimori";
}

ModelSpec catalog_model(const RunConfig& cfg) {
  ModelSpec spec = catalog_lookup(cfg.model);
  MEParams& p = spec.params;
  p.mu = param(cfg, "mu", p.mu);
  p.m = param(cfg, "m", p.m);
  p.n = param(cfg, "n", p.n);
  p.rho = param(cfg, "rho", p.rho);
  p.nu0 = param(cfg, "nu0", p.nu0);
  p.alpha = param(cfg, "alpha", p.alpha);
  p.beta = param(cfg, "beta", p.beta);
  p.lambda = param(cfg, "lambda", p.lambda);
  return spec;
}

std::string snapshot_name(const char* prefix, std::size_t step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06zu.csv", prefix, step);
  return buf;
}

void emit_report(const RunConfig& cfg, const Report& r, std::ostream& out) {
  if (cfg.io.report.empty())
    out << format_report(r);
  else
    write_report(cfg.io.report, r);
}

// ---- simulate --------------------------------------------------------------------

void simulate(const RunConfig& cfg, std::ostream& out) {
  const EvolveModel model = is_spin_model(cfg.model) ? EvolveModel(spin_kind(cfg))
                                                     : EvolveModel(catalog_model(cfg));
  std::vector<std::string> notes;

  SystemState y{VecField(Grid::line(3, 1.0, Boundary::Periodic)), std::nullopt, std::nullopt};
  if (!cfg.io.input.empty()) {
    y.s = read_spin_field(cfg.io.input).vec();
    notes.push_back("initial-state:file");
  } else {
    const int ny = cfg.grid.ny.value_or(1);
    const Grid g(*cfg.grid.nx, ny, *cfg.grid.dx, cfg.grid.dy.value_or(*cfg.grid.dx),
                 *cfg.grid.boundary);
    y.s = random_spin_field(g, cfg.seed, cfg.modes).vec();
    notes.push_back("initial-state:random seed=" + std::to_string(cfg.seed) +
                    " modes=" + std::to_string(cfg.modes));
  }
  const Grid& g = y.s.grid();

  if (const auto* spec = std::get_if<ModelSpec>(&model)) {
    if (!cfg.io.u_input.empty()) {
      y.u = read_scalar_field(cfg.io.u_input);
      require_same_grid(g, y.u->grid(), "u-input");
    } else {
      y.u = random_scalar_field(g, cfg.seed + 1, cfg.modes);
    }
    if (spec->phonon == PhononFamily::Wave || spec->phonon == PhononFamily::Boussinesq)
      y.w = ScalarField(g);
    notes.push_back("spin-family:" + to_string(spec->spin));
    notes.push_back("phonon:" + to_string(spec->phonon));
    notes.push_back("source:" + to_string(spec->source));
    if (spec->phonon == PhononFamily::None) notes.push_back("u:external-static");
  } else if (!cfg.io.u_input.empty()) {
    throw ConfigError("u-input only applies to catalog models");
  } else {
    notes.push_back(orientation_tag(std::get<SpinModelKind>(model)));
  }
  notes.push_back("energy_proxy:monitoring-only");

  EvolveOptions opts;
  opts.dt_safety = cfg.evolve.dt_safety;
  opts.dt = cfg.evolve.dt.value_or(stable_dt(model, g, cfg.evolve.dt_safety));
  opts.steps = *cfg.evolve.steps;
  opts.snapshot_every = cfg.evolve.snapshot_every;
  opts.renormalize = cfg.evolve.renormalize;
  opts.override_stability = cfg.evolve.override_stability;

  const Trajectory tr = evolve(model, y, opts);

  namespace fs = std::filesystem;
  const fs::path dir(cfg.io.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.io.output + "': " + ec.message());
  for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
    const std::size_t step = k * opts.snapshot_every;
    const SystemState& s = tr.snapshots[k];
    write_field((dir / snapshot_name("spin", step)).string(), s.s);
    if (s.u) write_field((dir / snapshot_name("u", step)).string(), *s.u);
    if (s.w) write_field((dir / snapshot_name("w", step)).string(), *s.w);
    if (tr.potentials[k]) write_field((dir / snapshot_name("phi", step)).string(), *tr.potentials[k]);
  }
  write_text((dir / "report.json").string(),
             format_trajectory_report(model_name(model), opts, tr, notes));
  out << "wrote " << tr.snapshots.size() << " snapshots to " << cfg.io.output << "\n";
}

// ---- reconstruct / check ------------------------------------------------------------

std::optional<ScalarField> read_phi(const RunConfig& cfg, const Grid& g) {
  if (cfg.io.phi.empty()) return std::nullopt;
  ScalarField phi = read_scalar_field(cfg.io.phi);
  require_same_grid(g, phi.grid(), "phi");
  return phi;
}

std::optional<ScalarField> solved_phi(const RunConfig& cfg, const SpinField& s) {
  const SpinModelKind k = spin_kind(cfg);
  if (const auto* p = std::get_if<model::MXIIIA>(&k)) return mxiiia_system(s, *p).phi;
  if (const auto* p = std::get_if<model::MXIIIB>(&k)) return mxiiib_system(s, *p).phi;
  return std::nullopt;
}

void reconstruct(const RunConfig& cfg, std::ostream& out) {
  const SpinField s = read_spin_field(cfg.io.input);
  std::optional<ScalarField> phi = read_phi(cfg, s.grid());
  std::vector<std::string> notes;
  if (!phi && (cfg.model == "m-xiiia" || cfg.model == "m-xiiib")) {
    phi = solved_phi(cfg, s);
    notes.push_back("phi:solved");
  }
  const CoefficientSet c = coeffs_from_params(cfg.model, cfg.params, s.grid(), phi);
  const Reconstruction r = reconstruct_surface(s, c);
  if (cfg.io.normals) {
    const VecField n = unit_normal(r.mesh);
    export_mesh(cfg.io.mesh, r.mesh, &n);
  } else {
    export_mesh(cfg.io.mesh, r.mesh);
  }
  out << "path_mismatch " << format_real(r.path_mismatch) << "\n";
  if (!cfg.io.report.empty()) {
    notes.push_back("n-system:flux-form");
    notes.push_back("path_mismatch=" + format_real(r.path_mismatch));
    write_report(cfg.io.report, make_report(cfg.model, n_system_residual(s, c), notes));
  }
}

void check(const RunConfig& cfg, std::ostream& out) {
  const SpinField s = read_spin_field(cfg.io.input);
  std::optional<ScalarField> phi = read_phi(cfg, s.grid());
  std::vector<std::string> notes;
  if (is_spin_model(cfg.model)) {
    const SpinModelKind k = spin_kind(cfg);
    if (!phi && (cfg.model == "m-xiiia" || cfg.model == "m-xiiib")) {
      phi = solved_phi(cfg, s);
      notes.push_back("phi:solved");
    }
    notes.insert(notes.begin(), orientation_tag(k));
    emit_report(cfg, make_report(cfg.model, stationary_residual(k, s, phi), notes), out);
    return;
  }
  const CoefficientSet c = coeffs_from_params(cfg.model, cfg.params, s.grid(), phi);
  notes.push_back("n-system:flux-form");
  emit_report(cfg, make_report(cfg.model, n_system_residual(s, c), notes), out);
}

// ---- zc ---------------------------------------------------------------------------

void zc(const RunConfig& cfg, std::ostream& out) {
  const CurveData cd = read_curve(cfg.io.input);
  const Grid& g = cd.k.grid();
  const MatrixField C = build_C(cd.k, cd.tau);
  std::vector<std::string> notes = {"y-identified-with-t"};
  MatrixField D = build_D(cd.omega1, cd.omega2, cd.omega3, cfg.antisymmetrize);
  if (cfg.solve_d) {
    std::vector<Mat3> d0;
    for (int n = 0; n < g.ny(); ++n) d0.push_back(D(0, n));
    D = solve_D(C, d0);
    notes.push_back("D:solved-from-first-column");
  } else {
    notes.push_back(cfg.antisymmetrize ? "D:antisymmetrized" : "D:as-given");
  }
  const ZcResidual r = zc_residual(C, D);

  Report rep{"zc", g, r.max_norm, 0.0, 0.0, 0.0, notes};
  double sum = 0.0;
  for (const auto& m : r.field.values()) sum += m.squaredNorm();
  rep.vector_l2 = std::sqrt(sum * g.dx() * g.dy());

  if (g.ny() >= 3) {
    const ComplexField psi = hasimoto(cd.k, cd.tau);
    const Grid line = Grid::line(g.nx(), g.dx(), g.boundary());
    std::vector<ComplexField> slices;
    for (int n = 0; n < g.ny(); ++n) {
      ComplexField sl(line);
      for (int i = 0; i < g.nx(); ++i) sl(i, 0) = psi(i, n);
      slices.push_back(std::move(sl));
    }
    double mx = 0.0, s2 = 0.0;
    for (const auto& res : nlse_residual(slices, g.dy()))
      for (double v : res.values()) {
        mx = std::max(mx, v);
        s2 += v * v;
      }
    rep.scalar_max = mx;
    rep.scalar_l2 = std::sqrt(s2 * g.dx() * g.dy());
    rep.notes.push_back("scalar_residual:nlse-of-hasimoto");
  } else {
    rep.notes.push_back("scalar_residual:skipped-fewer-than-3-slices");
  }
  emit_report(cfg, rep, out);
}

// ---- catalog --------------------------------------------------------------------------

void catalog_cmd(const RunConfig& cfg, std::ostream& out) {
  if (cfg.catalog_action == "list") {
    for (const auto& m : catalog())
      out << m.name << '\t' << (m.implemented ? to_string(m.spin) : "-") << '\t'
          << (m.implemented ? to_string(m.phonon) : "-") << '\t'
          << (m.implemented ? to_string(m.source) : "-") << '\t'
          << (m.implemented ? "true" : "false") << '\n';
    for (const char* s : {"hf", "lle", "m-xiii", "m-xiiia", "m-xiiib", "ishimori"})
      out << s << "\tspin-model\t-\t-\ttrue\n";
    return;
  }
  const std::string& name = cfg.catalog_name;
  for (const char* s : {"hf", "lle", "m-xiii", "m-xiiia", "m-xiiib", "ishimori"})
    if (name == s) {
      RunConfig c2 = cfg;
      c2.model = s;
      out << "name: " << s << "\nkind: spin-model\norientation: " << orientation_tag(spin_kind(c2))
          << "\n";
      return;
    }
  const ModelSpec m = catalog_lookup(name);
  out << "name: " << m.name << "\ntype: " << m.system_type << "-type"
      << "\nimplemented: " << (m.implemented ? "true" : "false") << "\n";
  if (!m.implemented) {
    out << "reason: " << m.reason << "\n";
    return;
  }
  const MEParams& p = m.params;
  out << "spin: " << to_string(m.spin) << "\nphonon: " << to_string(m.phonon)
      << "\nsource: " << to_string(m.source)
      << "\nmax_derivative_order: " << m.max_derivative_order() << "\ndefaults: mu="
      << format_real(p.mu) << " m=" << format_real(p.m) << " n=" << format_real(p.n)
      << " rho=" << format_real(p.rho) << " nu0=" << format_real(p.nu0)
      << " alpha=" << format_real(p.alpha) << " beta=" << format_real(p.beta)
      << " lambda=" << format_real(p.lambda) << "\n";
}

} // namespace

void run_command(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
  case Command::Simulate: simulate(cfg, out); break;
  case Command::Reconstruct: reconstruct(cfg, out); break;
  case Command::Check: check(cfg, out); break;
  case Command::Catalog: catalog_cmd(cfg, out); break;
  case Command::Zc: zc(cfg, out); break;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    run_command(parse_config(args), out);
    return 0;
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const NonFiniteValue& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace spinsurf
