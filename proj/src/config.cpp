#include "spinsurf/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "CLI11.hpp"
#include "spinsurf/errors.hpp"
#include "spinsurf/magnetoelastic.hpp"

namespace spinsurf {

std::string to_string(Command c) {
  switch (c) {
  case Command::Simulate: return "simulate";
  case Command::Reconstruct: return "reconstruct";
  case Command::Check: return "check";
  case Command::Catalog: return "catalog";
  case Command::Zc: return "zc";
  }
  return "?";
}

namespace {

using C = Command;
const std::vector<Command> kModelCommands = {C::Simulate, C::Reconstruct, C::Check};

std::vector<KeySpec> build_keys() {
  std::vector<KeySpec> k = {
      {"config", KeyType::Path, {C::Simulate, C::Reconstruct, C::Check, C::Zc},
       "read further keys from a `key = value` file; flags win"},
      {"model", KeyType::String, kModelCommands, "model or coefficient kind", true},
      {"nx", KeyType::Int, {C::Simulate}, "grid nodes along x"},
      {"ny", KeyType::Int, {C::Simulate}, "grid nodes along y (default 1: a 1-D grid)"},
      {"dx", KeyType::Real, {C::Simulate}, "spacing along x"},
      {"dy", KeyType::Real, {C::Simulate}, "spacing along y (default dx)"},
      {"boundary", KeyType::String, {C::Simulate}, "periodic | clamped (no default)"},
      {"dt", KeyType::Real, {C::Simulate}, "time step (default: the stability bound)"},
      {"steps", KeyType::Int, {C::Simulate}, "number of time steps", true},
      {"snapshot-every", KeyType::Int, {C::Simulate}, "steps between snapshots (default 1)"},
      {"renormalize", KeyType::Bool, {C::Simulate}, "project onto the sphere after each step (default true)"},
      {"dt-safety", KeyType::Real, {C::Simulate}, "stability factor in dt <= f h^p (default 0.2)"},
      {"override-stability", KeyType::Bool, {C::Simulate}, "allow dt above the stability bound"},
      {"init", KeyType::String, {C::Simulate}, "random (default) when no input file is given"},
      {"seed", KeyType::Int, {C::Simulate}, "seed of the random initial data (default 1)"},
      {"modes", KeyType::Int, {C::Simulate}, "Fourier modes of the random initial data (default 2)"},
      {"input", KeyType::Path, {C::Simulate, C::Reconstruct, C::Check, C::Zc},
       "input field (spin CSV) or curve-data file"},
      {"u-input", KeyType::Path, {C::Simulate}, "initial lattice field u for catalog models"},
      {"phi", KeyType::Path, {C::Reconstruct, C::Check}, "potential phi (scalar CSV)"},
      {"output", KeyType::Path, {C::Simulate}, "output directory for snapshots and report.json"},
      {"mesh", KeyType::Path, {C::Reconstruct}, "OBJ output path"},
      {"normals", KeyType::Bool, {C::Reconstruct}, "write vn lines"},
      {"report", KeyType::Path, {C::Reconstruct, C::Check, C::Zc}, "JSON report path (default stdout)"},
      {"antisymmetrize", KeyType::Bool, {C::Zc}, "use D32 = -omega1"},
      {"solve-d", KeyType::Bool, {C::Zc}, "integrate D from its first column instead of using omega"},
  };
  for (const auto& p : param_keys())
    k.push_back({p, KeyType::Real, kModelCommands, "model parameter"});
  return k;
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

bool applies(const KeySpec& k, Command c) {
  return std::find(k.commands.begin(), k.commands.end(), c) != k.commands.end();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || v.empty()) throw TypeError(key, "integer");
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(out)) throw TypeError(key, "real");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string l = lower(v);
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off") return false;
  throw TypeError(key, "boolean");
}

std::size_t to_positive(const std::string& key, const std::string& v) {
  const long long n = to_int(key, v);
  if (n <= 0) throw TypeError(key, "positive integer");
  return static_cast<std::size_t>(n);
}

const std::set<std::string> kSpinModels = {"hf", "lle", "m-xiii", "m-xiiia", "m-xiiib", "ishimori"};
const std::set<std::string> kSurfaceKinds = {"rodrigues", "lelieuvre", "schief"};

std::set<std::string> allowed_params(const std::string& model) {
  if (model == "hf" || model == "lle") return {};
  if (model == "m-xiii") return {"a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5"};
  if (model == "m-xiiia" || model == "m-xiiib") return {"a1", "a2", "a3", "b1", "b2"};
  if (model == "ishimori") return {"alpha"};
  if (model == "rodrigues") return {"rho1", "rho2"};
  if (model == "lelieuvre") return {"rho"};
  if (model == "schief") return {"rho", "mu"};
  return {"mu", "m", "n", "rho", "nu0", "alpha", "beta", "lambda"};
}

/// Canonical model name for the command; throws UnknownModel.
std::string resolve_model(Command cmd, const std::string& raw) {
  const std::string l = lower(raw);
  switch (cmd) {
  case C::Simulate:
    if (kSpinModels.count(l)) {
      if (l == "ishimori")
        throw UnimplementedModel("ishimori", "stationary system, no evolution equation");
      return l;
    }
    {
      const ModelSpec spec = catalog_lookup(raw);
      require_implemented(spec);
      return spec.name;
    }
  case C::Check:
    if (kSpinModels.count(l) || kSurfaceKinds.count(l)) return l;
    break;
  case C::Reconstruct:
    if (kSurfaceKinds.count(l) || l == "hf" || l == "lle" || l == "m-xiiia" || l == "m-xiiib")
      return l;
    break;
  default: break;
  }
  throw UnknownModel(raw);
}

void assign(RunConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "config") return;
  if (key == "model") cfg.model = v;
  else if (key == "nx") cfg.grid.nx = static_cast<int>(to_positive(key, v));
  else if (key == "ny") cfg.grid.ny = static_cast<int>(to_positive(key, v));
  else if (key == "dx") cfg.grid.dx = to_real(key, v);
  else if (key == "dy") cfg.grid.dy = to_real(key, v);
  else if (key == "boundary") {
    const std::string l = lower(v);
    if (l != "periodic" && l != "clamped") throw TypeError(key, "periodic|clamped");
    cfg.grid.boundary = boundary_from_string(l);
  } else if (key == "dt") cfg.evolve.dt = to_real(key, v);
  else if (key == "steps") cfg.evolve.steps = to_positive(key, v);
  else if (key == "snapshot-every") cfg.evolve.snapshot_every = to_positive(key, v);
  else if (key == "renormalize") cfg.evolve.renormalize = to_bool(key, v);
  else if (key == "dt-safety") cfg.evolve.dt_safety = to_real(key, v);
  else if (key == "override-stability") cfg.evolve.override_stability = to_bool(key, v);
  else if (key == "init") {
    if (lower(v) != "random") throw TypeError(key, "random");
    cfg.init = "random";
  } else if (key == "seed") {
    const long long s = to_int(key, v);
    if (s < 0) throw TypeError(key, "non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "modes") cfg.modes = static_cast<int>(to_positive(key, v));
  else if (key == "input") cfg.io.input = v;
  else if (key == "u-input") cfg.io.u_input = v;
  else if (key == "phi") cfg.io.phi = v;
  else if (key == "output") cfg.io.output = v;
  else if (key == "mesh") cfg.io.mesh = v;
  else if (key == "normals") cfg.io.normals = to_bool(key, v);
  else if (key == "report") cfg.io.report = v;
  else if (key == "antisymmetrize") cfg.antisymmetrize = to_bool(key, v);
  else if (key == "solve-d") cfg.solve_d = to_bool(key, v);
  else cfg.params[key] = to_real(key, v);
}

void validate(RunConfig& cfg, const std::set<std::string>& given) {
  auto need = [&](const char* key) {
    if (!given.count(key)) throw MissingRequired(key);
  };
  if (cfg.command == C::Simulate || cfg.command == C::Reconstruct || cfg.command == C::Check) {
    need("model");
    cfg.model = resolve_model(cfg.command, cfg.model);
    const auto ok = allowed_params(cfg.model);
    for (const auto& [k, v] : cfg.params)
      if (!ok.count(k))
        throw ConfigError("parameter '" + k + "' does not apply to model " + cfg.model);
  }
  switch (cfg.command) {
  case C::Simulate:
    need("steps");
    need("output");
    if (cfg.io.input.empty()) {
      need("nx");
      need("dx");
      need("boundary"); // evolution never defaults the boundary
    } else {
      for (const char* k : {"nx", "ny", "dx", "dy", "boundary"})
        if (given.count(k))
          throw ConfigError(std::string("'") + k + "' conflicts with 'input' (the grid comes from the file)");
    }
    break;
  case C::Reconstruct:
    need("input");
    need("mesh");
    break;
  case C::Check:
    need("input");
    break;
  case C::Zc: need("input"); break;
  case C::Catalog:
    if (cfg.catalog_action != "list" && cfg.catalog_action != "show")
      throw ConfigError("catalog expects 'list' or 'show <name>'");
    if (cfg.catalog_action == "show" && cfg.catalog_name.empty()) throw MissingRequired("name");
    if (cfg.catalog_action == "list" && !cfg.catalog_name.empty())
      throw ConfigError("catalog list takes no name");
    return;
  }
}

} // namespace

const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> k = {"a1",  "a2",   "a3", "a4", "a5",  "b1",    "b2",
                                             "b3",  "b4",   "b5", "rho", "rho1", "rho2", "mu",
                                             "m",   "n",    "nu0", "alpha", "beta", "lambda"};
  return k;
}

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> k = build_keys();
  return k;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(ln) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(ln) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string help_text() {
  std::string out =
      "usage: spinsurf <command> [--key value ...] [--config file]\n"
      "\n"
      "commands:\n"
      "  simulate      evolve a spin or magnetoelastic model, write snapshots\n"
      "  reconstruct   integrate a spin field to a surface mesh\n"
      "  check         residual report of a stationary equation\n"
      "  catalog       list | show <name>\n"
      "  zc            zero-curvature and NLSE residuals of curve data\n"
      "\n"
      "keys (command line `--key value`, config file `key = value`):\n";
  for (const auto& k : config_keys()) {
    std::string cmds;
    for (auto c : k.commands) cmds += (cmds.empty() ? "" : ",") + to_string(c);
    const char* type = k.type == KeyType::Int    ? "int"
                       : k.type == KeyType::Real ? "real"
                       : k.type == KeyType::Bool ? "bool"
                       : k.type == KeyType::Path ? "path"
                                                 : "string";
    std::string name = "  " + k.name + " <" + type + ">";
    if (name.size() < 30) name.resize(30, ' ');
    out += name + " [" + cmds + "] " + k.help + (k.required ? " (required)" : "") + "\n";
  }
  out += "\nexit codes: 0 ok, 2 configuration or invalid input, 3 numeric failure, 4 IO or format error\n";
  return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"spinsurf"};
  app.set_help_flag();
  bool help = false;
  app.add_flag("-h,--help", help);
  app.require_subcommand(0, 1);

  const Command all[] = {C::Simulate, C::Reconstruct, C::Check, C::Catalog, C::Zc};
  std::map<Command, CLI::App*> subs;
  std::map<Command, std::map<std::string, std::pair<CLI::Option*, std::string>>> opts;
  std::string action, name;
  for (Command c : all) {
    CLI::App* sub = app.add_subcommand(to_string(c));
    sub->set_help_flag();
    sub->add_flag("-h,--help", help);
    subs[c] = sub;
    for (const auto& k : config_keys()) {
      if (!applies(k, c)) continue;
      auto& slot = opts[c][k.name];
      slot.first = sub->add_option("--" + k.name, slot.second);
    }
    if (c == C::Catalog) {
      sub->add_option("action", action);
      sub->add_option("name", name);
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ExtrasError&) {
    std::string bad;
    if (!app.remaining().empty()) bad = app.remaining().front();
    for (auto& [c, sub] : subs)
      if (bad.empty() && !sub->remaining().empty()) bad = sub->remaining().front();
    if (bad.rfind("--", 0) == 0) bad = bad.substr(2);
    throw UnknownKey(bad.empty() ? "?" : bad);
  } catch (const CLI::ParseError& e) {
    if (help) throw HelpRequested(help_text());
    throw ConfigError(e.what());
  }
  if (help) throw HelpRequested(help_text());

  RunConfig cfg;
  bool found = false;
  for (Command c : all)
    if (subs[c]->parsed()) {
      cfg.command = c;
      found = true;
    }
  if (!found) throw MissingRequired("command");
  cfg.catalog_action = action;
  cfg.catalog_name = name;

  std::map<std::string, std::string> values;
  auto& mine = opts[cfg.command];
  if (auto it = mine.find("config"); it != mine.end() && it->second.first->count() > 0) {
    for (auto& [k, v] : read_config_file(it->second.second)) {
      const KeySpec* spec = find_key(k);
      if (!spec || !applies(*spec, cfg.command) || k == "config") throw UnknownKey(k);
      values[k] = v;
    }
  }
  for (auto& [k, slot] : mine)
    if (slot.first->count() > 0) values[k] = slot.second;

  std::set<std::string> given;
  for (auto& [k, v] : values) {
    assign(cfg, k, v);
    given.insert(k);
  }
  validate(cfg, given);
  return cfg;
}

} // namespace spinsurf
