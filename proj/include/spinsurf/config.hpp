#pragma once

#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinsurf/field.hpp"

namespace spinsurf {

enum class Command { Simulate, Reconstruct, Check, Catalog, Zc };

std::string to_string(Command c);

enum class KeyType { Int, Real, Bool, String, Path };

struct KeySpec {
  std::string name;
  KeyType type;
  std::vector<Command> commands;
  std::string help;
  bool required = false;
};

/// Every accepted key. Anything else is rejected with UnknownKey.
const std::vector<KeySpec>& config_keys();

/// Model parameter keys (a subset of config_keys()).
const std::vector<std::string>& param_keys();

struct RunConfig {
  Command command = Command::Catalog;
  std::string model;

  struct {
    std::optional<int> nx, ny;
    std::optional<double> dx, dy;
    std::optional<Boundary> boundary;
  } grid;

  struct {
    std::optional<double> dt;
    std::optional<std::size_t> steps;
    std::size_t snapshot_every = 1;
    bool renormalize = true;
    double dt_safety = 0.2;
    bool override_stability = false;
  } evolve;

  struct {
    std::string input, phi, u_input, output, mesh, report;
    bool normals = false;
  } io;

  std::string init = "random";
  std::uint64_t seed = 1;
  int modes = 2;
  bool antisymmetrize = false;
  bool solve_d = false;
  std::map<std::string, double> params;

  std::string catalog_action; ///< list | show
  std::string catalog_name;
};

/// Thrown for -h/--help; carries the text to print.
class HelpRequested : public std::exception {
public:
  explicit HelpRequested(std::string text) : text(std::move(text)) {}
  const char* what() const noexcept override { return text.c_str(); }
  std::string text;
};

/// `key = value` lines, `#` starts a comment. Throws IoError when the file
/// cannot be read and ConfigError on a malformed line.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Parses `<command> [--key value ...] [--config file]` (program name not
/// included). Flags override file values. Throws UnknownKey, TypeError,
/// MissingRequired, UnknownModel, HelpRequested.
RunConfig parse_config(const std::vector<std::string>& args);

std::string help_text();

} // namespace spinsurf
