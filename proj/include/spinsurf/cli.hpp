#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinsurf/config.hpp"

namespace spinsurf {

/// Exit codes: 0 ok, 2 configuration or invalid input, 3 numeric failure,
/// 4 IO or file format error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration; throws on failure.
void run_command(const RunConfig& cfg, std::ostream& out);

} // namespace spinsurf
