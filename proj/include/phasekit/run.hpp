#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "phasekit/config.hpp"

namespace phasekit {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
};

/// Runs the configured command and returns the rendered artifact
/// (CSV or JSON text). Throws Error on failure.
std::string render(const RunConfig& config);

/// Renders and writes to config.output_path, or to `out` when unset.
/// Failures become a single line on `err` and a nonzero exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Reads a `screen_coord,intensity` table.
FringePattern read_pattern_csv(std::istream& in);

/// Full command-line entry point: `phasekit <command> --config <path> |
/// --inline <json> [--out <path>] [--format csv|json]`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace phasekit
