#pragma once

// Run configuration for the phasekit command-line tool.
//
// A configuration is a JSON object. Common keys: command, kappa, mass,
// charge, coulomb_constant, output ("csv" | "json"), output_path, units.
// Command-specific keys:
//
//   two-slit   momentum, geometry
//   ab         momentum, geometry, solenoid
//   quantize   potential, rule, n | n_range
//   hydrogen   n_max
//   fit-kappa  momentum, geometry, pattern_csv (optional)
//
// Unknown keys, keys belonging to another command and non-finite numbers
// are rejected.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "phasekit/core_model.hpp"
#include "phasekit/interference.hpp"

namespace phasekit {

enum class Command { TwoSlit, AB, Quantize, Hydrogen, FitKappa };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command command) noexcept;
std::optional<Command> command_from_string(std::string_view name) noexcept;

/// Multipliers applied to emitted values by dimension. Computation itself
/// is always in internal units.
struct UnitScale {
  double length = 1.0;
  double energy = 1.0;
  double action = 1.0;
};

struct RunConfig {
  Command command = Command::TwoSlit;
  ModelParams params;
  double momentum = 1.0;
  std::optional<TwoSlitGeometry> geometry;
  std::optional<ABGeometry> ab_geometry;
  std::optional<Potential1D> potential;
  QuantizationRule rule = QuantizationRule::HalfInteger;
  unsigned n_min = 0;
  unsigned n_max = 0;
  std::optional<std::string> pattern_csv;
  OutputFormat output = OutputFormat::Csv;
  std::optional<std::string> output_path;
  UnitScale units;

  /// The configuration with every default filled in, as echoed in JSON output.
  nlohmann::ordered_json normalized;
};

/// Parses and validates a JSON document. Throws Error with ParseError
/// (including line and column) or ValidationError (naming the field).
RunConfig parse_config(std::string_view text);
RunConfig parse_config(const nlohmann::json& document);

}  // namespace phasekit
