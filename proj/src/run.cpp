#include "phasekit/run.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "phasekit/quantization.hpp"

namespace phasekit {

namespace {

using nlohmann::ordered_json;

std::string real17(double v) { return fmt::format("{:.17g}", v); }

std::string render_pattern(const RunConfig& cfg, const FringePattern& patt) {
  const double length = cfg.units.length;
  if (cfg.output == OutputFormat::Csv) {
    std::string out = "screen_coord,intensity\n";
    for (std::size_t i = 0; i < patt.screen_coords.size(); ++i) {
      out += fmt::format("{},{}\n", real17(length * patt.screen_coords[i]), real17(patt.intensities[i]));
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < patt.screen_coords.size(); ++i) {
    rows.push_back({{"screen_coord", length * patt.screen_coords[i]}, {"intensity", patt.intensities[i]}});
  }
  return ordered_json{{"config", cfg.normalized}, {"results", std::move(rows)}}.dump(2) + "\n";
}

std::string render_levels(const RunConfig& cfg) {
  std::vector<EnergyLevel> levels;
  for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
    levels.push_back(quantize_level({*cfg.potential, cfg.rule, n}, cfg.params));
  }
  const auto& u = cfg.units;
  if (cfg.output == OutputFormat::Csv) {
    std::string out = "n,energy,action\n";
    for (const auto& l : levels) {
      out += fmt::format("{},{},{}\n", l.n, real17(u.energy * l.energy), real17(u.action * l.action));
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& l : levels) {
    rows.push_back({{"n", l.n}, {"energy", u.energy * l.energy}, {"action", u.action * l.action}});
  }
  return ordered_json{{"config", cfg.normalized}, {"results", std::move(rows)}}.dump(2) + "\n";
}

std::string render_hydrogen(const RunConfig& cfg) {
  const auto levels = hydrogen_circular_levels(cfg.params, cfg.n_max);
  const auto& u = cfg.units;
  if (cfg.output == OutputFormat::Csv) {
    std::string out = "n,energy,radius\n";
    for (const auto& l : levels) {
      out += fmt::format("{},{},{}\n", l.n, real17(u.energy * l.energy), real17(u.length * l.radius));
    }
    return out;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& l : levels) {
    rows.push_back({{"n", l.n}, {"energy", u.energy * l.energy}, {"radius", u.length * l.radius}});
  }
  return ordered_json{{"config", cfg.normalized}, {"results", std::move(rows)}}.dump(2) + "\n";
}

std::string render_fit(const RunConfig& cfg) {
  FringePattern patt;
  if (cfg.pattern_csv) {
    std::ifstream in(*cfg.pattern_csv);
    if (!in) {
      throw Error(ErrorCode::ValidationError,
                  fmt::format("pattern_csv: cannot open '{}'", *cfg.pattern_csv));
    }
    patt = read_pattern_csv(in);
  } else {
    patt = pattern(*cfg.geometry, cfg.params, cfg.momentum);
  }
  const auto estimate = extract_kappa(patt, cfg.momentum, *cfg.geometry);
  const double kappa_hat = cfg.units.action * estimate.kappa_hat;
  const double spacing = cfg.units.length * estimate.fringe_spacing;
  if (cfg.output == OutputFormat::Csv) {
    return fmt::format("kappa_hat,fringe_spacing,peaks_used\n{},{},{}\n", real17(kappa_hat),
                       real17(spacing), estimate.peaks_used);
  }
  return ordered_json{{"kappa_hat", kappa_hat},
                      {"fringe_spacing", spacing},
                      {"peaks_used", estimate.peaks_used},
                      {"config", cfg.normalized}}
             .dump(2) +
         "\n";
}

int exit_code_for(ErrorCode code) { return is_numerical(code) ? kExitNumerical : kExitValidation; }

}  // namespace

std::string render(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::TwoSlit:
      return render_pattern(cfg, pattern(*cfg.geometry, cfg.params, cfg.momentum));
    case Command::AB:
      return render_pattern(cfg, ab_pattern(*cfg.ab_geometry, cfg.params, cfg.momentum));
    case Command::Quantize:
      return render_levels(cfg);
    case Command::Hydrogen:
      return render_hydrogen(cfg);
    case Command::FitKappa:
      return render_fit(cfg);
  }
  return {};
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const std::string artifact = render(cfg);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
      if (!(file << artifact)) {
        err << "error: cannot write output file '" << *cfg.output_path << "'\n";
        return kExitValidation;
      }
    } else {
      out << artifact;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

FringePattern read_pattern_csv(std::istream& in) {
  const auto bad = [](std::size_t line, std::string_view why) {
    return Error(ErrorCode::ValidationError, fmt::format("pattern_csv line {}: {}", line, why));
  };
  const auto parse = [&](std::string_view field, std::size_t line) {
    double v = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw bad(line, "expected a finite number");
    return v;
  };

  FringePattern patt;
  std::string row;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    if (!header) {
      if (row != "screen_coord,intensity") throw bad(line, "expected header 'screen_coord,intensity'");
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw bad(line, "expected two comma-separated values");
    }
    const std::string_view text(row);
    patt.screen_coords.push_back(parse(text.substr(0, comma), line));
    patt.intensities.push_back(parse(text.substr(comma + 1), line));
  }
  if (!header) throw bad(line, "missing header");
  try {
    patt.validate(false);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, fmt::format("pattern_csv: {}", e.what()));
  }
  return patt;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path-phase interference and action quantization toolkit", "phasekit"};
  std::string command;
  std::string config_path;
  std::string inline_json;
  std::string out_path;
  std::string format;
  app.add_option("command", command, "two-slit | ab | quantize | hydrogen | fit-kappa")
      ->required()
      ->check(CLI::IsMember({"two-slit", "ab", "quantize", "hydrogen", "fit-kappa"}));
  auto* config_opt = app.add_option("--config", config_path, "JSON configuration file");
  auto* inline_opt = app.add_option("--inline", inline_json, "JSON configuration text");
  config_opt->excludes(inline_opt);
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    std::string text;
    if (!config_opt->empty()) {
      std::ifstream file(config_path);
      if (!file) throw Error(ErrorCode::ValidationError, fmt::format("cannot read config '{}'", config_path));
      text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    } else if (!inline_opt->empty()) {
      text = inline_json;
    } else {
      throw Error(ErrorCode::ValidationError, "one of --config or --inline is required");
    }

    nlohmann::json document;
    try {
      document = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
      parse_config(std::string_view(text));  // rethrows with line and column
    }
    if (document.is_object()) {
      if (const auto it = document.find("command"); it == document.end()) {
        document["command"] = command;
      } else if (!it->is_string() || it->get<std::string>() != command) {
        throw Error(ErrorCode::ValidationError,
                    fmt::format("command: config says {} but command line says {}", it->dump(), command));
      }
    }
    RunConfig cfg = parse_config(document);
    if (!format.empty()) {
      cfg.output = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
      cfg.normalized["output"] = format;
    }
    if (!out_path.empty()) {
      cfg.output_path = out_path;
      cfg.normalized["output_path"] = out_path;
    }
    return run(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace phasekit
