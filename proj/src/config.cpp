#include "phasekit/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

#include <fmt/format.h>

namespace phasekit {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(std::string_view field, std::string_view constraint) {
  throw Error(ErrorCode::ValidationError, fmt::format("{}: {}", field, constraint));
}

std::string join(std::string_view parent, std::string_view key) {
  return parent.empty() ? std::string(key) : fmt::format("{}.{}", parent, key);
}

void check_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(where.empty() ? "config" : where, "must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(join(where, key), "unknown key");
    }
  }
}

double real(const json& value, const std::string& field) {
  if (!value.is_number()) fail(field, "must be a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

double real_or(const json& obj, std::string_view key, std::string_view where, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : real(*it, join(where, key));
}

double required_real(const json& obj, std::string_view key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(join(where, key), "is required");
  return real(*it, join(where, key));
}

double positive(double v, const std::string& field) {
  if (!(v > 0.0)) fail(field, "must be > 0");
  return v;
}

unsigned count(const json& value, const std::string& field) {
  if (!value.is_number_integer()) fail(field, "must be an integer");
  const auto v = value.get<long long>();
  if (v < 0) fail(field, "must be >= 0");
  if (v > 1'000'000) fail(field, "must be <= 1000000");
  return static_cast<unsigned>(v);
}

SpacePoint point(const json& obj, std::string_view key, std::string_view where) {
  const std::string field = join(where, key);
  const auto it = obj.find(key);
  if (it == obj.end()) fail(field, "is required");
  if (!it->is_array() || it->size() != 2) fail(field, "must be an array [x, y]");
  return {real((*it)[0], field + "[0]"), real((*it)[1], field + "[1]")};
}

std::string text(const json& value, const std::string& field) {
  if (!value.is_string()) fail(field, "must be a string");
  return value.get<std::string>();
}

ordered_json to_json(SpacePoint p) { return ordered_json::array({p.x, p.y}); }

template <class F>
auto guarded(std::string_view field, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidArgument) throw;
    fail(field, e.what());
  }
}

TwoSlitGeometry parse_geometry(const json& root) {
  const auto it = root.find("geometry");
  if (it == root.end()) fail("geometry", "is required");
  const json& g = *it;
  check_keys(g, "geometry", {"source", "slit_a", "slit_b", "screen_x", "screen_span", "n_samples"});

  TwoSlitGeometry geom;
  geom.source = point(g, "source", "geometry");
  geom.slit_a = point(g, "slit_a", "geometry");
  geom.slit_b = point(g, "slit_b", "geometry");
  geom.screen_x = required_real(g, "screen_x", "geometry");
  const auto span = g.find("screen_span");
  if (span == g.end()) fail("geometry.screen_span", "is required");
  if (!span->is_array() || span->size() != 2) fail("geometry.screen_span", "must be an array [lo, hi]");
  geom.screen_span = {real((*span)[0], "geometry.screen_span[0]"),
                      real((*span)[1], "geometry.screen_span[1]")};
  if (const auto n = g.find("n_samples"); n != g.end()) {
    geom.n_samples = count(*n, "geometry.n_samples");
  }
  if (geom.n_samples < 8) fail("geometry.n_samples", "must be >= 8");
  if (geom.slit_a == geom.slit_b) fail("geometry.slit_b", "must differ from slit_a");
  if (!(geom.screen_x > geom.slit_a.x && geom.screen_x > geom.slit_b.x)) {
    fail("geometry.screen_x", "must exceed both slit abscissas");
  }
  if (!(geom.screen_span.first < geom.screen_span.second)) {
    fail("geometry.screen_span", "must be increasing");
  }
  guarded("geometry", [&] {
    geom.validate();
    return 0;
  });
  return geom;
}

ordered_json geometry_json(const TwoSlitGeometry& g) {
  return ordered_json{{"source", to_json(g.source)},
                      {"slit_a", to_json(g.slit_a)},
                      {"slit_b", to_json(g.slit_b)},
                      {"screen_x", g.screen_x},
                      {"screen_span", ordered_json::array({g.screen_span.first, g.screen_span.second})},
                      {"n_samples", g.n_samples}};
}

IdealSolenoid parse_solenoid(const json& root) {
  const auto it = root.find("solenoid");
  if (it == root.end()) fail("solenoid", "is required");
  check_keys(*it, "solenoid", {"center", "flux", "core_radius"});
  IdealSolenoid s;
  s.center = point(*it, "center", "solenoid");
  s.flux = required_real(*it, "flux", "solenoid");
  s.core_radius = positive(required_real(*it, "core_radius", "solenoid"), "solenoid.core_radius");
  return s;
}

std::pair<Potential1D, ordered_json> parse_potential(const json& root) {
  const auto it = root.find("potential");
  if (it == root.end()) fail("potential", "is required");
  const json& p = *it;
  check_keys(p, "potential", {"harmonic", "linear", "coulomb", "tabulated"});
  if (p.size() != 1) fail("potential", "must name exactly one of harmonic, linear, coulomb, tabulated");

  const std::string kind = p.begin().key();
  const json& body = p.begin().value();
  if (kind == "harmonic") {
    check_keys(body, "potential.harmonic", {"omega"});
    const double omega = positive(real_or(body, "omega", "potential.harmonic", 1.0), "potential.harmonic.omega");
    return {Harmonic{omega}, ordered_json{{"harmonic", {{"omega", omega}}}}};
  }
  if (kind == "linear") {
    check_keys(body, "potential.linear", {"slope"});
    const double slope = positive(real_or(body, "slope", "potential.linear", 1.0), "potential.linear.slope");
    return {LinearWell{slope}, ordered_json{{"linear", {{"slope", slope}}}}};
  }
  if (kind == "coulomb") {
    check_keys(body, "potential.coulomb", {});
    return {CoulombCircular{}, ordered_json{{"coulomb", ordered_json::object()}}};
  }
  check_keys(body, "potential.tabulated", {"x", "v"});
  std::array<std::vector<double>, 2> columns;
  for (std::size_t c = 0; c < 2; ++c) {
    const char* key = c == 0 ? "x" : "v";
    const std::string field = join("potential.tabulated", key);
    const auto col = body.find(key);
    if (col == body.end()) fail(field, "is required");
    if (!col->is_array()) fail(field, "must be an array of numbers");
    for (std::size_t i = 0; i < col->size(); ++i) {
      columns[c].push_back(real((*col)[i], fmt::format("{}[{}]", field, i)));
    }
  }
  auto tab = guarded("potential.tabulated", [&] { return Tabulated(columns[0], columns[1]); });
  ordered_json echo{{"tabulated", {{"x", columns[0]}, {"v", columns[1]}}}};
  return {std::move(tab), std::move(echo)};
}

}  // namespace

std::string_view to_string(Command command) noexcept {
  switch (command) {
    case Command::TwoSlit: return "two-slit";
    case Command::AB: return "ab";
    case Command::Quantize: return "quantize";
    case Command::Hydrogen: return "hydrogen";
    case Command::FitKappa: return "fit-kappa";
  }
  return "";
}

std::optional<Command> command_from_string(std::string_view name) noexcept {
  for (Command c : {Command::TwoSlit, Command::AB, Command::Quantize, Command::Hydrogen, Command::FitKappa}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

RunConfig parse_config(std::string_view text_in) {
  json document;
  try {
    document = json::parse(text_in.begin(), text_in.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text_in.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text_in[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError,
                fmt::format("invalid JSON at line {}, column {}: {}", line, column, e.what()));
  }
  return parse_config(document);
}

RunConfig parse_config(const json& root) {
  if (!root.is_object()) fail("config", "must be a JSON object");
  const auto cmd_it = root.find("command");
  if (cmd_it == root.end()) fail("command", "is required");
  const auto command = command_from_string(text(*cmd_it, "command"));
  if (!command) fail("command", "must be one of two-slit, ab, quantize, hydrogen, fit-kappa");

  switch (*command) {
    case Command::TwoSlit:
      check_keys(root, "", {"command", "kappa", "mass", "charge", "coulomb_constant", "output",
                            "output_path", "units", "momentum", "geometry"});
      break;
    case Command::AB:
      check_keys(root, "", {"command", "kappa", "mass", "charge", "coulomb_constant", "output",
                            "output_path", "units", "momentum", "geometry", "solenoid"});
      break;
    case Command::Quantize:
      check_keys(root, "", {"command", "kappa", "mass", "charge", "coulomb_constant", "output",
                            "output_path", "units", "potential", "rule", "n", "n_range"});
      break;
    case Command::Hydrogen:
      check_keys(root, "", {"command", "kappa", "mass", "charge", "coulomb_constant", "output",
                            "output_path", "units", "n_max"});
      break;
    case Command::FitKappa:
      check_keys(root, "", {"command", "kappa", "mass", "charge", "coulomb_constant", "output",
                            "output_path", "units", "momentum", "geometry", "pattern_csv"});
      break;
  }

  RunConfig cfg;
  cfg.command = *command;
  const double kappa = positive(real_or(root, "kappa", "", 1.0), "kappa");
  const double mass = positive(real_or(root, "mass", "", 1.0), "mass");
  const double charge = real_or(root, "charge", "", 1.0);
  const double coulomb = positive(real_or(root, "coulomb_constant", "", 1.0), "coulomb_constant");
  cfg.params = ModelParams(kappa, mass, charge, coulomb);

  cfg.output = cfg.command == Command::FitKappa ? OutputFormat::Json : OutputFormat::Csv;
  if (const auto it = root.find("output"); it != root.end()) {
    const auto fmt_name = text(*it, "output");
    if (fmt_name == "csv") {
      cfg.output = OutputFormat::Csv;
    } else if (fmt_name == "json") {
      cfg.output = OutputFormat::Json;
    } else {
      fail("output", "must be \"csv\" or \"json\"");
    }
  }
  if (const auto it = root.find("output_path"); it != root.end()) {
    cfg.output_path = text(*it, "output_path");
  }
  if (const auto it = root.find("units"); it != root.end()) {
    check_keys(*it, "units", {"length", "energy", "action"});
    cfg.units.length = positive(real_or(*it, "length", "units", 1.0), "units.length");
    cfg.units.energy = positive(real_or(*it, "energy", "units", 1.0), "units.energy");
    cfg.units.action = positive(real_or(*it, "action", "units", 1.0), "units.action");
  }

  ordered_json& echo = cfg.normalized;
  echo["command"] = std::string(to_string(cfg.command));
  echo["kappa"] = kappa;
  echo["mass"] = mass;
  echo["charge"] = charge;
  echo["coulomb_constant"] = coulomb;

  switch (cfg.command) {
    case Command::TwoSlit:
    case Command::AB:
    case Command::FitKappa: {
      cfg.momentum = positive(required_real(root, "momentum", ""), "momentum");
      cfg.geometry = parse_geometry(root);
      echo["momentum"] = cfg.momentum;
      echo["geometry"] = geometry_json(*cfg.geometry);
      if (cfg.command == Command::AB) {
        const auto solenoid = parse_solenoid(root);
        cfg.ab_geometry.emplace(guarded("solenoid", [&] { return ABGeometry(*cfg.geometry, solenoid); }));
        echo["solenoid"] = ordered_json{{"center", to_json(solenoid.center)},
                                        {"flux", solenoid.flux},
                                        {"core_radius", solenoid.core_radius}};
      }
      if (cfg.command == Command::FitKappa) {
        if (const auto it = root.find("pattern_csv"); it != root.end()) {
          cfg.pattern_csv = text(*it, "pattern_csv");
          echo["pattern_csv"] = *cfg.pattern_csv;
        }
      }
      break;
    }
    case Command::Quantize: {
      auto [potential, potential_echo] = parse_potential(root);
      const bool coulomb_orbit = std::holds_alternative<CoulombCircular>(potential);
      cfg.potential = std::move(potential);
      cfg.rule = coulomb_orbit ? QuantizationRule::Integer : QuantizationRule::HalfInteger;
      if (const auto it = root.find("rule"); it != root.end()) {
        const auto rule = text(*it, "rule");
        if (rule == "half-integer") {
          cfg.rule = QuantizationRule::HalfInteger;
        } else if (rule == "integer") {
          cfg.rule = QuantizationRule::Integer;
        } else {
          fail("rule", "must be \"half-integer\" or \"integer\"");
        }
      }
      const auto n = root.find("n");
      const auto range = root.find("n_range");
      if (n != root.end() && range != root.end()) fail("n_range", "cannot be combined with n");
      const unsigned first = cfg.rule == QuantizationRule::Integer ? 1u : 0u;
      cfg.n_min = cfg.n_max = first;
      if (n != root.end()) cfg.n_min = cfg.n_max = count(*n, "n");
      if (range != root.end()) {
        if (!range->is_array() || range->size() != 2) fail("n_range", "must be an array [first, last]");
        cfg.n_min = count((*range)[0], "n_range[0]");
        cfg.n_max = count((*range)[1], "n_range[1]");
        if (cfg.n_min > cfg.n_max) fail("n_range", "first must not exceed last");
      }
      if (cfg.rule == QuantizationRule::Integer && cfg.n_min == 0) {
        fail(range != root.end() ? "n_range" : "n", "integer rule needs n >= 1");
      }
      echo["potential"] = std::move(potential_echo);
      echo["rule"] = cfg.rule == QuantizationRule::Integer ? "integer" : "half-integer";
      echo["n_range"] = ordered_json::array({cfg.n_min, cfg.n_max});
      break;
    }
    case Command::Hydrogen: {
      cfg.n_max = 1;
      if (const auto it = root.find("n_max"); it != root.end()) cfg.n_max = count(*it, "n_max");
      if (cfg.n_max < 1) fail("n_max", "must be >= 1");
      if (charge == 0.0) fail("charge", "must be nonzero for hydrogen orbits");
      cfg.n_min = 1;
      echo["n_max"] = cfg.n_max;
      break;
    }
  }

  echo["output"] = cfg.output == OutputFormat::Csv ? "csv" : "json";
  if (cfg.output_path) echo["output_path"] = *cfg.output_path;
  echo["units"] = ordered_json{
      {"length", cfg.units.length}, {"energy", cfg.units.energy}, {"action", cfg.units.action}};
  return cfg;
}

}  // namespace phasekit
