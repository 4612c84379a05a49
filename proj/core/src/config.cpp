#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "gossip/chain.hpp"
#include "gossip/experiments.hpp"

namespace gossip {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, std::size_t line) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw ConfigError(line, "expected a number, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& text, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError(line, "expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, std::size_t line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError(line, "expected true or false, got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(line, "empty list item");
    if (item.find(':') == std::string::npos) {
      out.push_back(parse_double(item, line));
      continue;
    }
    std::vector<std::string> parts;
    std::stringstream range(item);
    std::string part;
    while (std::getline(range, part, ':')) parts.push_back(trim(part));
    if (parts.size() < 2 || parts.size() > 3) {
      throw ConfigError(line, "range must be start:stop or start:stop:step");
    }
    const double start = parse_double(parts[0], line);
    const double stop = parse_double(parts[1], line);
    const double step = parts.size() == 3 ? parse_double(parts[2], line) : 1.0;
    if (!(step > 0.0) || stop < start) throw ConfigError(line, "invalid range '" + item + "'");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw ConfigError(line, "range too long");
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(start + static_cast<double>(i) * step);
    }
  }
  return out;
}

Axis parse_axis(const std::string& text, std::size_t line) {
  static const std::map<std::string, Axis> names{
      {"m", Axis::kM},
      {"lambda", Axis::kLambda},
      {"lambda_s", Axis::kLambdaS},
      {"n", Axis::kN},
      {"p", Axis::kP},
      {"m_per_n", Axis::kMPerN},
      {"lambda_s_per_n", Axis::kLambdaSPerN},
      {"both_per_n", Axis::kBothPerN},
      {"N", Axis::kCorrect},
  };
  const auto it = names.find(text);
  if (it == names.end()) throw ConfigError(line, "unknown axis '" + text + "'");
  return it->second;
}

std::size_t as_count(double value, std::size_t line, const char* what) {
  if (value < 0.0 || value != std::floor(value)) {
    throw ConfigError(line, std::string(what) + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

void assign(Scenario& s, const std::string& section, const std::string& key,
            const std::string& value, std::size_t line) {
  if (section == "model") {
    auto& b = s.base;
    if (key == "n") b.n = parse_unsigned(value, line);
    else if (key == "m") b.m = parse_unsigned(value, line);
    else if (key == "p") b.p = parse_double(value, line);
    else if (key == "lambda_e") b.lambda_e = parse_double(value, line);
    else if (key == "lambda_s") b.lambda_s = parse_double(value, line);
    else if (key == "lambda") b.lambda = parse_double(value, line);
    else if (key == "tail_tol") b.tail_tol = parse_double(value, line);
    else if (key == "solve_tol") b.solve_tol = parse_double(value, line);
    else throw ConfigError(line, "unknown key '" + key + "' in [model]");
  } else if (section == "sweep") {
    if (key == "axis") s.sweep_axis = parse_axis(value, line);
    else if (key == "values") s.sweep_values = parse_list(value, line);
    else if (key == "series_axis") s.series_axis = parse_axis(value, line);
    else if (key == "series_values") s.series_values = parse_list(value, line);
    else throw ConfigError(line, "unknown key '" + key + "' in [sweep]");
  } else if (section == "run") {
    if (key == "name") {
      s.name = value;
    } else if (key == "measure") {
      static const std::map<std::string, Measure> names{
          {"delta", Measure::kDelta}, {"adopt", Measure::kAdopt},
          {"gain", Measure::kGain},   {"policy", Measure::kPolicy},
          {"mstar", Measure::kMStar}};
      const auto it = names.find(value);
      if (it == names.end()) throw ConfigError(line, "unknown measure '" + value + "'");
      s.measure = it->second;
    } else if (key == "policy") {
      if (value == "constant") s.policy_mode = PolicyMode::kConstant;
      else if (value == "adaptive") s.policy_mode = PolicyMode::kAdaptive;
      else throw ConfigError(line, "policy must be constant or adaptive");
    } else if (key == "engine") {
      if (value == "analytic") s.engine = Engine::kAnalytic;
      else if (value == "paper-faithful-mc") s.engine = Engine::kPaperFaithfulMc;
      else if (value == "event-driven-mc") s.engine = Engine::kEventDrivenMc;
      else throw ConfigError(line, "unknown engine '" + value + "'");
    } else if (key == "baseline") {
      s.baseline = parse_bool(value, line);
    } else if (key == "timing") {
      s.timing = parse_bool(value, line);
    } else if (key == "cycles") {
      s.cycles = parse_unsigned(value, line);
    } else if (key == "burn_in") {
      s.burn_in = parse_unsigned(value, line);
    } else if (key == "seed") {
      s.seed = parse_unsigned(value, line);
    } else if (key == "replicas") {
      s.replicas = parse_unsigned(value, line);
    } else if (key == "fit_grid") {
      s.fit_grid.clear();
      for (double v : parse_list(value, line)) s.fit_grid.push_back(as_count(v, line, "fit_grid"));
    } else if (key == "output") {
      s.output_path = value;
    } else {
      throw ConfigError(line, "unknown key '" + key + "' in [run]");
    }
  } else {
    throw ConfigError(line, "unknown section [" + section + "]");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError(line, "malformed section header");
      section = trim(content.substr(1, content.size() - 2));
      if (section != "model" && section != "sweep" && section != "run") {
        throw ConfigError(line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key = value");
    if (section.empty()) throw ConfigError(line, "key outside of a section");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "empty key");
    if (!seen.insert(section + "." + key).second) {
      throw ConfigError(line, "duplicate key '" + key + "' in [" + section + "]");
    }
    assign(s, section, key, value, line);
    s.source_lines[section + "." + key] = line;
  }
  validate_scenario(s);
  return s;
}

void apply_override(Scenario& scenario, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError(0, "override must look like section.key=value, got '" + assignment + "'");
  }
  try {
    assign(scenario, trim(assignment.substr(0, dot)),
           trim(assignment.substr(dot + 1, eq - dot - 1)), trim(assignment.substr(eq + 1)), 0);
  } catch (const ConfigError& e) {
    throw ConfigError(0, "override '" + assignment + "': " + e.what());
  }
  validate_scenario(scenario);
}

namespace {

std::size_t line_of(const Scenario& s, const std::string& key) {
  const auto it = s.source_lines.find(key);
  return it == s.source_lines.end() ? 0 : it->second;
}

}  // namespace

void validate_scenario(Scenario& s) {
  if (s.sweep_values.empty()) throw ConfigError(line_of(s, "sweep.values"), "sweep values must be nonempty");
  if (s.series_axis.has_value() && s.series_values.empty()) {
    throw ConfigError(line_of(s, "sweep.series_axis"), "series_axis set but series_values empty");
  }
  if (!s.series_axis.has_value() && !s.series_values.empty()) {
    throw ConfigError(line_of(s, "sweep.series_values"), "series_values set without series_axis");
  }
  if (s.series_axis.has_value() && *s.series_axis == s.sweep_axis) {
    throw ConfigError(line_of(s, "sweep.series_axis"), "series_axis must differ from the sweep axis");
  }
  const bool per_state = s.measure == Measure::kAdopt || s.measure == Measure::kMStar;
  if (per_state != (s.sweep_axis == Axis::kCorrect)) {
    throw ConfigError(line_of(s, "sweep.axis"), "measures adopt and mstar sweep axis N; other measures cannot");
  }
  if (s.series_axis == Axis::kCorrect) throw ConfigError(line_of(s, "sweep.series_axis"), "N cannot be a series axis");
  if (s.engine != Engine::kAnalytic && s.measure != Measure::kDelta) {
    throw ConfigError(line_of(s, "run.engine"), "Monte-Carlo engines support only measure = delta");
  }
  if (s.measure == Measure::kGain && s.sweep_axis != Axis::kM) {
    throw ConfigError(line_of(s, "sweep.axis"), "measure gain sweeps axis m");
  }
  if (s.engine != Engine::kAnalytic && s.cycles == 0) throw ConfigError(line_of(s, "run.cycles"), "cycles must be >= 1");
  if (s.replicas == 0) throw ConfigError(line_of(s, "run.replicas"), "replicas must be >= 1");
  if (s.engine != Engine::kAnalytic && s.cycles < s.replicas) {
    throw ConfigError(line_of(s, "run.replicas"), "cycles must be >= replicas");
  }
  if (s.measure == Measure::kGain && s.fit_grid.empty()) {
    for (std::size_t m = 2; m <= 20; ++m) s.fit_grid.push_back(m);
  }

  std::sort(s.sweep_values.begin(), s.sweep_values.end());
  s.sweep_values.erase(std::unique(s.sweep_values.begin(), s.sweep_values.end()),
                       s.sweep_values.end());
  std::sort(s.series_values.begin(), s.series_values.end());
  s.series_values.erase(std::unique(s.series_values.begin(), s.series_values.end()),
                        s.series_values.end());

  std::vector<std::optional<double>> series;
  if (s.series_values.empty()) series.emplace_back();
  for (double v : s.series_values) series.emplace_back(v);
  for (const auto& sv : series) {
    for (double x : s.sweep_values) {
      ModelParams params;
      try {
        params = validate_params(point_params(s, sv, x));
      } catch (const std::exception& e) {
        // Blame the [model] key the message names when it is set there and
        // neither axis overrides it; otherwise the sweep values.
        const std::string what = e.what();
        const std::string name = what.substr(0, what.find(' '));
        const bool swept = axis_name(s.sweep_axis) == name ||
                           (s.series_axis && axis_name(*s.series_axis) == name);
        std::size_t line = line_of(s, "model." + name);
        if (line == 0 || swept) line = line_of(s, "sweep.values");
        throw ConfigError(line, "swept point " + axis_name(s.sweep_axis) + "=" +
                                    format_number(x) + ": " + what);
      }
      if (s.sweep_axis == Axis::kCorrect) {
        const std::size_t correct = as_count(x, 0, "N");
        if (correct > params.n) throw ConfigError(line_of(s, "sweep.values"), "swept N exceeds n");
      }
    }
  }
  if (s.measure == Measure::kGain) {
    for (std::size_t m : s.fit_grid) {
      if (m > s.base.n) throw ConfigError(line_of(s, "run.fit_grid"), "fit_grid entry exceeds n");
    }
  }
}

ModelParams point_params(const Scenario& scenario, std::optional<double> series_value,
                         double sweep_value) {
  ModelParams params = scenario.base;
  std::vector<std::pair<Axis, double>> settings;
  if (scenario.series_axis.has_value() && series_value.has_value()) {
    settings.emplace_back(*scenario.series_axis, *series_value);
  }
  settings.emplace_back(scenario.sweep_axis, sweep_value);

  // n first, so the per-n axes see the final network size.
  for (const auto& [axis, v] : settings) {
    if (axis == Axis::kN) params.n = as_count(v, 0, "n");
  }
  for (const auto& [axis, v] : settings) {
    switch (axis) {
      case Axis::kM: params.m = as_count(v, 0, "m"); break;
      case Axis::kLambda: params.lambda = v; break;
      case Axis::kLambdaS: params.lambda_s = v; break;
      case Axis::kP: params.p = v; break;
      default: break;
    }
  }
  const double n = static_cast<double>(params.n);
  for (const auto& [axis, v] : settings) {
    if (axis == Axis::kMPerN || axis == Axis::kBothPerN) {
      params.m = static_cast<std::size_t>(std::max(0.0, std::round(v * n)));
    }
    if (axis == Axis::kLambdaSPerN || axis == Axis::kBothPerN) params.lambda_s = v * n;
  }
  return params;
}

std::string axis_name(Axis axis) {
  switch (axis) {
    case Axis::kM: return "m";
    case Axis::kLambda: return "lambda";
    case Axis::kLambdaS: return "lambda_s";
    case Axis::kN: return "n";
    case Axis::kP: return "p";
    case Axis::kMPerN: return "m_per_n";
    case Axis::kLambdaSPerN: return "lambda_s_per_n";
    case Axis::kBothPerN: return "both_per_n";
    case Axis::kCorrect: return "N";
  }
  return "?";
}

std::string measure_name(Measure measure) {
  switch (measure) {
    case Measure::kDelta: return "delta";
    case Measure::kAdopt: return "adopt";
    case Measure::kGain: return "gain";
    case Measure::kPolicy: return "policy";
    case Measure::kMStar: return "mstar";
  }
  return "?";
}

std::string engine_name(Engine engine) {
  switch (engine) {
    case Engine::kAnalytic: return "analytic";
    case Engine::kPaperFaithfulMc: return "paper-faithful-mc";
    case Engine::kEventDrivenMc: return "event-driven-mc";
  }
  return "?";
}

std::string policy_mode_name(PolicyMode mode) {
  return mode == PolicyMode::kConstant ? "constant" : "adaptive";
}

}  // namespace gossip
