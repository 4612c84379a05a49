#pragma once

// Scenario sweeps that regenerate the figure data as CSV.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gossip/csv.hpp"
#include "gossip/model.hpp"

namespace gossip {

/// Invalid scenario. `line` is the 1-based config line, 0 when the problem
/// is not tied to a line (e.g. a swept point that violates the model).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parameter a sweep or series varies. The *_per_n axes scale with the
/// current n: m = round(v n) and/or lambda_s = v n. kCorrect sweeps the
/// starting count N and is used by the per-state measures.
enum class Axis { kM, kLambda, kLambdaS, kN, kP, kMPerN, kLambdaSPerN, kBothPerN, kCorrect };

/// What each row reports.
///  kDelta  - long-term average error (analytic or simulated)
///  kAdopt  - exact and approximate adoption probabilities per N
///  kGain   - |delta - delta_ng| vs m with the fitted scaling B
///  kPolicy - adaptive policy vs constant round(E[m*]) policy
///  kMStar  - real and rounded m*(N)
enum class Measure { kDelta, kAdopt, kGain, kPolicy, kMStar };
enum class PolicyMode { kConstant, kAdaptive };
enum class Engine { kAnalytic, kPaperFaithfulMc, kEventDrivenMc };

struct Scenario {
  std::string name = "scenario";
  ModelParams base;
  Measure measure = Measure::kDelta;
  Axis sweep_axis = Axis::kM;
  std::vector<double> sweep_values;
  std::optional<Axis> series_axis;
  std::vector<double> series_values;
  PolicyMode policy_mode = PolicyMode::kConstant;
  Engine engine = Engine::kAnalytic;
  bool baseline = false;  ///< add the no-gossip error column
  bool timing = false;    ///< add a wall-time column (breaks byte-identity)
  std::uint64_t cycles = 100'000;
  std::uint64_t burn_in = 1000;
  std::uint64_t seed = 1;
  std::size_t replicas = 1;
  std::vector<std::size_t> fit_grid;  ///< m grid for the B fit (kGain)
  std::string output_path;
  /// "section.key" -> config line it came from; lets validation errors
  /// point at the offending line.
  std::map<std::string, std::size_t> source_lines;
};

std::string axis_name(Axis axis);
std::string measure_name(Measure measure);
std::string engine_name(Engine engine);
std::string policy_mode_name(PolicyMode mode);

/// Parses the line-oriented config format:
///
///   # comment
///   [model]   n, m, p, lambda_e, lambda_s, lambda, tail_tol, solve_tol
///   [sweep]   axis, values, series_axis, series_values
///   [run]     name, measure, policy, engine, baseline, timing, cycles,
///             burn_in, seed, replicas, fit_grid, output
///
/// Lists are comma separated; an item `a:b` or `a:b:step` expands to an
/// inclusive range. Unknown sections or keys and duplicate keys are errors.
/// The result is validated.
Scenario parse_scenario(const std::string& text);

/// Applies one "section.key=value" override and revalidates.
void apply_override(Scenario& scenario, const std::string& assignment);

/// Checks every scenario invariant, including that each swept point yields
/// valid ModelParams. Sorts sweep and series values ascending. Throws
/// ConfigError.
void validate_scenario(Scenario& scenario);

/// Parameters at one (series value, sweep value) point.
ModelParams point_params(const Scenario& scenario, std::optional<double> series_value,
                         double sweep_value);

/// Runs every swept point on up to `threads` workers. Rows come out in
/// (series, sweep) order regardless of `threads`. Throws NonConvergence from
/// the chain solver. `compute_seconds`, when given, receives the summed
/// per-point wall time.
CsvTable run_scenario(const Scenario& scenario, std::size_t threads,
                      double* compute_seconds = nullptr);

/// Named scenario templates for each figure.
struct Preset {
  std::string name;
  std::string description;
  std::string config;  ///< config text in the parse_scenario format
};

const std::vector<Preset>& figure_presets();

/// Throws std::out_of_range for an unknown name.
Scenario preset_scenario(const std::string& name);

}  // namespace gossip
