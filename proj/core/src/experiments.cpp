#include "gossip/experiments.hpp"

#include <chrono>
#include <cmath>

#include "gossip/approx.hpp"
#include "gossip/chain.hpp"
#include "gossip/cycle_law.hpp"
#include "gossip/montecarlo.hpp"
#include "gossip/parallel.hpp"

namespace gossip {
namespace {

using Row = std::vector<std::string>;

PolicyTable policy_for(const Scenario& s, const ModelParams& params) {
  return s.policy_mode == PolicyMode::kAdaptive ? adaptive_policy_table(params)
                                                : PolicyTable::constant(params.n, params.m);
}

std::string count_str(std::size_t v) { return std::to_string(v); }

std::vector<std::string> value_columns(const Scenario& s) {
  switch (s.measure) {
    case Measure::kDelta: {
      std::vector<std::string> cols;
      if (s.engine == Engine::kAnalytic) {
        cols = {"delta"};
      } else {
        cols = {"mean_error", "std_error", "cycles"};
      }
      if (s.baseline) cols.push_back("delta_ng");
      if (s.policy_mode == PolicyMode::kAdaptive && s.engine == Engine::kAnalytic) {
        cols.push_back("expected_m");
      }
      return cols;
    }
    case Measure::kAdopt:
      return {"pt1_exact", "pt2_exact", "pt2_high_approx", "pt2_high_limit",
              "pt1_low_approx", "pt2_low_approx"};
    case Measure::kGain:
      return {"delta", "delta_ng", "observed_gain", "predicted_gain", "fitted_B",
              "scaled_prediction"};
    case Measure::kPolicy:
      return {"delta_adaptive", "expected_m", "constant_m", "delta_constant"};
    case Measure::kMStar:
      return {"m_star", "m_star_rounded"};
  }
  return {};
}

Row delta_row(const Scenario& s, const ModelParams& params) {
  const PolicyTable policy = policy_for(s, params);
  Row row;
  std::optional<ChainAnalysis> analysis;
  if (s.engine == Engine::kAnalytic) {
    analysis = analyze(params, policy);
    row.push_back(format_number(analysis->delta));
  } else {
    McOptions options;
    options.cycles = s.cycles;
    options.burn_in = s.burn_in;
    options.seed = s.seed;
    const SimMode mode = s.engine == Engine::kPaperFaithfulMc ? SimMode::kPaperFaithful
                                                              : SimMode::kEventDriven;
    // Replicas run sequentially here; sweep points already use the pool.
    const McEstimate est = estimate_error_replicas(params, policy, mode, options, s.replicas, 1);
    row.push_back(format_number(est.mean_error));
    row.push_back(format_number(est.std_error));
    row.push_back(std::to_string(est.cycles));
  }
  if (s.baseline) row.push_back(format_number(no_gossip_baseline(params, policy)));
  if (analysis && s.policy_mode == PolicyMode::kAdaptive) {
    row.push_back(format_number(expected_capacity(analysis->stationary, policy)));
  }
  return row;
}

Row adopt_row(const ModelParams& params, std::size_t correct) {
  Row row(6);
  const std::size_t senders = correct + params.m;
  if (correct >= 1 && senders <= params.n) {
    row[0] = format_number(adopt_prob(params, correct, Prior::kMatches));
  }
  if (senders + 1 <= params.n) {
    row[1] = format_number(adopt_prob(params, correct, Prior::kDiffers));
  }
  if (senders > 0 && senders < params.n) {
    row[2] = format_number(pt2_high_approx(params, correct));
  }
  if (senders <= params.n) {
    row[3] = format_number(pt2_high_limit(params, correct));
    row[4] = format_number(pt_low_approx(params, correct, Prior::kMatches));
    row[5] = format_number(pt_low_approx(params, correct, Prior::kDiffers));
  }
  return row;
}

Row policy_row(const ModelParams& params) {
  const PolicyTable adaptive = adaptive_policy_table(params);
  const ChainAnalysis adaptive_run = analyze(params, adaptive);
  const double mean_m = expected_capacity(adaptive_run.stationary, adaptive);
  const auto constant_m = static_cast<std::size_t>(std::round(mean_m));
  const double constant_delta =
      analyze(params.with_m(constant_m), PolicyTable::constant(params.n, constant_m)).delta;
  return {format_number(adaptive_run.delta), format_number(mean_m),
          std::to_string(constant_m), format_number(constant_delta)};
}

Row mstar_row(const ModelParams& params, std::size_t correct) {
  const CapacityChoice choice = m_star(params, correct);
  return {format_number(choice.real), count_str(choice.rounded)};
}

}  // namespace

CsvTable run_scenario(const Scenario& scenario, std::size_t threads,
                      double* compute_seconds) {
  std::vector<std::optional<double>> series;
  if (scenario.series_values.empty()) series.emplace_back();
  for (double v : scenario.series_values) series.emplace_back(v);
  const std::size_t per_series = scenario.sweep_values.size();
  const std::size_t points = series.size() * per_series;

  // B is one scalar per series, fitted on its own grid.
  std::vector<double> fitted(series.size(), 0.0);
  if (scenario.measure == Measure::kGain) {
    parallel_for(series.size(), threads, [&](std::size_t i) {
      const ModelParams params = point_params(scenario, series[i], scenario.sweep_values.front());
      try {
        fitted[i] = fit_scaling_B(params, scenario.fit_grid).B;
      } catch (const std::domain_error&) {
        fitted[i] = std::nan("");
      }
    });
  }

  std::vector<Row> rows(points);
  std::vector<double> seconds(points, 0.0);
  parallel_for(points, threads, [&](std::size_t idx) {
    const auto& sv = series[idx / per_series];
    const double x = scenario.sweep_values[idx % per_series];
    const ModelParams params = point_params(scenario, sv, x);
    const auto start = std::chrono::steady_clock::now();
    Row values;
    switch (scenario.measure) {
      case Measure::kDelta:
        values = delta_row(scenario, params);
        break;
      case Measure::kAdopt:
        values = adopt_row(params, static_cast<std::size_t>(x));
        break;
      case Measure::kGain: {
        const GainPoint point = gain_point(params, params.m);
        const double b = fitted[idx / per_series];
        values = {format_number(point.delta),          format_number(point.delta_no_gossip),
                  format_number(point.observed_gain),  format_number(point.predicted_gain),
                  format_number(b),                    format_number(b * point.predicted_gain)};
        break;
      }
      case Measure::kPolicy:
        values = policy_row(params);
        break;
      case Measure::kMStar:
        values = mstar_row(params, static_cast<std::size_t>(x));
        break;
    }
    seconds[idx] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Row row;
    if (sv.has_value()) row.push_back(format_number(*sv));
    row.push_back(format_number(x));
    row.insert(row.end(), values.begin(), values.end());
    if (scenario.timing) row.push_back(format_number(seconds[idx]));
    rows[idx] = std::move(row);
  });

  CsvTable table;
  if (scenario.series_axis.has_value()) table.header.push_back(axis_name(*scenario.series_axis));
  table.header.push_back(axis_name(scenario.sweep_axis));
  for (auto& c : value_columns(scenario)) table.header.push_back(std::move(c));
  if (scenario.timing) table.header.push_back("wall_time_s");
  table.rows = std::move(rows);

  if (compute_seconds != nullptr) {
    *compute_seconds = 0.0;
    for (double t : seconds) *compute_seconds += t;
  }
  return table;
}

}  // namespace gossip
