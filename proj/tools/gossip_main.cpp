// Command-line entry point: scenario sweeps, figure presets, simulation and
// policy comparison. Exit codes: 0 ok, 2 config error, 3 I/O error,
// 4 numerical non-convergence.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gossip/approx.hpp"
#include "gossip/chain.hpp"
#include "gossip/experiments.hpp"
#include "gossip/montecarlo.hpp"
#include "gossip/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t threads = gossip::default_threads();
};

void run_and_emit(gossip::Scenario scenario, const Globals& g) {
  if (g.seed) scenario.seed = *g.seed;
  const std::string path = g.out.empty() ? scenario.output_path : g.out;
  double seconds = 0.0;
  const gossip::CsvTable table = gossip::run_scenario(scenario, g.threads, &seconds);
  emit(table.to_string(), path);
  std::clog << scenario.name << ": " << table.rows.size() << " rows, "
            << gossip::format_number(seconds) << " s compute\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Source/gossip information dissemination: analytic engine, "
               "simulator and figure sweeps"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed_flag = 0;
  app.add_option("--seed", seed_flag, "RNG seed for Monte-Carlo engines");
  app.add_option("--out", g.out, "Output CSV path (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  // run
  auto* run = app.add_subcommand("run", "Run a scenario config file");
  std::string config_path;
  std::vector<std::string> run_overrides;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--set", run_overrides, "Override, section.key=value");

  // preset
  auto* preset = app.add_subcommand("preset", "Run a named figure preset");
  std::string preset_name;
  std::vector<std::string> preset_overrides;
  bool list_presets = false;
  bool show_config = false;
  preset->add_option("name", preset_name, "Preset name");
  preset->add_option("--set", preset_overrides, "Override, section.key=value");
  preset->add_flag("--list", list_presets, "List presets and exit");
  preset->add_flag("--show", show_config, "Print the preset config and exit");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate of the error");
  gossip::ModelParams sim_params;
  sim_params.n = 20;
  sim_params.m = 5;
  sim_params.p = 0.4;
  sim_params.lambda_s = 10;
  sim_params.lambda = 10;
  std::string sim_mode = "paper-faithful";
  std::string sim_policy = "constant";
  std::string trace_path;
  std::uint64_t cycles = 100'000;
  std::uint64_t burn_in = gossip::kDefaultBurnIn;
  std::size_t replicas = 1;
  simulate->add_option("--n", sim_params.n, "Receivers")->capture_default_str();
  simulate->add_option("--m", sim_params.m, "Source capacity")->capture_default_str();
  simulate->add_option("--p", sim_params.p, "Source flip probability")->capture_default_str();
  simulate->add_option("--lambda-e", sim_params.lambda_e, "Source change rate")->capture_default_str();
  simulate->add_option("--lambda-s", sim_params.lambda_s, "Source transmission rate")->capture_default_str();
  simulate->add_option("--lambda", sim_params.lambda, "Per-node gossip rate")->capture_default_str();
  simulate->add_option("--mode", sim_mode, "paper-faithful | event-driven")->capture_default_str();
  simulate->add_option("--policy", sim_policy, "constant | adaptive")->capture_default_str();
  simulate->add_option("--cycles", cycles, "Retained cycles")->capture_default_str();
  simulate->add_option("--burn-in", burn_in, "Discarded cycles")->capture_default_str();
  simulate->add_option("--replicas", replicas, "Independent replicas")->capture_default_str();
  simulate->add_option("--trace", trace_path, "Per-cycle trace CSV (single replica only)");

  // compare-policy
  auto* compare = app.add_subcommand("compare-policy", "Adaptive vs constant capacity");
  gossip::ModelParams cmp_params;
  cmp_params.n = 60;
  cmp_params.p = 0.2;
  std::vector<double> cmp_lambda{0, 1, 5};
  std::vector<double> cmp_lambda_s{1, 2, 3, 6, 11, 19, 34, 62, 111, 200};
  compare->add_option("--n", cmp_params.n, "Receivers")->capture_default_str();
  compare->add_option("--p", cmp_params.p, "Source flip probability")->capture_default_str();
  compare->add_option("--lambda-e", cmp_params.lambda_e, "Source change rate")->capture_default_str();
  compare->add_option("--lambda", cmp_lambda, "Gossip rates (series)");
  compare->add_option("--lambda-s", cmp_lambda_s, "Source rates (sweep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (app.count("--seed") > 0) g.seed = seed_flag;

  try {
    if (*run) {
      gossip::Scenario scenario = gossip::parse_scenario(read_file(config_path));
      for (const auto& o : run_overrides) gossip::apply_override(scenario, o);
      run_and_emit(std::move(scenario), g);
    } else if (*preset) {
      if (list_presets) {
        for (const auto& p : gossip::figure_presets()) {
          std::cout << p.name << "\t" << p.description << "\n";
        }
        return 0;
      }
      if (preset_name.empty()) throw gossip::ConfigError(0, "preset name required");
      if (show_config) {
        for (const auto& p : gossip::figure_presets()) {
          if (p.name == preset_name) {
            std::cout << p.config;
            return 0;
          }
        }
      }
      gossip::Scenario scenario;
      try {
        scenario = gossip::preset_scenario(preset_name);
      } catch (const std::out_of_range& e) {
        throw gossip::ConfigError(0, e.what());
      }
      for (const auto& o : preset_overrides) gossip::apply_override(scenario, o);
      run_and_emit(std::move(scenario), g);
    } else if (*simulate) {
      gossip::ModelParams params;
      gossip::PolicyTable policy;
      gossip::SimMode mode;
      try {
        params = gossip::validate_params(sim_params);
        mode = gossip::parse_sim_mode(sim_mode);
        if (sim_policy != "constant" && sim_policy != "adaptive") {
          throw std::invalid_argument("policy must be constant or adaptive");
        }
        policy = sim_policy == "adaptive" ? gossip::adaptive_policy_table(params)
                                          : gossip::PolicyTable::constant(params.n, params.m);
        if (!trace_path.empty() && replicas != 1) {
          throw std::invalid_argument("--trace needs --replicas 1");
        }
        if (cycles == 0 || replicas == 0 || cycles < replicas) {
          throw std::invalid_argument("need cycles >= replicas >= 1");
        }
      } catch (const std::invalid_argument& e) {
        throw gossip::ConfigError(0, e.what());
      }
      gossip::McOptions options;
      options.cycles = cycles;
      options.burn_in = burn_in;
      options.seed = g.seed.value_or(1);
      std::ofstream trace;
      if (!trace_path.empty()) {
        trace.open(trace_path, std::ios::binary | std::ios::trunc);
        if (!trace) throw IoError("cannot open '" + trace_path + "' for writing");
        options.trace = &trace;
      }
      const gossip::McEstimate est =
          replicas == 1
              ? gossip::estimate_error(params, policy, mode, options)
              : gossip::estimate_error_replicas(params, policy, mode, options, replicas,
                                                g.threads);
      const double analytic = gossip::analyze(params, policy).delta;
      gossip::CsvTable table;
      table.header = {"mode", "mean_error", "std_error", "cycles", "burn_in", "seed",
                      "analytic_delta"};
      table.rows.push_back({gossip::to_string(mode), gossip::format_number(est.mean_error),
                            gossip::format_number(est.std_error), std::to_string(est.cycles),
                            std::to_string(est.burn_in), std::to_string(est.seed),
                            gossip::format_number(analytic)});
      emit(table.to_string(), g.out);
      if (trace.is_open() && !trace) throw IoError("trace write failed");
    } else if (*compare) {
      gossip::Scenario scenario;
      scenario.name = "compare-policy";
      scenario.base = cmp_params;
      scenario.base.lambda_s = cmp_lambda_s.empty() ? 1.0 : cmp_lambda_s.front();
      scenario.measure = gossip::Measure::kPolicy;
      scenario.sweep_axis = gossip::Axis::kLambdaS;
      scenario.sweep_values = cmp_lambda_s;
      scenario.series_axis = gossip::Axis::kLambda;
      scenario.series_values = cmp_lambda;
      gossip::validate_scenario(scenario);
      run_and_emit(std::move(scenario), g);
    }
  } catch (const gossip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const gossip::InvalidParams& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const gossip::NonConvergence& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
