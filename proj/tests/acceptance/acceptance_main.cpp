// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion (with indented
// detail lines before it) and exits nonzero if any selected criterion fails.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gossip/approx.hpp"
#include "gossip/chain.hpp"
#include "gossip/cycle_law.hpp"
#include "gossip/experiments.hpp"
#include "gossip/montecarlo.hpp"
#include "gossip/parallel.hpp"
#include "support/oracles.hpp"

namespace {

using namespace gossip;

class Report {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    std::cout << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
  }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

std::string fmt(double v) { return format_number(v); }

ModelParams make(std::size_t n, std::size_t m, double p, double lambda_s, double lambda) {
  ModelParams out;
  out.n = n;
  out.m = m;
  out.p = p;
  out.lambda_e = 1.0;
  out.lambda_s = lambda_s;
  out.lambda = lambda;
  return out;
}

double delta_at(const ModelParams& params) {
  return analyze(params, PolicyTable::constant(params.n, params.m)).delta;
}

template <typename F>
std::vector<double> sweep(std::size_t count, F&& f) {
  std::vector<double> out(count);
  parallel_for(count, default_threads(), [&](std::size_t i) { out[i] = f(i); });
  return out;
}

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

// 1. Chain soundness.
void chain_soundness(Report& r) {
  for (std::size_t n : {4u, 20u, 60u}) {
    for (double lambda : {0.0, 10.0}) {
      const std::size_t m = std::max<std::size_t>(1, n / 6);
      const auto params = make(n, m, 0.4, 10.0, lambda);
      const ChainAnalysis a = analyze(params, PolicyTable::constant(n, m));
      double row_err = 0.0;
      for (Eigen::Index i = 0; i < a.chain.entries.rows(); ++i)
        row_err = std::max(row_err, std::abs(a.chain.entries.row(i).sum() - 1.0));
      double sym = 0.0;
      for (std::size_t j = 0; j <= n; ++j)
        sym = std::max(sym, std::abs(a.stationary.pi[static_cast<Eigen::Index>(j)] -
                                     a.stationary.pi[static_cast<Eigen::Index>(n + 1 + j)]));
      const std::string at = "n=" + std::to_string(n) + " lambda=" + fmt(lambda) + ": ";
      r.check(row_err <= 1e-11, at + "max |row sum - 1| = " + fmt(row_err) + " <= 1e-11");
      r.check(a.stationary.residual <= 1e-12,
              at + "residual = " + fmt(a.stationary.residual) + " <= 1e-12 (" +
                  to_string(a.stationary.method) + ")");
      r.check(sym <= 1e-10, at + "max |pi0j - pi1j| = " + fmt(sym) + " <= 1e-10");
    }
  }
}

// 2. Small-scale oracle equivalence.
void oracle_equivalence(Report& r) {
  double worst_adopt = 0.0, worst_end = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      for (double lambda_s : {0.5, 3.0}) {
        const auto params = make(n, m, 0.3, lambda_s, 0.01);
        for (std::size_t N = 0; N <= n; ++N) {
          const Pmf law = ndp_given_n_pmf(params, N);
          const auto expected = oracle::end_law_by_enumeration(params, N);
          for (std::size_t k = 0; k <= n; ++k)
            worst_end = std::max(worst_end, std::abs(law(static_cast<long>(k)) - expected[k]));
          if (N + m >= n) continue;
          std::vector<bool> correct(n, false);
          for (std::size_t j = 0; j < N + m; ++j) correct[j] = true;
          worst_adopt = std::max(worst_adopt,
                                 std::abs(adopt_prob(params, N, Prior::kDiffers) -
                                          oracle::adoption_by_enumeration(params, correct, n - 1)));
          if (N >= 1) {
            worst_adopt = std::max(worst_adopt,
                                   std::abs(adopt_prob(params, N, Prior::kMatches) -
                                            oracle::adoption_by_enumeration(params, correct, 0)));
          }
        }
      }
    }
  }
  r.check(worst_adopt <= 1e-10,
          "adoption probabilities vs sequence enumeration, n<=6: max err " + fmt(worst_adopt));
  r.check(worst_end <= 1e-10, "end-of-cycle laws vs exhaustive enumeration, n<=6: max err " +
                                  fmt(worst_end));

  const auto params = make(6, 2, 0.3, 1.0, 1.0);
  const PolicyTable policy = PolicyTable::constant(6, 2);
  const double delta = analyze(params, policy).delta;
  McOptions opt;
  opt.cycles = 1'000'000;
  opt.seed = 20240601;
  const McEstimate e = estimate_error(params, policy, SimMode::kPaperFaithful, opt);
  const double z = std::abs(e.mean_error - delta) / e.std_error;
  r.check(z <= 3.0, "n=6 m=2: chain delta " + fmt(delta) + " vs simulated " +
                        fmt(e.mean_error) + " (se " + fmt(e.std_error) + ", " + fmt(z) +
                        " se apart) within 3 se");
}

// 3. Error asymptotes at high source rate.
void source_rate_asymptotes(Report& r) {
  const std::pair<std::size_t, double> targets[] = {{5, 0.348}, {10, 0.21}, {15, 0.144}};
  for (const auto& [m, target] : targets) {
    const double d = delta_at(make(60, m, 0.2, 400.0, 5.0));
    r.check(std::abs(d - target) <= 0.01,
            "m=" + std::to_string(m) + ": delta " + fmt(d) + " vs " + fmt(target) + " +- 0.01");
  }
}

// 4. Error vs capacity structure.
void capacity_structure(Report& r) {
  const double lambdas[] = {0.0, 10.0, 20.0};
  std::vector<std::vector<double>> curves;
  for (double lambda : lambdas) {
    curves.push_back(sweep(60, [&](std::size_t i) {
      return delta_at(make(60, i + 1, 0.4, 10.0, lambda));
    }));
  }
  const std::size_t best10 = argmin(curves[1]) + 1;
  const std::size_t best0 = argmin(curves[0]) + 1;
  r.check(best10 >= 23 && best10 <= 27,
          "lambda=10: argmin m = " + std::to_string(best10) + " (target 25 +- 2)");
  r.check(best0 >= 53 && best0 <= 57,
          "lambda=0: argmin m = " + std::to_string(best0) + " (target 55 +- 2); delta(55) = " +
              fmt(curves[0][54]) + ", delta(" + std::to_string(best0) +
              ") = " + fmt(curves[0][best0 - 1]));
  double spread = 0.0;
  for (std::size_t m = 40; m <= 60; ++m) {
    const double lo = std::min({curves[0][m - 1], curves[1][m - 1], curves[2][m - 1]});
    const double hi = std::max({curves[0][m - 1], curves[1][m - 1], curves[2][m - 1]});
    spread = std::max(spread, hi - lo);
  }
  r.check(spread <= 2e-3, "m>=40: max spread across lambda in {0,10,20} = " + fmt(spread) +
                              " <= 2e-3");
  bool ordered = true;
  for (std::size_t m = 1; m <= 5; ++m)
    ordered = ordered && curves[0][m - 1] < curves[1][m - 1] && curves[1][m - 1] < curves[2][m - 1];
  r.check(ordered, "m<=5: delta(lambda=0) < delta(lambda=10) < delta(lambda=20)");
}

// 5. Optimal gossip rate per capacity.
void gossip_rate_optima(Report& r) {
  const std::pair<std::size_t, std::vector<std::size_t>> targets[] = {
      {5, {1}}, {10, {3}}, {15, {6, 7}}};
  for (const auto& [m, accepted] : targets) {
    const auto curve = sweep(41, [&, m = m](std::size_t i) {
      return delta_at(make(60, m, 0.4, 10.0, static_cast<double>(i)));
    });
    const std::size_t best = argmin(curve);
    std::string wanted;
    for (std::size_t a : accepted) wanted += (wanted.empty() ? "" : " or ") + std::to_string(a);
    std::string near;
    for (std::size_t l = best > 2 ? best - 2 : 0; l <= std::min<std::size_t>(40, best + 3); ++l)
      near += " " + std::to_string(l) + ":" + fmt(curve[l]);
    r.check(std::find(accepted.begin(), accepted.end(), best) != accepted.end(),
            "m=" + std::to_string(m) + ": argmin lambda = " + std::to_string(best) +
                " (target " + wanted + ");" + near);
  }
}

// 6. Step limit of the incorrect-prior adoption probability at high rate.
void high_rate_step(Report& r) {
  const auto params = make(200, 20, 0.2, 2.0, 400.0);
  double low_max = 0.0, high_min = 1.0;
  std::size_t low_at = 0, high_at = 0;
  for (std::size_t N = 0; N <= 70; ++N) {
    const double v = adopt_prob(params, N, Prior::kDiffers);
    if (v > low_max) low_max = v, low_at = N;
  }
  for (std::size_t N = 90; N + 20 < 200; ++N) {
    const double v = adopt_prob(params, N, Prior::kDiffers);
    if (v < high_min) high_min = v, high_at = N;
  }
  const double mid = adopt_prob(params, 80, Prior::kDiffers);
  r.check(low_max <= 0.05, "N<=70: max P_T2 = " + fmt(low_max) + " at N=" +
                               std::to_string(low_at) + " (bound 0.05)");
  r.check(high_min >= 0.95, "N>=90: min P_T2 = " + fmt(high_min) + " at N=" +
                                std::to_string(high_at) + " (bound 0.95)");
  r.check(std::abs(mid - 0.5) <= 0.01, "N=80: P_T2 = " + fmt(mid) + " (target 0.5 +- 0.01)");
}

// 7. Low-rate linear approximation bound.
void low_rate_bound(Report& r) {
  for (double lambda : {0.05, 0.1, 0.5}) {
    const auto params = make(200, 20, 0.2, 2.0, lambda);
    const double rho_g = derived_ratios(params).rho_g;
    double worst_ratio = 0.0;
    std::size_t worst_at = 0;
    for (std::size_t N = 0; N + 20 < 200; ++N) {
      const double bound = (1.0 + (N + 20.0) / 200.0) * rho_g * rho_g;
      const double err = std::abs(adopt_prob(params, N, Prior::kDiffers) -
                                  pt_low_approx(params, N, Prior::kDiffers));
      if (err / bound > worst_ratio) worst_ratio = err / bound, worst_at = N;
    }
    r.check(worst_ratio <= 1.0, "lambda=" + fmt(lambda) + ": max error/bound = " +
                                    fmt(worst_ratio) + " at N=" + std::to_string(worst_at));
  }
}

// 8. Gain-maximizing capacity.
void capacity_choice(Report& r) {
  std::mt19937_64 gen(8);
  bool in_range = true, discarded = true, monotone = true;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    const std::size_t N = gen() % (n + 1);
    const double lambda_s = std::exp(std::uniform_real_distribution<double>(-4.0, 7.0)(gen));
    const auto params = make(n, 0, 0.3, lambda_s, 1.0);
    const CapacityChoice c = m_star(params, N);
    const double width = static_cast<double>(n - N);
    in_range = in_range && c.real >= 0.0 && c.real <= width / 2.0 + 1e-12;
    const double rho_s = derived_ratios(params).rho_s;
    const double inv_log = 1.0 / std::log(rho_s);
    const double other = width / 2.0 - inv_log + std::hypot(width / 2.0, inv_log);
    if (N < n) discarded = discarded && other > width;
    if (N < n) {
      const double found = oracle::golden_section_max(
          [&](long double m) {
            return m * (width - m) * std::pow(static_cast<long double>(rho_s), m);
          },
          0.0L, static_cast<long double>(width));
      worst_gap = std::max(worst_gap, std::abs(static_cast<double>(found) - c.real));
    }
    const PolicyTable table = adaptive_policy_table(params);
    for (std::size_t k = 1; k <= n; ++k) monotone = monotone && table[k] <= table[k - 1];
  }
  r.check(in_range, "100 random points: m* in [0, (n-N)/2]");
  r.check(worst_gap <= 1e-6, "max |m* - numerical maximizer| = " + fmt(worst_gap) + " <= 1e-6");
  r.check(discarded, "discarded root exceeds n-N at every point");
  r.check(monotone, "rounded table nonincreasing in N at every point");
}

// 9. Adaptive vs constant capacity.
void policy_comparison(Report& r) {
  const std::vector<double> rates = {1, 2, 3, 6, 11, 19, 34, 62, 111, 200};
  const double lambdas[] = {0.0, 1.0, 5.0};
  struct Cell {
    double adaptive = 0, constant = 0, mean_m = 0;
    std::size_t rounded = 0;
  };
  std::vector<Cell> cells(rates.size() * 3);
  parallel_for(cells.size(), default_threads(), [&](std::size_t idx) {
    const auto params = make(60, 0, 0.2, rates[idx % rates.size()], lambdas[idx / rates.size()]);
    const PolicyTable table = adaptive_policy_table(params);
    const ChainAnalysis a = analyze(params, table);
    Cell c;
    c.adaptive = a.delta;
    c.mean_m = expected_capacity(a.stationary, table);
    c.rounded = static_cast<std::size_t>(std::round(c.mean_m));
    c.constant = delta_at(params.with_m(c.rounded));
    cells[idx] = c;
  });
  std::size_t wins = 0;
  for (std::size_t li = 0; li < 3; ++li) {
    for (std::size_t si = 0; si < rates.size(); ++si) {
      const Cell& c = cells[li * rates.size() + si];
      if (c.adaptive <= c.constant) {
        ++wins;
      } else {
        std::cout << "    FAIL lambda=" << fmt(lambdas[li]) << " lambda_s=" << fmt(rates[si])
                  << ": adaptive " << fmt(c.adaptive) << " > constant(m=" << c.rounded << ") "
                  << fmt(c.constant) << "\n";
      }
    }
  }
  r.check(wins == cells.size(), "adaptive <= constant at " + std::to_string(wins) + "/" +
                                    std::to_string(cells.size()) + " points");
  bool monotone = true;
  for (std::size_t si = 0; si < rates.size(); ++si) {
    for (std::size_t li = 1; li < 3; ++li) {
      monotone = monotone && cells[li * rates.size() + si].mean_m <=
                                 cells[(li - 1) * rates.size() + si].mean_m + 1e-12;
    }
  }
  r.check(monotone, "E[m*] nonincreasing in lambda at every lambda_s");
}

// 10. Gain scaling fit.
void gain_scaling(Report& r) {
  std::vector<std::size_t> grid;
  for (std::size_t m = 2; m <= 20; ++m) grid.push_back(m);
  const double ps[] = {0.3, 0.5, 0.7};
  double B[3];
  for (int i = 0; i < 3; ++i) {
    const auto params = make(80, 0, ps[i], 10.0, 0.4);
    B[i] = fit_scaling_B(params, grid).B;
    const auto gains = sweep(40, [&](std::size_t k) { return gain_point(params, k + 1).observed_gain; });
    const std::size_t peak = static_cast<std::size_t>(
                                 std::max_element(gains.begin(), gains.end()) - gains.begin()) + 1;
    r.check(peak >= 7 && peak <= 9,
            "p=" + fmt(ps[i]) + ": gain peaks at m=" + std::to_string(peak) + " (target 8 +- 1)");
  }
  std::cout << "    info p=0.3: B = " << fmt(B[0]) << "\n";
  r.check(std::abs(B[1] - 1.1) <= 0.2, "p=0.5: B = " + fmt(B[1]) + " (target 1.1 +- 0.2)");
  r.check(std::abs(B[2] - 0.8) <= 0.2, "p=0.7: B = " + fmt(B[2]) + " (target 0.8 +- 0.2)");
  r.check(B[0] > B[1] && B[1] > B[2], "B strictly decreasing over p in {0.3, 0.5, 0.7}");
}

// 11. Byte-identical output.
std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Report& r) {
  for (const Preset& preset : figure_presets()) {
    const Scenario s = preset_scenario(preset.name);
    const std::string first = run_scenario(s, 1).to_string();
    const std::string second = run_scenario(s, default_threads() + 1).to_string();
    r.check(first == second && !first.empty(),
            preset.name + ": repeated run byte-identical (" + std::to_string(first.size()) +
                " bytes)");
  }
#ifdef GOSSIP_CLI_PATH
  const auto dir = std::filesystem::temp_directory_path() / "gossip_acceptance_determinism";
  std::filesystem::create_directories(dir);
  const std::string cli = GOSSIP_CLI_PATH;
  bool same = true;
  for (const char* name : {"fig6", "mc-event"}) {
    const auto a = dir / (std::string(name) + "_a.csv");
    const auto b = dir / (std::string(name) + "_b.csv");
    const int ra = std::system((cli + " --seed 7 --out " + a.string() + " preset " + name +
                                " 2>/dev/null").c_str());
    const int rb = std::system((cli + " --seed 7 --threads 3 --out " + b.string() + " preset " +
                                name + " 2>/dev/null").c_str());
    same = same && ra == 0 && rb == 0 && read_all(a) == read_all(b) && !read_all(a).empty();
  }
  std::filesystem::remove_all(dir);
  r.check(same, "CLI output files byte-identical across runs (fig6, mc-event)");
#endif
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Report&);
};

const Criterion kCriteria[] = {
    {1, "chain soundness", chain_soundness},
    {2, "small-scale oracle equivalence", oracle_equivalence},
    {3, "high source-rate error asymptotes", source_rate_asymptotes},
    {4, "error vs capacity structure", capacity_structure},
    {5, "optimal gossip rate per capacity", gossip_rate_optima},
    {6, "high-rate step limit of P_T2", high_rate_step},
    {7, "low-rate linear approximation bound", low_rate_bound},
    {8, "gain-maximizing capacity m*(N)", capacity_choice},
    {9, "adaptive vs constant capacity policy", policy_comparison},
    {10, "gain scaling fit B(p)", gain_scaling},
    {11, "byte-identical output", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Report report;
    try {
      c.run(report);
    } catch (const std::exception& e) {
      report.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (report.ok() ? "[PASS] " : "[FAIL] ") << "C" << c.id << " " << c.title
              << std::endl;
    if (!report.ok()) ++failed;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
