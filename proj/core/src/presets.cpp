#include <stdexcept>

#include "gossip/experiments.hpp"

namespace gossip {

const std::vector<Preset>& figure_presets() {
  static const std::vector<Preset> presets{
      {"fig2", "error vs m for lambda in {0,10,20}", R"(
[model]
n = 60
p = 0.4
lambda_e = 1
lambda_s = 10
[sweep]
axis = m
values = 1:60
series_axis = lambda
series_values = 0, 10, 20
[run]
name = fig2
)"},
      {"fig3", "error vs gossip rate for m in {5,10,15}", R"(
[model]
n = 60
p = 0.4
lambda_e = 1
lambda_s = 10
[sweep]
axis = lambda
values = 0:40
series_axis = m
series_values = 5, 10, 15
[run]
name = fig3
)"},
      {"fig4", "error vs source rate for m in {5,10,15}", R"(
[model]
n = 60
p = 0.2
lambda_e = 1
lambda = 5
[sweep]
axis = lambda_s
values = 1:10, 15:100:5, 120:400:20
series_axis = m
series_values = 5, 10, 15
[run]
name = fig4
)"},
      {"fig5a", "error vs n with lambda_s in {0.1n,0.2n,0.5n}, m = 8", R"(
[model]
n = 60
m = 8
p = 0.2
lambda_e = 1
lambda = 10
[sweep]
axis = n
values = 10:150:10
series_axis = lambda_s_per_n
series_values = 0.1, 0.2, 0.5
[run]
name = fig5a
)"},
      {"fig5b", "error vs n with m in {0.1n,0.2n,0.5n}, lambda_s = 4", R"(
[model]
n = 60
p = 0.2
lambda_e = 1
lambda_s = 4
lambda = 10
[sweep]
axis = n
values = 10:150:10
series_axis = m_per_n
series_values = 0.1, 0.2, 0.5
[run]
name = fig5b
)"},
      {"fig5c", "error vs n with m and lambda_s both scaled by n", R"(
[model]
n = 60
p = 0.2
lambda_e = 1
lambda = 10
[sweep]
axis = n
values = 10:150:10
series_axis = both_per_n
series_values = 0.1, 0.2, 0.5
[run]
name = fig5c
)"},
      {"fig6", "adoption probabilities at low gossip rates", R"(
[model]
n = 200
m = 20
p = 0.2
lambda_e = 1
lambda_s = 2
[sweep]
axis = N
values = 0:180
series_axis = lambda
series_values = 0.1, 0.5, 1
[run]
name = fig6
measure = adopt
)"},
      {"fig7", "adoption probabilities at high gossip rates", R"(
[model]
n = 200
m = 20
p = 0.2
lambda_e = 1
lambda_s = 2
[sweep]
axis = N
values = 0:180
series_axis = lambda
series_values = 20, 200, 400
[run]
name = fig7
measure = adopt
)"},
      {"fig8", "gossip gain vs m for p in {0.3,0.5,0.7}", R"(
[model]
n = 80
p = 0.5
lambda_e = 1
lambda_s = 10
lambda = 0.4
[sweep]
axis = m
values = 1:40
series_axis = p
series_values = 0.3, 0.5, 0.7
[run]
name = fig8
measure = gain
fit_grid = 2:20
)"},
      {"mstar", "gain-maximizing capacity m*(N) for lambda_s in {1,5,10}", R"(
[model]
n = 60
p = 0.2
lambda_e = 1
lambda = 10
[sweep]
axis = N
values = 0:60
series_axis = lambda_s
series_values = 1, 5, 10
[run]
name = mstar
measure = mstar
)"},
      {"fig9", "adaptive vs constant capacity policy", R"(
[model]
n = 60
p = 0.2
lambda_e = 1
lambda_s = 1
[sweep]
axis = lambda_s
values = 1, 2, 3, 6, 11, 19, 34, 62, 111, 200
series_axis = lambda
series_values = 0, 1, 5
[run]
name = fig9
measure = policy
)"},
      {"mc-paper", "paper-faithful simulation vs analytic error over gossip rates", R"(
[model]
n = 20
m = 5
p = 0.4
lambda_e = 1
lambda_s = 10
[sweep]
axis = lambda
values = 0, 1, 5, 10, 20
[run]
name = mc-paper
engine = paper-faithful-mc
cycles = 100000
burn_in = 1000
seed = 1
)"},
      {"mc-event", "event-driven simulation over gossip rates", R"(
[model]
n = 20
m = 5
p = 0.4
lambda_e = 1
lambda_s = 10
[sweep]
axis = lambda
values = 0, 1, 5, 10, 20
[run]
name = mc-event
engine = event-driven-mc
cycles = 100000
burn_in = 1000
seed = 1
)"},
  };
  return presets;
}

Scenario preset_scenario(const std::string& name) {
  for (const auto& preset : figure_presets()) {
    if (preset.name == name) return parse_scenario(preset.config);
  }
  throw std::out_of_range("unknown preset '" + name + "'");
}

}  // namespace gossip
