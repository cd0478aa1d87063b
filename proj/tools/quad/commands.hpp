// Copyright 2026 The quad-planner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUAD_TOOLS__COMMANDS_HPP_
#define QUAD_TOOLS__COMMANDS_HPP_

#include "common.hpp"

#include "quad/sim/metrics.hpp"

#include <string>
#include <vector>

namespace quad::tools
{

struct ScenarioResult
{
  sim::ScenarioMetrics metrics;
  sim::SimState driven;
  std::vector<sim::PlanRecord> plans;  ///< executed plans, or proposals in open loop
};

/// Runs every scenario with the configured planner (closed or open loop).
std::vector<ScenarioResult> run_scenarios(
  const RunConfig & cfg, const std::vector<sim::Scenario> & scenarios, const sim::Policy & policy);

struct RunOptions
{
  bool write_traces{true};
};
int cmd_run(const RunConfig & cfg, const RunOptions & opt);

struct BenchOptions
{
  int actors{60};
  int repeats{3};
  std::vector<double> resolutions{0.1, 0.25, 0.5, 1.0, 2.0};
  double grid_resolution{0.5};
};
int cmd_bench(const RunConfig & cfg, const BenchOptions & opt);

struct AblateOptions
{
  std::vector<std::string> drop;  ///< cost group names; empty means all
};
int cmd_ablate(const RunConfig & cfg, const AblateOptions & opt);

struct TrainOptions
{
  int iterations{1};
  int epochs{3000};
  double lr{2.0};
  double init_scale{5.0};
  std::size_t stride{2};
  std::string expert{"synthetic"};  ///< synthetic (hidden QuAD weights) or privileged
  std::optional<fs::path> expert_weights;
  double separation_scale{10.0};  ///< 0 keeps every example
  std::string validation;         ///< scenario set for held-out match rate, empty for none
  std::optional<fs::path> dataset;  ///< reuse a saved dataset instead of collecting round 0
};
int cmd_train(const RunConfig & cfg, const TrainOptions & opt);

int cmd_plot(const fs::path & run_dir, const fs::path & out_dir);

/// Shared CSV formatting for the ablation table.
std::string ablation_csv(const std::vector<std::pair<std::string, sim::MetricsReport>> & rows);

}  // namespace quad::tools

#endif  // QUAD_TOOLS__COMMANDS_HPP_
