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


#ifndef QUAD__SIM__METRICS_HPP_
#define QUAD__SIM__METRICS_HPP_

#include "quad/sim/simulator.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace quad::sim
{

/// Per-scenario outcome.
struct ScenarioMetrics
{
  std::string name;
  Family family{Family::canonical};
  bool collided{false};         ///< executed trace hit an actor
  bool plan_collision{false};   ///< some plan overlaps the actors' actual futures
  double plan_collision_fraction{0.0};
  bool violation{false};        ///< boundary, off-road, speed or collision
  bool off_road{false};
  bool boundary_violation{false};
  bool speeding{false};
  bool has_goal{false};
  bool goal_reached{false};
  bool success{false};          ///< goal reached without collision or violation
  double min_ttc{kNoCollisionTtc};
  double progress{0.0};         ///< m traveled before going off-road
  std::optional<double> l2e;    ///< m, needs a reference trace
  double p2p{0.0};              ///< m
  double jerk{0.0};             ///< RMS, m/s^3
  std::size_t plans{0};
  std::size_t planner_errors{0};
};

/// Aggregate over a scenario set.
struct MetricsReport
{
  std::vector<ScenarioMetrics> scenarios;
  double ecr{0.0};
  double pcr{0.0};
  double pcr_per_plan{0.0};
  double tvr{0.0};
  double gsr{0.0};
  std::size_t goal_scenarios{0};
  double min_ttc_p10{kNoCollisionTtc};
  double ttc_below_1{0.0};  ///< fraction of scenarios with MinTTC < 1 s
  double ttc_below_2{0.0};
  double ttc_below_5{0.0};
  double progress{0.0};
  std::optional<double> l2e;
  double p2p{0.0};
  double jerk{0.0};

  std::size_t collisions() const;
  std::size_t successes() const;
};

/// Speed above limit + this margin at a control step counts as a violation.
inline constexpr double kSpeedTolerance = 0.5;

/// Mean distance between plan i+1 and plan i over their common time span.
double plan_to_plan(const Trajectory & previous, const Trajectory & next);

/// Closed-loop metrics. `reference` is the expert's executed trace for L2E.
ScenarioMetrics compute_metrics(
  const Scenario & scn, const SimState & st, const std::vector<world::EgoState> * reference = nullptr,
  const world::VehicleParams & vehicle = {});

/// Open-loop metrics on the proposals; L2E compares against the driver's plans.
ScenarioMetrics compute_open_loop_metrics(
  const Scenario & scn, const OpenLoopLog & log, const world::VehicleParams & vehicle = {});

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

MetricsReport aggregate(std::vector<ScenarioMetrics> scenarios);

/// One row per scenario, fixed column order.
void write_scenario_csv(std::ostream & out, const std::vector<ScenarioMetrics> & rows);
/// Header plus one row.
void write_summary_csv(std::ostream & out, const MetricsReport & report);
/// Executed ego trace and actor centers, one row per fine sample.
void write_trace_csv(std::ostream & out, const SimState & st);

}  // namespace quad::sim

#endif  // QUAD__SIM__METRICS_HPP_
