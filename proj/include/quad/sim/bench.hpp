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

#ifndef QUAD__SIM__BENCH_HPP_
#define QUAD__SIM__BENCH_HPP_

#include "quad/planner/planner.hpp"
#include "quad/sim/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace quad::sim
{

struct BenchConfig
{
  std::vector<double> resolutions{0.1, 0.25, 0.5, 1.0, 2.0};
  /// Timings are the median over this many repetitions.
  int repeats{3};
  double sigma{0.25};
  /// Cell size of the dense-grid baseline.
  double grid_resolution{0.5};
  /// Resolution the dense-grid baseline quantizes its queries at.
  double grid_query_resolution{0.5};
  planner::PlannerConfig planner{};
};

struct BenchRow
{
  std::string mode;  ///< continuous, quantized or dense_grid
  double resolution{0.0};
  std::size_t candidates{0};
  std::size_t raw_points{0};
  std::size_t unique_points{0};
  std::uint64_t field_evaluations{0};
  std::size_t grid_cells{0};
  double build_ms{0.0};   ///< dense grid only
  double sample_ms{0.0};
  double query_ms{0.0};
  double cost_ms{0.0};
  double total_ms{0.0};   ///< build + plan
};

/// Profiles one planning step at the scenario's initial state.
std::vector<BenchRow> bench_step(const Scenario & scn, const BenchConfig & cfg = {});

void write_bench_csv(std::ostream & out, const std::vector<BenchRow> & rows);

}  // namespace quad::sim

#endif  // QUAD__SIM__BENCH_HPP_
