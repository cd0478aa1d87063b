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


#ifndef QUAD__PLANNER__PLANNER_HPP_
#define QUAD__PLANNER__PLANNER_HPP_

#include "quad/costing/costs.hpp"
#include "quad/costing/weights.hpp"
#include "quad/occupancy/occupancy_field.hpp"
#include "quad/query/query_engine.hpp"
#include "quad/sampler/sampler.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace quad::planner
{

struct PlannerConfig
{
  sampler::SamplerConfig sampler{};
  query::QueryConfig query{};
  costing::CostOptions cost{};

  nlohmann::json to_json() const;
  static PlannerConfig from_json(const nlohmann::json & doc);
};

struct PlanStats
{
  std::size_t candidates{0};
  query::QueryStats queries{};
  double sample_ms{0.0};
  double query_ms{0.0};
  double cost_ms{0.0};
  double total_ms{0.0};
};

struct PlanResult
{
  std::vector<Trajectory> candidates;
  std::vector<costing::CostBreakdown> costs;
  std::size_t chosen_index{0};
  Trajectory chosen;
  /// Set when planning failed and `chosen` is an emergency stop.
  std::optional<std::string> error;
  PlanStats stats;
};

/// Lowest total; ties go to the lowest index.
std::size_t argmin_index(const std::vector<costing::CostBreakdown> & costs);

/// Sample, query occupancy once for the whole set, cost, and take the argmin.
/// An empty candidate set falls back to the hard-brake trajectory with `error` set.
PlanResult plan(
  const world::EgoState & ego, const world::LaneMap & map, const occupancy::OccupancyField & field,
  const costing::Weights & w, const PlannerConfig & cfg = {});

}  // namespace quad::planner

#endif  // QUAD__PLANNER__PLANNER_HPP_
