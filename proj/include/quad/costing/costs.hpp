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

#ifndef QUAD__COSTING__COSTS_HPP_
#define QUAD__COSTING__COSTS_HPP_

#include "quad/costing/weights.hpp"
#include "quad/query/query_engine.hpp"
#include "quad/sampler/trajectory.hpp"
#include "quad/world/lane_map.hpp"

#include <array>
#include <vector>

namespace quad::costing
{

struct CostOptions
{
  /// Scale each route term by the desired lane's speed limit / reference_speed.
  bool route_speed_modulation{false};
  double reference_speed{30.0};
};

/// Unweighted sub-costs f_i plus the per-step collision terms used by learning.
struct CostBreakdown
{
  FeatureVector features{};
  std::vector<double> collision_terms;  ///< (T - t) * max psi over the swept box, t = 0..T-1
  double total{0.0};

  double feature(Feature f) const { return features[static_cast<std::size_t>(f)]; }
};

/// Sum over future states of lat(a)^2, long(a)^2, jerk^2, curvature^2 (unweighted).
std::array<double, 4> comfort_terms(const Trajectory & traj, const world::LaneMap & map);
double comfort_cost(const Trajectory & traj, const world::LaneMap & map, const Weights & w);

double corridor_cost(const Trajectory & traj, const world::LaneMap & map);
double boundary_cost(const Trajectory & traj, const world::LaneMap & map);
double speed_limit_cost(const Trajectory & traj, const world::LaneMap & map);
double progress_cost(const Trajectory & traj);
double route_cost(const Trajectory & traj, const world::LaneMap & map, const CostOptions & opt = {});

struct CollisionCost
{
  double value{0.0};
  std::vector<double> terms;
};
CollisionCost collision_cost(const query::OccupancyView & occ);

enum class BufferSide { longitudinal, lateral };
double buffer_cost(const query::OccupancyView & occ, BufferSide side);

/// All agent-agnostic features; occupancy-dependent entries stay zero.
FeatureVector agnostic_features(
  const Trajectory & traj, const world::LaneMap & map, const CostOptions & opt = {});

CostBreakdown total_cost(
  const Trajectory & traj, const query::OccupancyView & occ, const world::LaneMap & map,
  const Weights & w, const CostOptions & opt = {});

}  // namespace quad::costing

#endif  // QUAD__COSTING__COSTS_HPP_
