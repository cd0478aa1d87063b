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


#ifndef QUAD__PLANNER__EXPERT_HPP_
#define QUAD__PLANNER__EXPERT_HPP_

#include "quad/occupancy/oracle_field.hpp"
#include "quad/planner/planner.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace quad::planner
{

/// Privileged view: true actor footprints now (t = 0) and their future plans.
struct ExpertWorldView
{
  const world::LaneMap * map{nullptr};
  std::vector<occupancy::ActorPlan> actors;

  /// Actor box at time t; past the end of a plan the last velocity is held.
  world::OrientedBox actor_box(std::size_t i, double t) const;
};

/// Hand-tuned expert coefficients.
struct ExpertWeights
{
  double collision{1000.0};
  double headway{20.0};
  double acc_lat{0.5};
  double acc_long{0.2};
  double jerk{0.02};
  double curvature{10.0};
  double crosstrack_route{0.5};
  double crosstrack_lane{1.0};
  double progress{1.0};
  double speed{5.0};
  double corridor{100.0};
  double contingency{300.0};

  double headway_time{1.5};     ///< s
  double collision_margin{0.4}; ///< m added around the ego footprint
  double max_decel{6.0};        ///< contingency braking, m/s^2

  nlohmann::json to_json() const;
  static ExpertWeights from_json(const nlohmann::json & doc);
  /// Versioned preset shipped with the planner.
  static ExpertWeights preset();
};

enum class ExpertTerm : std::size_t {
  collision = 0,
  headway,
  comfort,
  crosstrack,
  progress,
  speed,
  corridor,
  contingency,
};
inline constexpr std::size_t kNumExpertTerms = 8;

struct ExpertCost
{
  std::array<double, kNumExpertTerms> terms{};  ///< already weighted
  double total{0.0};
};

struct ExpertResult
{
  std::vector<Trajectory> candidates;
  std::vector<ExpertCost> costs;
  std::size_t chosen_index{0};
  Trajectory chosen;
};

/// Per-step collision indicators between the (inflated) ego footprint and
/// actor plans, checked at 0.1 s along each step.
std::vector<bool> collision_steps(
  const Trajectory & traj, const ExpertWorldView & view, const world::VehicleParams & vehicle,
  double margin);

/// Time-gap violation to the lead actor, summed over steps: ([h - gap/v]+)^2.
double headway_cost(
  const Trajectory & traj, const ExpertWorldView & view, const world::VehicleParams & vehicle,
  double headway_time);

/// True iff braking at max_decel from the trajectory end state, holding the
/// lateral offset in its lane, still hits some actor.
bool contingency_check(
  const Trajectory & traj, const ExpertWorldView & view, double max_decel,
  const world::VehicleParams & vehicle = {});

ExpertCost expert_cost(
  const Trajectory & traj, const ExpertWorldView & view, const ExpertWeights & w,
  const world::VehicleParams & vehicle = {});

ExpertResult expert_plan(
  const ExpertWorldView & view, const world::EgoState & ego,
  const ExpertWeights & w = ExpertWeights::preset(), const PlannerConfig & cfg = {});

}  // namespace quad::planner

#endif  // QUAD__PLANNER__EXPERT_HPP_
