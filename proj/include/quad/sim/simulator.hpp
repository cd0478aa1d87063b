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


#ifndef QUAD__SIM__SIMULATOR_HPP_
#define QUAD__SIM__SIMULATOR_HPP_

#include "quad/planner/expert.hpp"
#include "quad/planner/planner.hpp"
#include "quad/sim/scenario.hpp"
#include "quad/sim/traffic.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace quad::sim
{

/// Builds the occupancy field for one replan from the actors' current plans.
using FieldFactory = std::function<std::unique_ptr<occupancy::OccupancyField>(
  const std::vector<occupancy::ActorPlan> &, std::uint64_t seed)>;

/// Oracle field with boundary softness `sigma`.
FieldFactory oracle_factory(double sigma = 0.25);

struct PlanContext
{
  const Scenario & scenario;
  const world::EgoState & ego;
  const std::vector<occupancy::ActorPlan> & actor_plans;
  const FieldFactory & field_factory;
  std::uint64_t seed{0};
};

struct PolicyOutput
{
  Trajectory plan;
  std::optional<std::string> error;
  std::size_t chosen_index{0};
  std::size_t candidates{0};
};

class Policy
{
public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  /// Never throws; failures are reported through PolicyOutput::error.
  virtual PolicyOutput plan(const PlanContext & ctx) const = 0;
};

/// Learned-cost planner over an occupancy field.
class QuadPolicy final : public Policy
{
public:
  QuadPolicy(costing::Weights w, planner::PlannerConfig cfg = {});
  std::string name() const override { return "quad"; }
  PolicyOutput plan(const PlanContext & ctx) const override;

  const costing::Weights & weights() const { return w_; }
  const planner::PlannerConfig & config() const { return cfg_; }

private:
  costing::Weights w_;
  planner::PlannerConfig cfg_;
};

/// Privileged planner with access to the actors' plans.
class ExpertPolicy final : public Policy
{
public:
  explicit ExpertPolicy(
    planner::ExpertWeights w = planner::ExpertWeights::preset(), planner::PlannerConfig cfg = {});
  std::string name() const override { return "expert"; }
  PolicyOutput plan(const PlanContext & ctx) const override;

private:
  planner::ExpertWeights w_;
  planner::PlannerConfig cfg_;
};

/// Always brakes as hard as possible.
class HardBrakePolicy final : public Policy
{
public:
  std::string name() const override { return "hard_brake"; }
  PolicyOutput plan(const PlanContext & ctx) const override;
};

/// Emergency stop used when planning fails.
Trajectory emergency_stop(const world::EgoState & ego, const world::LaneMap & map);

struct SimConfig
{
  world::VehicleParams vehicle{};
  double horizon{5.0};
  bool stop_at_goal{true};
  /// Keep the actor plans seen at every replan (needed for dataset building).
  bool record_actor_plans{false};
};

struct PlanRecord
{
  double t{0.0};
  world::EgoState ego;
  Trajectory plan;
  std::optional<std::string> error;
  std::size_t chosen_index{0};
  std::size_t candidates{0};
  double min_ttc{10.0};
  std::vector<occupancy::ActorPlan> actor_plans;  ///< only with record_actor_plans
};

/// Closed-loop trace. Fine samples are kActorDt apart; control step i
/// starts at fine sample 5 i.
struct SimState
{
  double clock{0.0};
  std::vector<world::EgoState> ego_trace;
  std::vector<std::vector<world::OrientedBox>> actor_trace;
  std::vector<world::Controls> executed;
  std::vector<PlanRecord> plans;
  bool collided{false};
  double collision_time{0.0};
  bool goal_reached{false};
  double goal_time{0.0};
};

/// Open-loop log: the driver's executed trace plus the proposals of the policy under test.
struct OpenLoopLog
{
  SimState driven;
  std::vector<PlanRecord> proposals;
};

inline constexpr double kNoCollisionTtc = 10.0;

/// First time (0.1 s grid) at which the ego plan overlaps any actor plan; 10 if none.
double min_ttc(
  const Trajectory & plan, const std::vector<occupancy::ActorPlan> & actors,
  const world::VehicleParams & vehicle = {}, double horizon = 5.0);

/// Ego pose at time t along a 0.5 s plan (linear interpolation, held past the end).
world::Pose2D plan_pose(const Trajectory & plan, double t);

SimState run_closed_loop(
  const Scenario & scn, const Policy & policy, const FieldFactory & factory = oracle_factory(),
  const SimConfig & cfg = {});

OpenLoopLog run_open_loop(
  const Scenario & scn, const Policy & driver, const Policy & policy,
  const FieldFactory & factory = oracle_factory(), const SimConfig & cfg = {});

}  // namespace quad::sim

#endif  // QUAD__SIM__SIMULATOR_HPP_
