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


#ifndef QUAD__SIM__TRAFFIC_HPP_
#define QUAD__SIM__TRAFFIC_HPP_

#include "quad/occupancy/oracle_field.hpp"
#include "quad/sim/scenario.hpp"

#include <optional>
#include <vector>

namespace quad::sim
{

/// Actor step used for the world and for plan rollouts.
inline constexpr double kActorDt = 0.1;

struct ActorState
{
  double t{0.0};
  double s{0.0};
  double d{0.0};
  double speed{0.0};
  double accel{0.0};
  world::Pose2D pose;
  bool lane_change_started{false};
  double lane_change_from{0.0};
};

/// Bumper-to-bumper gap to the vehicle ahead and its speed.
struct LeadInfo
{
  double gap{0.0};
  double speed{0.0};
};

/// a = a_max [1 - (v / v0)^4 - (s* / s)^2], s* = s0 + v T + v dv / (2 sqrt(a_max b)),
/// clamped to [-max_decel, max_accel].
double idm_accel(const IdmParams & p, double speed, const std::optional<LeadInfo> & lead);

ActorState initial_state(const ActorSpec & spec, const world::Polyline & reference);

/// Advances one actor by dt. Scripted actors are placed on their waypoints.
ActorState step_actor(
  const ActorSpec & spec, const ActorState & state, const std::optional<LeadInfo> & lead, double dt,
  const world::Polyline & reference);

world::OrientedBox actor_box(const ActorSpec & spec, const ActorState & state);

/// Road-frame footprint used for leader search.
struct RoadFootprint
{
  double s{0.0};
  double d{0.0};
  double speed{0.0};
  double length{0.0};
  double width{0.0};
};

/// Closest vehicle ahead of `self` whose lateral extent overlaps it.
std::optional<LeadInfo> find_lead(const RoadFootprint & self, const std::vector<RoadFootprint> & others);

/// Background traffic of one scenario, reacting to the ego.
class Traffic
{
public:
  Traffic(const Scenario & scn);

  const std::vector<ActorState> & states() const { return states_; }
  std::vector<world::OrientedBox> boxes() const;

  /// Advance every actor by kActorDt given the ego's current state.
  void step(const world::EgoState & ego, const world::VehicleParams & vehicle);

  /// Joint rollout of all actors for `horizon` seconds, assuming the ego holds
  /// its speed and heading. Samples every kActorDt, t relative to now.
  std::vector<occupancy::ActorPlan> plans(
    const world::EgoState & ego, const world::VehicleParams & vehicle, double horizon = 5.0) const;

private:
  void advance(std::vector<ActorState> & states, const RoadFootprint & ego) const;
  RoadFootprint ego_footprint(const world::EgoState & ego, const world::VehicleParams & vehicle) const;

  const Scenario * scn_;
  std::vector<ActorState> states_;
};

}  // namespace quad::sim

#endif  // QUAD__SIM__TRAFFIC_HPP_
