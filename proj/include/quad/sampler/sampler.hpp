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

#ifndef QUAD__SAMPLER__SAMPLER_HPP_
#define QUAD__SAMPLER__SAMPLER_HPP_

#include "quad/sampler/trajectory.hpp"
#include "quad/world/lane_map.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <vector>

namespace quad::sampler
{

struct SamplerConfig
{
  /// Constant longitudinal accelerations (m/s^2). Order is generation order.
  std::vector<double> accels{0.0, 1.0, 2.0, -1.0, -2.0, -4.0, -6.0};
  /// Lateral offsets (m) relative to each base lane centerline.
  std::vector<double> offsets{0.0, -0.75, 0.75, -1.5, 1.5};
  /// Durations (s) of the quintic transition into a neighbor lane.
  std::vector<double> lane_change_durations{3.0, 4.0, 5.0};
  double nudge_duration{3.0};
  double hard_brake_decel{6.0};
  /// Speeds are capped at the base lane's limit plus this margin.
  double speed_margin{2.0};
  std::size_t max_candidates{400};
  double max_lane_distance{10.0};
  bool lane_changes{true};
  world::VehicleParams vehicle{};

  void validate() const;
  nlohmann::json to_json() const;
  static SamplerConfig from_json(const nlohmann::json & doc);
};

class OffMapError : public std::runtime_error
{
public:
  OffMapError() : std::runtime_error("off-map ego") {}
};

/// Cartesian product of longitudinal and lateral Frenet profiles over the
/// ego lane and its neighbors. Kinematically infeasible samples are dropped,
/// duplicates removed, and the list truncated to max_candidates (the
/// keep-lane and hard-brake samples always survive). Order is deterministic:
/// ego lane first, holding the current offset, in config accel order.
std::vector<Trajectory> generate_candidates(
  const world::EgoState & ego, const world::LaneMap & map, const SamplerConfig & cfg = {});

/// Max-deceleration stop holding the current lateral offset in the ego lane.
Trajectory hard_brake(
  const world::EgoState & ego, const world::LaneMap & map, const SamplerConfig & cfg = {});

/// Max-deceleration stop straight along the current heading; needs no map.
Trajectory straight_brake(const world::EgoState & ego, const SamplerConfig & cfg = {});

/// True when both trajectories have identical states within `tol`.
bool same_states(const Trajectory & a, const Trajectory & b, double tol = 1e-9);

}  // namespace quad::sampler

#endif  // QUAD__SAMPLER__SAMPLER_HPP_
