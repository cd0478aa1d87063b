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

#ifndef QUAD__WORLD__BICYCLE_HPP_
#define QUAD__WORLD__BICYCLE_HPP_

#include "quad/world/geometry.hpp"

namespace quad::world
{

/// Kinematic bicycle state. Steering is carried as path curvature.
struct EgoState
{
  Pose2D pose;
  double speed{0.0};      // m/s, >= 0
  double accel{0.0};      // m/s^2
  double curvature{0.0};  // 1/m

  bool operator==(const EgoState &) const = default;
};

struct Controls
{
  double accel{0.0};           // m/s^2
  double curvature_rate{0.0};  // 1/(m s)
};

struct VehicleParams
{
  double length{5.0};
  double width{2.0};
  double max_curvature{0.2};
  double integration_dt{0.05};
};

/// Ego footprint centered on the pose.
OrientedBox footprint(const Pose2D & pose, const VehicleParams & params);

/// Integrates the bicycle model over dt using semi-implicit Euler with a
/// midpoint heading at `params.integration_dt` sub-steps. Speed never goes
/// negative and curvature is clamped to +-max_curvature.
EgoState bicycle_step(
  const EgoState & state, const Controls & controls, double dt, const VehicleParams & params = {});

}  // namespace quad::world

#endif  // QUAD__WORLD__BICYCLE_HPP_
