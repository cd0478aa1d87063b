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

#include "quad/world/bicycle.hpp"

#include <algorithm>
#include <cmath>

namespace quad::world
{

OrientedBox footprint(const Pose2D & pose, const VehicleParams & params)
{
  return {{pose.x, pose.y}, pose.heading, params.length, params.width};
}

EgoState bicycle_step(
  const EgoState & state, const Controls & controls, double dt, const VehicleParams & params)
{
  EgoState s = state;
  if (!(dt > 0.0)) {
    return s;
  }
  const int n = std::max(1, static_cast<int>(std::ceil(dt / params.integration_dt - 1e-9)));
  const double h = dt / n;
  double applied_accel = controls.accel;
  for (int i = 0; i < n; ++i) {
    double v1 = s.speed + controls.accel * h;
    double tau = h;  // time spent moving within this sub-step
    if (v1 < 0.0) {
      // Stop mid-step: travel only until speed hits zero.
      tau = controls.accel < 0.0 ? s.speed / -controls.accel : 0.0;
      v1 = 0.0;
    }
    const double k1 =
      std::clamp(s.curvature + controls.curvature_rate * h, -params.max_curvature,
                 params.max_curvature);
    const double v_mid = 0.5 * (s.speed + v1);
    const double k_mid = 0.5 * (s.curvature + k1);
    const double dtheta = v_mid * k_mid * tau;
    const double theta_mid = s.pose.heading + 0.5 * dtheta;
    s.pose.x += v_mid * std::cos(theta_mid) * tau;
    s.pose.y += v_mid * std::sin(theta_mid) * tau;
    s.pose.heading = normalize_angle(s.pose.heading + dtheta);
    s.speed = v1;
    s.curvature = k1;
  }
  if (s.speed == 0.0 && applied_accel < 0.0) {
    applied_accel = 0.0;
  }
  s.accel = applied_accel;
  return s;
}

}  // namespace quad::world
