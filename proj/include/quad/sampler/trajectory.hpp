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

#ifndef QUAD__SAMPLER__TRAJECTORY_HPP_
#define QUAD__SAMPLER__TRAJECTORY_HPP_

#include "quad/world/bicycle.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace quad
{

/// Planning grid: 0.5 s steps, 10 future steps (5 s).
inline constexpr double kPlanDt = 0.5;
inline constexpr int kHorizonSteps = 10;

enum class Maneuver { keep, left, right, brake, nudge };

std::string_view to_string(Maneuver m);

/// Timestamped bicycle states on the planning grid plus the controls that
/// take state k to state k+1.
struct Trajectory
{
  std::vector<world::EgoState> states;    // kHorizonSteps + 1 entries, states[0] = ego
  std::vector<world::Controls> controls;  // kHorizonSteps entries
  std::size_t base_lane{0};
  Maneuver maneuver{Maneuver::keep};
  double target_accel{0.0};
  double target_offset{0.0};
  double lateral_duration{0.0};

  int steps() const { return static_cast<int>(states.size()) - 1; }
  double time_at(int k) const { return k * kPlanDt; }
};

}  // namespace quad

#endif  // QUAD__SAMPLER__TRAJECTORY_HPP_
