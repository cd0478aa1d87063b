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


#ifndef QUAD_TESTS__FIXTURES_HPP_
#define QUAD_TESTS__FIXTURES_HPP_

#include "quad/sampler/trajectory.hpp"
#include "quad/world/bicycle.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace quad::test
{

inline world::EgoState state(double x, double y, double heading, double v, double a = 0.0, double k = 0.0)
{
  world::EgoState s;
  s.pose = {x, y, heading};
  s.speed = v;
  s.accel = a;
  s.curvature = k;
  return s;
}

/// Trajectory whose state k is fn(k * dt); controls are left at zero.
inline Trajectory trajectory_from(const std::function<world::EgoState(double)> & fn)
{
  Trajectory traj;
  for (int k = 0; k <= kHorizonSteps; ++k) traj.states.push_back(fn(k * kPlanDt));
  traj.controls.resize(kHorizonSteps);
  return traj;
}

/// Constant-velocity straight line from (x0, y0) along heading.
inline Trajectory straight(double x0, double y0, double heading, double v, double a = 0.0)
{
  return trajectory_from([=](double t) {
    double speed = v + a * t;
    double dist = v * t + 0.5 * a * t * t;
    if (speed < 0.0) {
      speed = 0.0;
      dist = v * v / (-2.0 * a);
    }
    return state(
      x0 + dist * std::cos(heading), y0 + dist * std::sin(heading), heading, speed,
      speed > 0.0 ? a : 0.0);
  });
}

/// Random smooth-ish trajectory with bounded curvature, for property tests.
inline Trajectory random_trajectory(std::mt19937_64 & rng, double x0 = 0.0, double y0 = 0.0)
{
  std::uniform_real_distribution<double> uv(0.0, 30.0);
  std::uniform_real_distribution<double> ua(-3.0, 2.0);
  std::uniform_real_distribution<double> uk(-0.02, 0.02);
  std::uniform_real_distribution<double> uh(-0.3, 0.3);
  world::EgoState s = state(x0, y0, uh(rng), uv(rng), 0.0, uk(rng));
  Trajectory traj;
  traj.states.push_back(s);
  for (int k = 0; k < kHorizonSteps; ++k) {
    world::Controls c{ua(rng), uk(rng) * 0.2};
    world::EgoState n = world::bicycle_step(s, c, kPlanDt);
    traj.controls.push_back(c);
    traj.states.push_back(n);
    s = n;
  }
  return traj;
}

}  // namespace quad::test

#endif  // QUAD_TESTS__FIXTURES_HPP_
