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


#ifndef QUAD__SIM__SCENARIO_HPP_
#define QUAD__SIM__SCENARIO_HPP_

#include "quad/world/bicycle.hpp"
#include "quad/world/lane_map.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace quad::sim
{

inline constexpr int kScenarioSchemaVersion = 1;

/// Intelligent-driver car-following parameters.
struct IdmParams
{
  double desired_speed{25.0};  ///< v0, m/s
  double min_gap{2.0};         ///< s0, m
  double time_headway{1.5};    ///< T_h, s
  double max_accel{1.5};       ///< a_max, m/s^2
  double comfort_decel{2.0};   ///< b, m/s^2
  double max_decel{9.0};       ///< physical braking limit

  void validate() const;
};

/// Move to lateral offset `target_d` (road frame) starting at `time`.
struct LaneChangeTrigger
{
  double time{0.0};
  double target_d{0.0};
  double duration{3.0};
};

/// From `time` on, brake at `decel` until stopped and stay stopped.
struct BrakeEvent
{
  double time{0.0};
  double decel{6.0};
};

struct Waypoint
{
  double t{0.0};
  world::Pose2D pose;
};

enum class Behavior { idm, scripted };

/// Actors move in the road frame (s along the scenario reference line, d to
/// the left), except scripted actors which replay Cartesian waypoints.
struct ActorSpec
{
  std::string id;
  Behavior behavior{Behavior::idm};
  double s{0.0};
  double d{0.0};
  double speed{0.0};
  IdmParams idm{};
  std::optional<LaneChangeTrigger> lane_change;
  std::optional<BrakeEvent> brake;
  std::vector<Waypoint> waypoints;  ///< scripted only, sorted by t
  double length{5.0};
  double width{2.0};

  void validate() const;
};

/// Reached when the ego center lies in `lane` with centerline arc length in [s_min, s_max].
struct Goal
{
  std::string lane;
  double s_min{0.0};
  double s_max{0.0};
};

enum class Family { lane_change, lane_follow, lane_merge, canonical };

std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

struct Scenario
{
  std::string name;
  Family family{Family::canonical};
  world::LaneMap map;
  world::Polyline reference;  ///< road frame for IDM actors
  world::EgoState ego;
  std::optional<Goal> goal;
  std::vector<ActorSpec> actors;
  double duration{20.0};
  std::uint64_t seed{0};

  /// Throws std::invalid_argument on a broken scenario.
  void validate() const;

  nlohmann::json to_json() const;
  static Scenario from_json(const nlohmann::json & doc);
  static Scenario load(const std::filesystem::path & path);
  void save(const std::filesystem::path & path) const;
};

/// All *.json scenarios in a directory, sorted by file name.
std::vector<Scenario> load_scenario_dir(const std::filesystem::path & dir);

}  // namespace quad::sim

#endif  // QUAD__SIM__SCENARIO_HPP_
