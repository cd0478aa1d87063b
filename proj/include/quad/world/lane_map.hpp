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

#ifndef QUAD__WORLD__LANE_MAP_HPP_
#define QUAD__WORLD__LANE_MAP_HPP_

#include "quad/world/polyline.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace quad::world
{

struct LaneBoundary
{
  Polyline line;
  bool solid{false};
};

struct Lane
{
  std::string id;
  Polyline centerline;
  LaneBoundary left_boundary;
  LaneBoundary right_boundary;
  double speed_limit{0.0};  // m/s
  std::optional<std::string> left_neighbor;
  std::optional<std::string> right_neighbor;
  std::vector<std::string> successors;
};

/// Where a point sits relative to the lane graph.
struct LaneLocation
{
  std::size_t lane{0};
  Projection projection;  ///< projection onto that lane's centerline
  bool contained{false};  ///< false when the point is outside every lane (nearest lane reported)
};

/// Lane graph plus the mission route. Immutable after construction.
class LaneMap
{
public:
  LaneMap() = default;
  /// Throws std::invalid_argument when references dangle or a lane's
  /// boundaries do not flank its centerline.
  LaneMap(std::vector<Lane> lanes, std::vector<std::string> route);

  const std::vector<Lane> & lanes() const { return lanes_; }
  const std::vector<std::string> & route() const { return route_; }
  const Lane & lane(std::size_t index) const { return lanes_.at(index); }
  const Lane & lane(const std::string & id) const { return lanes_.at(index_of(id)); }
  std::size_t index_of(const std::string & id) const;
  std::optional<std::size_t> find(const std::string & id) const;
  bool on_route(std::size_t lane_index) const;

  /// Containing lane (smallest |d| among lanes containing p), else the lane
  /// with the nearest centerline.
  LaneLocation locate(const Vec2 & p) const;
  bool inside_lane(std::size_t lane_index, const Vec2 & p) const;

  /// Projection onto the nearest route-lane centerline.
  LaneLocation locate_on_route(const Vec2 & p) const;

  /// Centerline of `lane_index` followed by successors (route lanes preferred)
  /// until the path is at least `min_length` long, then straight-extended.
  Polyline base_path(std::size_t lane_index, double min_length) const;

  nlohmann::json to_json() const;
  static LaneMap from_json(const nlohmann::json & doc);
  static LaneMap load(const std::filesystem::path & path);

private:
  std::vector<Lane> lanes_;
  std::vector<std::string> route_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> route_member_;
};

}  // namespace quad::world

#endif  // QUAD__WORLD__LANE_MAP_HPP_
