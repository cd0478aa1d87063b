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

#ifndef QUAD__WORLD__ROAD_BUILDER_HPP_
#define QUAD__WORLD__ROAD_BUILDER_HPP_

#include "quad/world/lane_map.hpp"

#include <string>
#include <vector>

namespace quad::world
{

/// One longitudinal stretch of road. Lanes occupy integer slots; slot k is
/// centered k * lane_width to the left of the reference line.
struct RoadSection
{
  double s_begin{0.0};
  double s_end{0.0};
  int min_slot{0};
  int max_slot{0};
  /// Slots whose LEFT boundary is solid even though a neighbor exists.
  std::vector<int> solid_left_of{};
  double speed_limit{30.0};
};

/// Builds a LaneMap by offsetting a reference line. Lane ids are
/// "s<section>_l<slot>"; lanes in consecutive sections sharing a slot are
/// linked as successors, and outer boundaries are solid road edges.
class RoadBuilder
{
public:
  explicit RoadBuilder(Polyline reference, double lane_width = 3.5, double sample_step = 2.0);

  RoadBuilder & add_section(RoadSection section);
  static std::string lane_id(std::size_t section, int slot);

  LaneMap build(std::vector<std::string> route) const;

private:
  Polyline offset_line(double s0, double s1, double offset) const;

  Polyline reference_;
  double lane_width_;
  double sample_step_;
  std::vector<RoadSection> sections_;
};

/// Straight reference along +x starting at (x0, 0).
Polyline straight_reference(double x0, double length);
/// Straight run of `straight` meters then a constant-radius left arc (negative radius turns right).
Polyline arc_reference(double straight, double radius, double arc_length, double step = 1.0);

/// Convenience: single-section straight highway with `lanes` lanes, route on slot `route_slot`.
LaneMap straight_highway(
  int lanes, double length, double speed_limit = 30.0, int route_slot = 0, double x0 = -100.0);

}  // namespace quad::world

#endif  // QUAD__WORLD__ROAD_BUILDER_HPP_
