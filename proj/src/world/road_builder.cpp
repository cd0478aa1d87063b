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

#include "quad/world/road_builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quad::world
{

RoadBuilder::RoadBuilder(Polyline reference, double lane_width, double sample_step)
: reference_(std::move(reference)), lane_width_(lane_width), sample_step_(sample_step)
{
}

RoadBuilder & RoadBuilder::add_section(RoadSection section)
{
  if (!(section.s_end > section.s_begin) || section.max_slot < section.min_slot) {
    throw std::invalid_argument("bad road section");
  }
  sections_.push_back(std::move(section));
  return *this;
}

std::string RoadBuilder::lane_id(std::size_t section, int slot)
{
  return "s" + std::to_string(section) + "_l" + std::to_string(slot);
}

Polyline RoadBuilder::offset_line(double s0, double s1, double offset) const
{
  std::vector<Vec2> pts;
  // A single-segment reference stays a single segment: projection cost matters in hot loops.
  const bool straight = reference_.num_segments() == 1;
  const int n = straight ? 1 : std::max(1, static_cast<int>(std::ceil((s1 - s0) / sample_step_)));
  for (int i = 0; i <= n; ++i) {
    const double s = s0 + (s1 - s0) * i / n;
    const double h = reference_.smooth_heading(s);
    const auto base = reference_.to_cartesian(s, 0.0).pose;
    pts.push_back({base.x - std::sin(h) * offset, base.y + std::cos(h) * offset});
  }
  return Polyline(std::move(pts));
}

LaneMap RoadBuilder::build(std::vector<std::string> route) const
{
  std::vector<Lane> lanes;
  for (std::size_t si = 0; si < sections_.size(); ++si) {
    const RoadSection & sec = sections_[si];
    for (int slot = sec.min_slot; slot <= sec.max_slot; ++slot) {
      Lane lane;
      lane.id = lane_id(si, slot);
      lane.centerline = offset_line(sec.s_begin, sec.s_end, slot * lane_width_);
      const bool has_left = slot < sec.max_slot;
      const bool has_right = slot > sec.min_slot;
      const bool forced_left = std::find(sec.solid_left_of.begin(), sec.solid_left_of.end(), slot) !=
                               sec.solid_left_of.end();
      const bool forced_right =
        std::find(sec.solid_left_of.begin(), sec.solid_left_of.end(), slot - 1) !=
        sec.solid_left_of.end();
      lane.left_boundary = {
        offset_line(sec.s_begin, sec.s_end, (slot + 0.5) * lane_width_), !has_left || forced_left};
      lane.right_boundary = {
        offset_line(sec.s_begin, sec.s_end, (slot - 0.5) * lane_width_),
        !has_right || forced_right};
      lane.speed_limit = sec.speed_limit;
      if (has_left) lane.left_neighbor = lane_id(si, slot + 1);
      if (has_right) lane.right_neighbor = lane_id(si, slot - 1);
      if (si + 1 < sections_.size()) {
        const RoadSection & next = sections_[si + 1];
        if (slot >= next.min_slot && slot <= next.max_slot) {
          lane.successors.push_back(lane_id(si + 1, slot));
        }
      }
      lanes.push_back(std::move(lane));
    }
  }
  return LaneMap(std::move(lanes), std::move(route));
}

Polyline straight_reference(double x0, double length)
{
  return Polyline({{x0, 0.0}, {x0 + length, 0.0}});
}

Polyline arc_reference(double straight, double radius, double arc_length, double step)
{
  std::vector<Vec2> pts{{0.0, 0.0}};
  if (straight > 0.0) pts.push_back({straight, 0.0});
  const int n = std::max(1, static_cast<int>(std::ceil(arc_length / step)));
  const double sign = radius > 0.0 ? 1.0 : -1.0;
  const double r = std::abs(radius);
  for (int i = 1; i <= n; ++i) {
    const double phi = arc_length * i / n / r;
    pts.push_back({straight + r * std::sin(phi), sign * r * (1.0 - std::cos(phi))});
  }
  return Polyline(std::move(pts));
}

LaneMap straight_highway(int lanes, double length, double speed_limit, int route_slot, double x0)
{
  RoadBuilder builder(straight_reference(x0, length));
  builder.add_section({0.0, length, 0, lanes - 1, {}, speed_limit});
  return builder.build({RoadBuilder::lane_id(0, route_slot)});
}

}  // namespace quad::world
