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


#include "quad/sim/library.hpp"

#include "quad/world/road_builder.hpp"

#include <random>
#include <string>

namespace quad::sim
{

namespace
{

constexpr double kLaneWidth = 3.5;
constexpr double kX0 = -100.0;
constexpr double kRoadLength = 1300.0;

using world::RoadBuilder;

double lane_d(int slot) { return slot * kLaneWidth; }

Scenario base(std::string name, Family family, int lanes, int route_slot, double limit = 30.0)
{
  Scenario scn;
  scn.name = std::move(name);
  scn.family = family;
  scn.reference = world::straight_reference(kX0, kRoadLength);
  RoadBuilder builder(scn.reference);
  builder.add_section({0.0, kRoadLength, 0, lanes - 1, {}, limit});
  scn.map = builder.build({RoadBuilder::lane_id(0, route_slot)});
  scn.duration = 15.0;
  return scn;
}

/// Ramp on slot -1 that ends at s = 420; dashed merge zone on [150, 420].
Scenario ramp_base(std::string name)
{
  Scenario scn;
  scn.name = std::move(name);
  scn.family = Family::lane_merge;
  scn.reference = world::straight_reference(kX0, kRoadLength);
  RoadBuilder builder(scn.reference);
  builder.add_section({0.0, 150.0, -1, 1, {-1}, 30.0});
  builder.add_section({150.0, 420.0, -1, 1, {}, 30.0});
  builder.add_section({420.0, kRoadLength, 0, 1, {}, 30.0});
  scn.map = builder.build(
    {RoadBuilder::lane_id(0, 0), RoadBuilder::lane_id(1, 0), RoadBuilder::lane_id(2, 0)});
  scn.duration = 15.0;
  return scn;
}

void place_ego(Scenario & scn, double s, int slot, double speed)
{
  scn.ego = {};
  scn.ego.pose = {kX0 + s, lane_d(slot), 0.0};
  scn.ego.speed = speed;
}

ActorSpec idm(std::string id, double s, int slot, double speed, double desired)
{
  ActorSpec a;
  a.id = std::move(id);
  a.s = s;
  a.d = lane_d(slot);
  a.speed = speed;
  a.idm.desired_speed = desired;
  return a;
}

ActorSpec parked(std::string id, double s, int slot)
{
  ActorSpec a;
  a.id = std::move(id);
  a.behavior = Behavior::scripted;
  a.waypoints = {{0.0, {kX0 + s, lane_d(slot), 0.0}}};
  return a;
}

void goal_on(Scenario & scn, int slot, double s_min, double s_max, std::size_t section = 0)
{
  scn.goal = Goal{RoadBuilder::lane_id(section, slot), s_min, s_max};
}

std::string tag(const std::string & name, double knob)
{
  std::string v = std::to_string(knob);
  v.erase(v.find_last_not_of('0') + 1);
  if (!v.empty() && v.back() == '.') v.pop_back();
  for (char & c : v) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return name + "_" + v;
}

// Each template takes one knob; the split decides the values.

Scenario cut_in_left(double gap)
{
  Scenario scn = base(tag("cut_in_left", gap), Family::lane_follow, 2, 0);
  place_ego(scn, 100.0, 0, 25.0);
  ActorSpec a = idm("cutter", 100.0 + gap, 1, 22.0, 22.0);
  a.lane_change = LaneChangeTrigger{1.5, lane_d(0), 2.5};
  scn.actors = {a};
  return scn;
}

Scenario cut_in_right(double gap)
{
  Scenario scn = base(tag("cut_in_right", gap), Family::lane_follow, 3, 1);
  place_ego(scn, 100.0, 1, 25.0);
  ActorSpec a = idm("cutter", 100.0 + gap, 0, 21.0, 21.0);
  a.lane_change = LaneChangeTrigger{2.0, lane_d(1), 2.5};
  scn.actors = {a, idm("left_traffic", 140.0, 2, 26.0, 26.0)};
  return scn;
}

Scenario hard_brake_lead(double decel)
{
  Scenario scn = base(tag("hard_brake_lead", decel), Family::lane_follow, 2, 0);
  place_ego(scn, 100.0, 0, 25.0);
  ActorSpec lead = idm("lead", 135.0, 0, 25.0, 25.0);
  lead.brake = BrakeEvent{3.0, decel};
  scn.actors = {lead, idm("beside", 98.0, 1, 25.0, 25.0)};
  return scn;
}

Scenario blocked_lane(double dist)
{
  Scenario scn = base(tag("blocked_lane", dist), Family::lane_change, 2, 0);
  place_ego(scn, 100.0, 0, 22.0);
  scn.actors = {parked("stopped", 100.0 + dist, 0), idm("behind", 70.0, 1, 24.0, 24.0),
                idm("ahead", 180.0, 1, 24.0, 24.0)};
  goal_on(scn, 0, 100.0 + dist + 60.0, 100.0 + dist + 300.0);
  return scn;
}

Scenario merge_ego(double offset)
{
  Scenario scn = ramp_base(tag("merge_ego", offset));
  place_ego(scn, 100.0, -1, 20.0);
  scn.actors = {idm("main_a", 125.0 + offset, 0, 22.0, 22.0),
                idm("main_b", 65.0 + offset, 0, 22.0, 22.0)};
  goal_on(scn, 0, 0.0, 600.0, 2);
  return scn;
}

Scenario merge_actor(double offset)
{
  Scenario scn = ramp_base(tag("merge_actor", offset));
  place_ego(scn, 100.0, 0, 24.0);
  ActorSpec a = idm("merger", 100.0 + offset, -1, 22.0, 22.0);
  a.lane_change = LaneChangeTrigger{4.0, lane_d(0), 3.0};
  scn.actors = {a};
  return scn;
}

Scenario slow_aggressor(double lead_speed)
{
  Scenario scn = base(tag("slow_aggressor", lead_speed), Family::lane_follow, 2, 0);
  place_ego(scn, 100.0, 0, 24.0);
  scn.actors = {idm("slow", 140.0, 0, lead_speed, lead_speed), idm("left_a", 80.0, 1, 26.0, 26.0),
                idm("left_b", 130.0, 1, 26.0, 26.0)};
  return scn;
}

Scenario fast_aggressor(double trigger)
{
  Scenario scn = base(tag("fast_aggressor", trigger), Family::lane_change, 2, 0);
  place_ego(scn, 100.0, 0, 24.0);
  ActorSpec a = idm("aggressor", 75.0, 1, 33.0, 33.0);
  a.lane_change = LaneChangeTrigger{trigger, lane_d(0), 2.0};
  a.brake = BrakeEvent{trigger + 2.5, 3.0};
  scn.actors = {a};
  return scn;
}

Scenario exit_change(double offset)
{
  Scenario scn = base(tag("exit_change", offset), Family::lane_change, 3, 0);
  place_ego(scn, 100.0, 2, 25.0);
  scn.actors = {idm("mid_a", 85.0 + offset, 1, 24.0, 24.0), idm("right_a", 150.0, 0, 23.0, 23.0)};
  goal_on(scn, 0, 350.0, 600.0);
  return scn;
}

Scenario lane_change_goal(double brake_time)
{
  Scenario scn = base(tag("lane_change_goal", brake_time), Family::lane_change, 2, 0);
  place_ego(scn, 100.0, 1, 22.0);
  ActorSpec lead = idm("lead", 145.0, 1, 22.0, 22.0);
  lead.brake = BrakeEvent{brake_time, 3.0};
  scn.actors = {lead, idm("right_a", 70.0, 0, 24.0, 24.0), idm("right_b", 120.0, 0, 24.0, 24.0)};
  goal_on(scn, 0, 300.0, 550.0);
  return scn;
}

}  // namespace

std::vector<Scenario> safety_suite(Split split)
{
  struct Template
  {
    Scenario (*make)(double);
    std::vector<double> eval;
    std::vector<double> train;
  };
  const std::vector<Template> templates{
    {cut_in_left, {18.0}, {14.0, 24.0}},
    {cut_in_right, {20.0}, {16.0, 26.0}},
    {hard_brake_lead, {6.0}, {4.5, 7.5}},
    {blocked_lane, {120.0}, {90.0, 150.0}},
    {merge_ego, {0.0}, {-15.0, 15.0}},
    {merge_actor, {10.0}, {0.0, 25.0}},
    {slow_aggressor, {12.0}, {8.0, 15.0}},
    {fast_aggressor, {3.5}, {3.0, 4.2}},
    {exit_change, {0.0}, {-8.0, 8.0}},
    {lane_change_goal, {4.0}, {2.5, 5.5}},
  };
  std::vector<Scenario> out;
  std::uint64_t seed = split == Split::eval ? 1000 : 2000;
  for (const Template & t : templates) {
    for (double knob : split == Split::eval ? t.eval : t.train) {
      Scenario scn = t.make(knob);
      scn.seed = seed++;
      out.push_back(std::move(scn));
    }
  }
  return out;
}

Scenario empty_road(double duration)
{
  Scenario scn = base("empty_road", Family::canonical, 2, 0);
  place_ego(scn, 100.0, 0, 25.0);
  scn.duration = duration;
  goal_on(scn, 0, 250.0, 600.0);
  return scn;
}

std::vector<Scenario> smoke_set()
{
  Scenario follow = base("follow_lead", Family::lane_follow, 2, 0);
  place_ego(follow, 100.0, 0, 22.0);
  follow.actors = {idm("lead", 140.0, 0, 20.0, 20.0)};
  Scenario cut = cut_in_left(18.0);
  std::vector<Scenario> out{empty_road(6.0), std::move(follow), std::move(cut)};
  std::uint64_t seed = 3000;
  for (Scenario & s : out) {
    s.duration = 6.0;
    s.seed = seed++;
  }
  return out;
}

Scenario crowded_scenario(std::size_t actors, std::uint64_t seed)
{
  Scenario scn = base("crowded", Family::canonical, 4, 1);
  place_ego(scn, 300.0, 1, 25.0);
  scn.duration = 10.0;
  scn.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> speed(20.0, 28.0);
  // Evenly spaced slots per lane with jitter; the ego slot stays clear.
  const std::size_t per_lane = (actors + 3) / 4;
  const double spacing = 16.0;
  std::size_t placed = 0;
  for (int lane = 0; lane < 4 && placed < actors; ++lane) {
    for (std::size_t k = 0; k <= per_lane && placed < actors; ++k) {
      const double s =
        300.0 + (static_cast<double>(k) - per_lane / 2.0) * spacing + (lane % 2) * spacing / 2.0;
      if (lane == 1 && std::abs(s - 300.0) < 10.0) continue;
      const double v = speed(rng);
      scn.actors.push_back(idm("a" + std::to_string(placed), s, lane, v, v));
      ++placed;
    }
  }
  return scn;
}

}  // namespace quad::sim
