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


#include "quad/sim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quad::sim
{

namespace
{

using world::Pose2D;
using world::Vec2;

double quintic(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double quintic_rate(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }

/// Road-frame pose; extrapolates straight past either end of the reference.
Pose2D road_pose(const world::Polyline & ref, double s, double d, double heading_offset)
{
  const double len = ref.length();
  const double sc = std::clamp(s, 0.0, len);
  const double h = ref.smooth_heading(sc);
  Pose2D p = ref.to_cartesian(sc, d).pose;
  const Vec2 t = world::unit_from_heading(h);
  p.x += t.x * (s - sc);
  p.y += t.y * (s - sc);
  p.heading = world::normalize_angle(h + heading_offset);
  return p;
}

Pose2D waypoint_pose(const std::vector<Waypoint> & wps, double t)
{
  if (t <= wps.front().t) return wps.front().pose;
  if (t >= wps.back().t) return wps.back().pose;
  const auto it = std::upper_bound(
    wps.begin(), wps.end(), t, [](double v, const Waypoint & w) { return v < w.t; });
  const Waypoint & b = *it;
  const Waypoint & a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return {a.pose.x + (b.pose.x - a.pose.x) * w, a.pose.y + (b.pose.y - a.pose.y) * w,
          world::normalize_angle(a.pose.heading + w * world::normalize_angle(b.pose.heading - a.pose.heading))};
}

/// Lateral offset and its rate under an active lane change.
std::pair<double, double> lateral(const ActorSpec & spec, const ActorState & st, double t)
{
  if (!spec.lane_change || !st.lane_change_started) return {st.d, 0.0};
  const LaneChangeTrigger & lc = *spec.lane_change;
  const double u = std::clamp((t - lc.time) / lc.duration, 0.0, 1.0);
  const double span = lc.target_d - st.lane_change_from;
  return {st.lane_change_from + span * quintic(u), u < 1.0 ? span * quintic_rate(u) / lc.duration : 0.0};
}

RoadFootprint footprint_of(const ActorSpec & spec, const ActorState & st)
{
  return {st.s, st.d, st.speed, spec.length, spec.width};
}

}  // namespace

double idm_accel(const IdmParams & p, double speed, const std::optional<LeadInfo> & lead)
{
  double a = 1.0 - std::pow(speed / p.desired_speed, 4.0);
  if (lead) {
    const double dv = speed - lead->speed;
    const double s_star =
      p.min_gap + std::max(0.0, speed * p.time_headway + speed * dv / (2.0 * std::sqrt(p.max_accel * p.comfort_decel)));
    const double gap = std::max(lead->gap, 0.1);
    a -= (s_star / gap) * (s_star / gap);
  }
  return std::clamp(p.max_accel * a, -p.max_decel, p.max_accel);
}

ActorState initial_state(const ActorSpec & spec, const world::Polyline & reference)
{
  ActorState st;
  if (spec.behavior == Behavior::scripted) {
    st.pose = waypoint_pose(spec.waypoints, 0.0);
    const world::Projection pr = reference.project(st.pose.position());
    st.s = pr.s;
    st.d = pr.d;
    return st;
  }
  st.s = spec.s;
  st.d = spec.d;
  st.speed = spec.speed;
  st.pose = road_pose(reference, st.s, st.d, 0.0);
  return st;
}

ActorState step_actor(
  const ActorSpec & spec, const ActorState & state, const std::optional<LeadInfo> & lead, double dt,
  const world::Polyline & reference)
{
  ActorState next = state;
  next.t = state.t + dt;
  if (spec.behavior == Behavior::scripted) {
    next.pose = waypoint_pose(spec.waypoints, next.t);
    const world::Projection pr = reference.project(next.pose.position());
    next.s = pr.s;
    next.d = pr.d;
    next.speed = (next.pose.position() - state.pose.position()).norm() / dt;
    next.accel = (next.speed - state.speed) / dt;
    return next;
  }

  double a = idm_accel(spec.idm, state.speed, lead);
  if (spec.brake && state.t >= spec.brake->time - 1e-9) a = std::min(a, -spec.brake->decel);
  next.accel = a;
  const double v1 = state.speed + a * dt;
  if (v1 < 0.0) {
    next.s = state.s + state.speed * state.speed / (-2.0 * a);
    next.speed = 0.0;
  } else {
    next.s = state.s + state.speed * dt + 0.5 * a * dt * dt;
    next.speed = v1;
  }

  if (spec.lane_change && !next.lane_change_started && next.t >= spec.lane_change->time - 1e-9) {
    next.lane_change_started = true;
    next.lane_change_from = state.d;
  }
  const auto [d, d_rate] = lateral(spec, next, next.t);
  next.d = d;
  const double heading_offset = std::atan2(d_rate, std::max(next.speed, 1e-3));
  next.pose = road_pose(reference, next.s, next.d, next.speed > 0.0 || d_rate != 0.0 ? heading_offset : 0.0);
  return next;
}

world::OrientedBox actor_box(const ActorSpec & spec, const ActorState & state)
{
  return {state.pose.position(), state.pose.heading, spec.length, spec.width};
}

std::optional<LeadInfo> find_lead(const RoadFootprint & self, const std::vector<RoadFootprint> & others)
{
  std::optional<LeadInfo> best;
  double best_ds = std::numeric_limits<double>::infinity();
  for (const RoadFootprint & o : others) {
    const double ds = o.s - self.s;
    if (ds <= 0.0 || ds >= best_ds) continue;
    if (std::abs(o.d - self.d) >= 0.5 * (self.width + o.width) + 0.3) continue;
    best_ds = ds;
    best = LeadInfo{ds - 0.5 * (self.length + o.length), o.speed};
  }
  return best;
}

Traffic::Traffic(const Scenario & scn) : scn_(&scn)
{
  states_.reserve(scn.actors.size());
  for (const ActorSpec & a : scn.actors) states_.push_back(initial_state(a, scn.reference));
}

std::vector<world::OrientedBox> Traffic::boxes() const
{
  std::vector<world::OrientedBox> out;
  out.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) out.push_back(actor_box(scn_->actors[i], states_[i]));
  return out;
}

RoadFootprint Traffic::ego_footprint(const world::EgoState & ego, const world::VehicleParams & vehicle) const
{
  const world::Projection pr = scn_->reference.project(ego.pose.position());
  return {pr.s, pr.d, ego.speed, vehicle.length, vehicle.width};
}

void Traffic::advance(std::vector<ActorState> & states, const RoadFootprint & ego) const
{
  std::vector<RoadFootprint> all;
  all.reserve(states.size() + 1);
  for (std::size_t i = 0; i < states.size(); ++i) all.push_back(footprint_of(scn_->actors[i], states[i]));
  all.push_back(ego);

  std::vector<RoadFootprint> others;
  std::vector<ActorState> next(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j != i) others.push_back(all[j]);
    }
    next[i] = step_actor(scn_->actors[i], states[i], find_lead(all[i], others), kActorDt, scn_->reference);
  }
  states = std::move(next);
}

void Traffic::step(const world::EgoState & ego, const world::VehicleParams & vehicle)
{
  advance(states_, ego_footprint(ego, vehicle));
}

std::vector<occupancy::ActorPlan> Traffic::plans(
  const world::EgoState & ego, const world::VehicleParams & vehicle, double horizon) const
{
  const int n = static_cast<int>(std::lround(horizon / kActorDt));
  std::vector<occupancy::ActorPlan> out(states_.size());
  std::vector<ActorState> states = states_;
  const RoadFootprint ego0 = ego_footprint(ego, vehicle);
  const Vec2 dir = world::unit_from_heading(ego.pose.heading);
  for (int k = 0; k <= n; ++k) {
    const double t = k * kActorDt;
    for (std::size_t i = 0; i < states.size(); ++i) {
      out[i].samples.push_back({t, actor_box(scn_->actors[i], states[i])});
    }
    if (k == n) break;
    // Constant-velocity ego along its heading, seen in the road frame.
    RoadFootprint ego_t = ego0;
    const double ds = ego.speed * t;
    ego_t.s += ds * dir.dot(world::unit_from_heading(scn_->reference.smooth_heading(
                                std::clamp(ego0.s, 0.0, scn_->reference.length()))));
    advance(states, ego_t);
  }
  return out;
}

}  // namespace quad::sim
