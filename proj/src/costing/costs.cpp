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

#include "quad/costing/costs.hpp"

#include <algorithm>
#include <cmath>

namespace quad::costing
{

using query::OccupancyView;
using query::RegionTag;
using world::EgoState;
using world::LaneMap;
using world::Vec2;

namespace
{

double relu(double x) { return x > 0.0 ? x : 0.0; }

Vec2 acceleration_vector(const EgoState & s)
{
  const Vec2 t = world::unit_from_heading(s.pose.heading);
  const Vec2 n{-t.y, t.x};
  return t * s.accel + n * (s.speed * s.speed * s.curvature);
}

/// Time derivative of the tangential acceleration: central difference,
/// backward at the last state.
double jerk_at(const Trajectory & traj, int t)
{
  const int last = traj.steps();
  if (t < last) {
    return (traj.states[t + 1].accel - traj.states[t - 1].accel) / (2.0 * kPlanDt);
  }
  return (traj.states[t].accel - traj.states[t - 1].accel) / kPlanDt;
}

double boundary_term(
  const LaneMap & map, std::size_t lane_index, const Vec2 & p)
{
  const world::Lane & lane = map.lane(lane_index);
  double cost = 0.0;
  auto interior = [](const world::Projection & pr, const world::Polyline & pl) {
    return pr.s > 0.0 && pr.s < pl.length();
  };
  if (lane.left_boundary.solid) {
    const world::Projection pr = lane.left_boundary.line.project(p);
    if (interior(pr, lane.left_boundary.line)) cost += relu(pr.d);
  }
  if (lane.right_boundary.solid) {
    const world::Projection pr = lane.right_boundary.line.project(p);
    if (interior(pr, lane.right_boundary.line)) cost += relu(-pr.d);
  }
  return cost;
}

/// Lanes whose solid boundaries constrain state t: the occupied lane, the
/// lane at the start of the trajectory, and the sampling base lane.
double boundary_at(
  const Trajectory & traj, const LaneMap & map, std::size_t start_lane,
  const world::LaneLocation & loc, const Vec2 & p)
{
  std::array<std::size_t, 3> lanes{loc.lane, start_lane, traj.base_lane};
  double cost = 0.0;
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    if (lanes[i] >= map.lanes().size()) continue;
    if (std::find(lanes.begin(), lanes.begin() + i, lanes[i]) != lanes.begin() + i) continue;
    cost += boundary_term(map, lanes[i], p);
  }
  return cost;
}

double route_term(const LaneMap & map, const Vec2 & p, const CostOptions & opt)
{
  const world::LaneLocation loc = map.locate_on_route(p);
  double term = std::abs(loc.projection.d);
  if (opt.route_speed_modulation) {
    term *= map.lane(loc.lane).speed_limit / opt.reference_speed;
  }
  return term;
}

double buffer_step(const OccupancyView & occ, int step, RegionTag a, RegionTag b)
{
  double max_dis = 0.0;
  for (RegionTag r : {a, b}) {
    occ.for_each(step, r, [&](const Vec2 & local, double) {
      max_dis = std::max(max_dis, local.norm());
    });
  }
  if (max_dis <= 0.0) return 0.0;
  double best = 0.0;
  for (RegionTag r : {a, b}) {
    occ.for_each(step, r, [&](const Vec2 & local, double psi) {
      best = std::max(best, local.norm() / max_dis * psi);
    });
  }
  return best;
}

}  // namespace

std::array<double, 4> comfort_terms(const Trajectory & traj, const LaneMap & map)
{
  std::array<double, 4> out{};
  for (int t = 1; t <= traj.steps(); ++t) {
    const EgoState & s = traj.states[t];
    const Vec2 p = s.pose.position();
    const world::LaneLocation loc = map.locate(p);
    const world::LatLong ll = map.lane(loc.lane).centerline.decompose(acceleration_vector(s), p);
    const double jerk = jerk_at(traj, t);
    out[0] += ll.lat * ll.lat;
    out[1] += ll.lon * ll.lon;
    out[2] += jerk * jerk;
    out[3] += s.curvature * s.curvature;
  }
  return out;
}

double comfort_cost(const Trajectory & traj, const LaneMap & map, const Weights & w)
{
  const auto c = comfort_terms(traj, map);
  return w[Feature::acc_lat] * c[0] + w[Feature::acc_long] * c[1] + w[Feature::jerk] * c[2] +
         w[Feature::curvature] * c[3];
}

double corridor_cost(const Trajectory & traj, const LaneMap & map)
{
  double cost = 0.0;
  for (int t = 1; t <= traj.steps(); ++t) {
    cost += std::abs(map.locate(traj.states[t].pose.position()).projection.d);
  }
  return cost;
}

double boundary_cost(const Trajectory & traj, const LaneMap & map)
{
  const std::size_t start_lane = map.locate(traj.states.front().pose.position()).lane;
  double cost = 0.0;
  for (int t = 1; t <= traj.steps(); ++t) {
    const Vec2 p = traj.states[t].pose.position();
    cost += boundary_at(traj, map, start_lane, map.locate(p), p);
  }
  return cost;
}

double speed_limit_cost(const Trajectory & traj, const LaneMap & map)
{
  double cost = 0.0;
  for (int t = 1; t <= traj.steps(); ++t) {
    const EgoState & s = traj.states[t];
    const double limit = map.lane(map.locate(s.pose.position()).lane).speed_limit;
    const double excess = relu(s.speed - limit);
    cost += excess * excess;
  }
  return cost;
}

double progress_cost(const Trajectory & traj)
{
  double length = 0.0;
  for (int t = 1; t <= traj.steps(); ++t) {
    length += (traj.states[t].pose.position() - traj.states[t - 1].pose.position()).norm();
  }
  return -length;
}

double route_cost(const Trajectory & traj, const LaneMap & map, const CostOptions & opt)
{
  double cost = 0.0;
  for (int t = 1; t <= traj.steps(); ++t) {
    cost += route_term(map, traj.states[t].pose.position(), opt);
  }
  return cost;
}

CollisionCost collision_cost(const OccupancyView & occ)
{
  CollisionCost out;
  const int T = occ.steps();
  out.terms.resize(T);
  for (int k = 0; k < T; ++k) {
    out.terms[k] = (T - k) * occ.max_probability(k, RegionTag::in);
    out.value += out.terms[k];
  }
  return out;
}

double buffer_cost(const OccupancyView & occ, BufferSide side)
{
  const auto [a, b] = side == BufferSide::longitudinal
                        ? std::pair{RegionTag::forward, RegionTag::backward}
                        : std::pair{RegionTag::left, RegionTag::right};
  const int T = occ.steps();
  double cost = 0.0;
  for (int k = 0; k < T; ++k) {
    cost += (T - k) * buffer_step(occ, k, a, b);
  }
  return cost;
}

FeatureVector agnostic_features(const Trajectory & traj, const LaneMap & map, const CostOptions & opt)
{
  FeatureVector f{};
  auto at = [&f](Feature x) -> double & { return f[static_cast<std::size_t>(x)]; };
  const std::size_t start_lane = map.locate(traj.states.front().pose.position()).lane;
  for (int t = 1; t <= traj.steps(); ++t) {
    const EgoState & s = traj.states[t];
    const Vec2 p = s.pose.position();
    const world::LaneLocation loc = map.locate(p);
    const world::Lane & lane = map.lane(loc.lane);

    const world::LatLong ll = lane.centerline.decompose(acceleration_vector(s), p);
    const double jerk = jerk_at(traj, t);
    at(Feature::acc_lat) += ll.lat * ll.lat;
    at(Feature::acc_long) += ll.lon * ll.lon;
    at(Feature::jerk) += jerk * jerk;
    at(Feature::curvature) += s.curvature * s.curvature;

    at(Feature::corridor) += std::abs(loc.projection.d);
    at(Feature::boundary) += boundary_at(traj, map, start_lane, loc, p);
    const double excess = relu(s.speed - lane.speed_limit);
    at(Feature::speed) += excess * excess;
    at(Feature::progress) -= (p - traj.states[t - 1].pose.position()).norm();
    at(Feature::route) += route_term(map, p, opt);
  }
  return f;
}

CostBreakdown total_cost(
  const Trajectory & traj, const OccupancyView & occ, const LaneMap & map, const Weights & w,
  const CostOptions & opt)
{
  CostBreakdown out;
  out.features = agnostic_features(traj, map, opt);
  CollisionCost col = collision_cost(occ);
  out.features[static_cast<std::size_t>(Feature::collision)] = col.value;
  out.collision_terms = std::move(col.terms);
  out.features[static_cast<std::size_t>(Feature::buffer_long)] =
    buffer_cost(occ, BufferSide::longitudinal);
  out.features[static_cast<std::size_t>(Feature::buffer_lat)] =
    buffer_cost(occ, BufferSide::lateral);
  out.total = w.dot(out.features);
  return out;
}

}  // namespace quad::costing
