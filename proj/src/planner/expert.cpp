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


#include "quad/planner/expert.hpp"

#include <algorithm>
#include <cmath>

namespace quad::planner
{

using world::EgoState;
using world::OrientedBox;
using world::Vec2;

namespace
{

constexpr double kCheckDt = 0.1;
constexpr int kChecksPerStep = 5;

OrientedBox inflated_footprint(const world::Pose2D & pose, const world::VehicleParams & v, double margin)
{
  return {{pose.x, pose.y}, pose.heading, v.length + 2.0 * margin, v.width + 2.0 * margin};
}

world::Pose2D lerp_pose(const world::Pose2D & a, const world::Pose2D & b, double w)
{
  return {a.x + (b.x - a.x) * w, a.y + (b.y - a.y) * w,
          world::normalize_angle(a.heading + w * world::normalize_angle(b.heading - a.heading))};
}

/// Cheap rejection before the separating-axis test.
bool may_overlap(const OrientedBox & a, const OrientedBox & b)
{
  const double ra = 0.5 * std::hypot(a.length, a.width);
  const double rb = 0.5 * std::hypot(b.length, b.width);
  return (a.center - b.center).norm() < ra + rb;
}

}  // namespace

OrientedBox ExpertWorldView::actor_box(std::size_t i, double t) const
{
  const occupancy::ActorPlan & plan = actors.at(i);
  if (t <= plan.end_time() || plan.samples.size() < 2) {
    return plan.box_at(t);
  }
  const auto & last = plan.samples[plan.samples.size() - 1];
  const auto & prev = plan.samples[plan.samples.size() - 2];
  const Vec2 vel = (last.box.center - prev.box.center) * (1.0 / (last.t - prev.t));
  OrientedBox box = last.box;
  box.center = last.box.center + vel * (t - last.t);
  return box;
}

nlohmann::json ExpertWeights::to_json() const
{
  return {
    {"collision", collision},
    {"headway", headway},
    {"acc_lat", acc_lat},
    {"acc_long", acc_long},
    {"jerk", jerk},
    {"curvature", curvature},
    {"crosstrack_route", crosstrack_route},
    {"crosstrack_lane", crosstrack_lane},
    {"progress", progress},
    {"speed", speed},
    {"corridor", corridor},
    {"contingency", contingency},
    {"headway_time", headway_time},
    {"collision_margin", collision_margin},
    {"max_decel", max_decel},
  };
}

ExpertWeights ExpertWeights::from_json(const nlohmann::json & doc)
{
  ExpertWeights w;
  const nlohmann::json defaults = w.to_json();
  for (const auto & [key, value] : doc.items()) {
    if (!defaults.contains(key)) throw std::invalid_argument("unknown expert weight '" + key + "'");
  }
  nlohmann::json merged = defaults;
  merged.update(doc);
  w.collision = merged["collision"];
  w.headway = merged["headway"];
  w.acc_lat = merged["acc_lat"];
  w.acc_long = merged["acc_long"];
  w.jerk = merged["jerk"];
  w.curvature = merged["curvature"];
  w.crosstrack_route = merged["crosstrack_route"];
  w.crosstrack_lane = merged["crosstrack_lane"];
  w.progress = merged["progress"];
  w.speed = merged["speed"];
  w.corridor = merged["corridor"];
  w.contingency = merged["contingency"];
  w.headway_time = merged["headway_time"];
  w.collision_margin = merged["collision_margin"];
  w.max_decel = merged["max_decel"];
  return w;
}

ExpertWeights ExpertWeights::preset() { return ExpertWeights{}; }

std::vector<bool> collision_steps(
  const Trajectory & traj, const ExpertWorldView & view, const world::VehicleParams & vehicle,
  double margin)
{
  std::vector<bool> hit(traj.steps(), false);
  for (int k = 0; k < traj.steps(); ++k) {
    for (int c = 1; c <= kChecksPerStep && !hit[k]; ++c) {
      const double w = static_cast<double>(c) / kChecksPerStep;
      const double t = (k + w) * kPlanDt;
      const OrientedBox ego = inflated_footprint(
        lerp_pose(traj.states[k].pose, traj.states[k + 1].pose, w), vehicle, margin);
      for (std::size_t i = 0; i < view.actors.size(); ++i) {
        const OrientedBox actor = view.actor_box(i, t);
        if (may_overlap(ego, actor) && world::overlaps(ego, actor)) {
          hit[k] = true;
          break;
        }
      }
    }
  }
  return hit;
}

double headway_cost(
  const Trajectory & traj, const ExpertWorldView & view, const world::VehicleParams & vehicle,
  double headway_time)
{
  if (view.map == nullptr) return 0.0;
  double cost = 0.0;
  for (int k = 1; k <= traj.steps(); ++k) {
    const EgoState & s = traj.states[k];
    const double t = k * kPlanDt;
    const world::LaneLocation loc = view.map->locate(s.pose.position());
    const world::Polyline & cl = view.map->lane(loc.lane).centerline;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < view.actors.size(); ++i) {
      const OrientedBox a = view.actor_box(i, t);
      if ((a.center - s.pose.position()).norm() > 150.0) continue;
      const world::Projection pa = cl.project(a.center);
      if (pa.s <= loc.projection.s) continue;
      if (std::abs(pa.d - loc.projection.d) > 0.5 * (vehicle.width + a.width) + 0.2) continue;
      best_gap = std::min(best_gap, pa.s - loc.projection.s - 0.5 * (vehicle.length + a.length));
    }
    if (std::isfinite(best_gap)) {
      const double gap_time = best_gap / std::max(s.speed, 1.0);
      const double violation = std::max(0.0, headway_time - gap_time);
      cost += violation * violation;
    }
  }
  return cost;
}

bool contingency_check(
  const Trajectory & traj, const ExpertWorldView & view, double max_decel,
  const world::VehicleParams & vehicle)
{
  const EgoState & end = traj.states.back();
  const double t_end = traj.time_at(traj.steps());
  const double stop_time = end.speed / max_decel;
  const double stop_dist = end.speed * end.speed / (2.0 * max_decel);

  // Brake along the lane holding the lateral offset; straight when off-map.
  std::optional<world::Polyline> path;
  world::Projection start{};
  if (view.map != nullptr && !view.map->lanes().empty()) {
    const world::LaneLocation loc = view.map->locate(end.pose.position());
    const world::Polyline & cl = view.map->lane(loc.lane).centerline;
    path = view.map->base_path(loc.lane, cl.project(end.pose.position()).s + stop_dist + 10.0);
    start = path->project(end.pose.position());
  }
  const Vec2 fwd = world::unit_from_heading(end.pose.heading);

  // Only actors ahead at the start of the stop can make it unavoidable.
  std::vector<std::size_t> ahead;
  for (std::size_t i = 0; i < view.actors.size(); ++i) {
    if ((view.actor_box(i, t_end).center - end.pose.position()).dot(fwd) > 0.0) ahead.push_back(i);
  }
  if (ahead.empty()) return false;

  const int n = static_cast<int>(std::ceil(stop_time / kCheckDt)) + 1;
  for (int j = 0; j <= n; ++j) {
    const double tau = std::min(j * kCheckDt, stop_time);
    const double ds = end.speed * tau - 0.5 * max_decel * tau * tau;
    world::Pose2D pose;
    if (path) {
      const double s = start.s + ds;
      pose = path->to_cartesian(s, start.d).pose;
      pose.heading = path->smooth_heading(s);
    } else {
      pose = {end.pose.x + fwd.x * ds, end.pose.y + fwd.y * ds, end.pose.heading};
    }
    const OrientedBox ego = world::footprint(pose, vehicle);
    for (std::size_t i : ahead) {
      const OrientedBox actor = view.actor_box(i, t_end + tau);
      if (may_overlap(ego, actor) && world::overlaps(ego, actor)) return true;
    }
  }
  return false;
}

ExpertCost expert_cost(
  const Trajectory & traj, const ExpertWorldView & view, const ExpertWeights & w,
  const world::VehicleParams & vehicle)
{
  using costing::Feature;
  ExpertCost out;
  auto term = [&out](ExpertTerm t) -> double & { return out.terms[static_cast<std::size_t>(t)]; };

  const std::vector<bool> hits = collision_steps(traj, view, vehicle, w.collision_margin);
  for (int k = 0; k < traj.steps(); ++k) {
    if (hits[k]) term(ExpertTerm::collision) += w.collision * (traj.steps() - k);
  }
  term(ExpertTerm::headway) = w.headway * headway_cost(traj, view, vehicle, w.headway_time);

  if (view.map != nullptr) {
    const costing::FeatureVector f = costing::agnostic_features(traj, *view.map);
    auto F = [&f](Feature x) { return f[static_cast<std::size_t>(x)]; };
    term(ExpertTerm::comfort) = w.acc_lat * F(Feature::acc_lat) + w.acc_long * F(Feature::acc_long) +
                                w.jerk * F(Feature::jerk) + w.curvature * F(Feature::curvature);
    term(ExpertTerm::crosstrack) =
      w.crosstrack_route * F(Feature::route) + w.crosstrack_lane * F(Feature::corridor);
    term(ExpertTerm::progress) = w.progress * F(Feature::progress);
    term(ExpertTerm::speed) = w.speed * F(Feature::speed);
    double off_road = 0.0;
    for (int k = 1; k <= traj.steps(); ++k) {
      if (!view.map->locate(traj.states[k].pose.position()).contained) off_road += 1.0;
    }
    term(ExpertTerm::corridor) = w.corridor * (F(Feature::boundary) + off_road);
  }
  if (contingency_check(traj, view, w.max_decel, vehicle)) {
    term(ExpertTerm::contingency) = w.contingency;
  }
  for (double v : out.terms) out.total += v;
  return out;
}

ExpertResult expert_plan(
  const ExpertWorldView & view, const EgoState & ego, const ExpertWeights & w,
  const PlannerConfig & cfg)
{
  if (view.map == nullptr) throw std::invalid_argument("expert view without a map");
  ExpertResult out;
  out.candidates = sampler::generate_candidates(ego, *view.map, cfg.sampler);
  if (out.candidates.empty()) {
    out.chosen = sampler::hard_brake(ego, *view.map, cfg.sampler);
    return out;
  }
  out.costs.reserve(out.candidates.size());
  for (const Trajectory & t : out.candidates) {
    out.costs.push_back(expert_cost(t, view, w, cfg.sampler.vehicle));
  }
  for (std::size_t i = 1; i < out.costs.size(); ++i) {
    if (out.costs[i].total < out.costs[out.chosen_index].total) out.chosen_index = i;
  }
  out.chosen = out.candidates[out.chosen_index];
  return out;
}

}  // namespace quad::planner
