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

#include "quad/sampler/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace quad
{

std::string_view to_string(Maneuver m)
{
  switch (m) {
    case Maneuver::keep:
      return "keep";
    case Maneuver::left:
      return "left";
    case Maneuver::right:
      return "right";
    case Maneuver::brake:
      return "brake";
    case Maneuver::nudge:
      return "nudge";
  }
  return "unknown";
}

}  // namespace quad

namespace quad::sampler
{

using world::EgoState;
using world::Vec2;

void SamplerConfig::validate() const
{
  if (accels.empty() || offsets.empty()) {
    throw std::invalid_argument("sampler needs at least one accel and one offset");
  }
  if (std::find(accels.begin(), accels.end(), 0.0) == accels.end()) {
    throw std::invalid_argument("sampler accels must include 0");
  }
  if (std::find(offsets.begin(), offsets.end(), 0.0) == offsets.end()) {
    throw std::invalid_argument("sampler offsets must include 0");
  }
  if (!(hard_brake_decel > 0.0) || !(nudge_duration > 0.0) || max_candidates < 2) {
    throw std::invalid_argument("bad sampler limits");
  }
  for (double d : lane_change_durations) {
    if (!(d > 0.0)) throw std::invalid_argument("lane change durations must be positive");
  }
}

nlohmann::json SamplerConfig::to_json() const
{
  return {
    {"accels", accels},
    {"offsets", offsets},
    {"lane_change_durations", lane_change_durations},
    {"nudge_duration", nudge_duration},
    {"hard_brake_decel", hard_brake_decel},
    {"speed_margin", speed_margin},
    {"max_candidates", max_candidates},
    {"lane_changes", lane_changes},
  };
}

SamplerConfig SamplerConfig::from_json(const nlohmann::json & doc)
{
  SamplerConfig cfg;
  cfg.accels = doc.value("accels", cfg.accels);
  cfg.offsets = doc.value("offsets", cfg.offsets);
  cfg.lane_change_durations = doc.value("lane_change_durations", cfg.lane_change_durations);
  cfg.nudge_duration = doc.value("nudge_duration", cfg.nudge_duration);
  cfg.hard_brake_decel = doc.value("hard_brake_decel", cfg.hard_brake_decel);
  cfg.speed_margin = doc.value("speed_margin", cfg.speed_margin);
  cfg.max_candidates = doc.value("max_candidates", cfg.max_candidates);
  cfg.lane_changes = doc.value("lane_changes", cfg.lane_changes);
  cfg.validate();
  return cfg;
}

namespace
{

constexpr int kFinePerStep = 10;
constexpr double kFineDt = kPlanDt / kFinePerStep;
constexpr int kFineSteps = kHorizonSteps * kFinePerStep;
constexpr double kStill = 1e-9;

/// Quintic with free start state and zero end velocity/acceleration.
struct Quintic
{
  std::array<double, 6> c{};
  double duration{0.0};
  double end{0.0};

  static Quintic make(double d0, double v0, double a0, double d1, double duration)
  {
    Quintic q;
    q.duration = duration;
    q.end = d1;
    const double T = duration;
    const double T2 = T * T;
    const double T3 = T2 * T;
    const double dp = d1 - (d0 + v0 * T + 0.5 * a0 * T2);
    const double dv = -(v0 + a0 * T);
    const double da = -a0;
    q.c = {d0,
           v0,
           0.5 * a0,
           10.0 * dp / T3 - 4.0 * dv / T2 + 0.5 * da / T,
           -15.0 * dp / (T3 * T) + 7.0 * dv / T3 - da / T2,
           6.0 * dp / (T3 * T2) - 3.0 * dv / (T3 * T) + 0.5 * da / T3};
    return q;
  }

  // Returns (d, d', d'').
  std::array<double, 3> eval(double t) const
  {
    if (t >= duration) {
      return {end, 0.0, 0.0};
    }
    const auto & k = c;
    const double d = ((((k[5] * t + k[4]) * t + k[3]) * t + k[2]) * t + k[1]) * t + k[0];
    const double dd =
      (((5.0 * k[5] * t + 4.0 * k[4]) * t + 3.0 * k[3]) * t + 2.0 * k[2]) * t + k[1];
    const double ddd = ((20.0 * k[5] * t + 12.0 * k[4]) * t + 6.0 * k[3]) * t + 2.0 * k[2];
    return {d, dd, ddd};
  }
};

/// Piecewise-constant acceleration per planning step, stopping at zero speed
/// and landing exactly on the speed cap at a step boundary.
struct Longitudinal
{
  std::array<double, kHorizonSteps> accel{};
  std::array<double, kHorizonSteps + 1> s{};
  std::array<double, kHorizonSteps + 1> v{};

  static Longitudinal make(double v0, double a, double v_cap)
  {
    Longitudinal l;
    l.v[0] = v0;
    for (int j = 0; j < kHorizonSteps; ++j) {
      double aj = a;
      if (a > 0.0) {
        aj = std::min(a, std::max(0.0, (v_cap - l.v[j]) / kPlanDt));
      }
      l.accel[j] = aj;
      const auto [ds, v1, unused] = advance(l.v[j], aj, kPlanDt);
      l.s[j + 1] = l.s[j] + ds;
      l.v[j + 1] = v1;
    }
    return l;
  }

  // Distance, speed and applied acceleration after tau seconds from speed v with accel a.
  static std::array<double, 3> advance(double v, double a, double tau)
  {
    if (a < 0.0 && v + a * tau <= 0.0) {
      return {v * v / (-2.0 * a), 0.0, 0.0};
    }
    return {v * tau + 0.5 * a * tau * tau, v + a * tau, a};
  }

  std::array<double, 3> eval(double t) const
  {
    const int j = std::min(static_cast<int>(t / kPlanDt + 1e-9), kHorizonSteps - 1);
    const double tau = t - j * kPlanDt;
    const auto [ds, vel, acc] = advance(v[j], accel[j], tau);
    return {s[j] + ds, vel, acc};
  }
};

struct Frame
{
  std::size_t lane{0};
  world::Polyline path;
  double s0{0.0};
  double d0{0.0};
  double d_rate0{0.0};
  double d_accel0{0.0};
  double s_rate0{0.0};
  double v_cap{0.0};
};

std::optional<Frame> make_frame(
  const EgoState & ego, const world::LaneMap & map, std::size_t lane, const SamplerConfig & cfg)
{
  const double v_cap_lane = map.lane(lane).speed_limit + cfg.speed_margin;
  const double reach = std::max(ego.speed, v_cap_lane) * kHorizonSteps * kPlanDt + 50.0;
  const world::Polyline & cl = map.lane(lane).centerline;
  const world::Projection on_lane = cl.project(ego.pose.position());
  Frame f;
  f.lane = lane;
  f.path = map.base_path(lane, on_lane.s + reach);
  const world::Projection p = f.path.project(ego.pose.position());
  if (p.s <= 0.0) {
    // Ego sits behind the start of this lane; no meaningful Frenet frame.
    return std::nullopt;
  }
  const double path_heading = f.path.smooth_heading(p.s);
  const double kp = f.path.smooth_curvature(p.s);
  const double dtheta = world::normalize_angle(ego.pose.heading - path_heading);
  f.s0 = p.s;
  f.d0 = p.d;
  const double u0 = ego.speed * std::cos(dtheta);
  f.s_rate0 = std::max(0.0, u0 / (1.0 - kp * p.d));
  f.d_rate0 = ego.speed * std::sin(dtheta);
  f.d_accel0 = ego.speed * ego.speed * (ego.curvature - kp);
  f.v_cap = std::max(f.s_rate0, v_cap_lane);
  return f;
}

/// Controls that carry `from` to `to` over one planning step under the
/// bicycle model: mean acceleration (the braking rate when the step ends
/// stopped) and the curvature rate that reproduces the heading change.
world::Controls step_controls(const EgoState & from, const EgoState & to, double start_accel)
{
  double a = (to.speed - from.speed) / kPlanDt;
  double tau = kPlanDt;
  if (to.speed <= 0.0 && start_accel < 0.0) {
    a = start_accel;
    tau = from.speed / -a;
  }
  const double dist = from.speed * tau + 0.5 * a * tau * tau;
  // Integral of v(t) * t over the moving part of the step.
  const double moment = from.speed * tau * tau / 2.0 + a * tau * tau * tau / 3.0;
  const double dtheta = world::normalize_angle(to.pose.heading - from.pose.heading);
  double rate = (to.curvature - from.curvature) / kPlanDt;
  if (moment > 1e-6) {
    rate = (dtheta - from.curvature * dist) / moment;
  }
  return {a, rate};
}

std::optional<Trajectory> rollout(
  const EgoState & ego, const Frame & frame, const Longitudinal & lon, const Quintic & lat,
  const SamplerConfig & cfg)
{
  std::array<Vec2, kFineSteps + 1> pos{};
  std::array<double, kFineSteps + 1> heading{};
  std::array<double, kFineSteps + 1> speed{};
  std::array<double, kFineSteps + 1> accel{};
  std::array<double, kFineSteps + 1> curvature{};

  const Vec2 origin = frame.path.to_cartesian(frame.s0, frame.d0).pose.position();
  for (int k = 0; k <= kFineSteps; ++k) {
    const double t = k * kFineDt;
    const auto [s, s_rate, s_acc] = lon.eval(t);
    const auto [d, d_rate, d_acc] = lat.eval(t);
    const auto fr = frame.path.to_cartesian(frame.s0 + s, d);
    pos[k] = ego.pose.position() + (fr.pose.position() - origin);
    const double hp = frame.path.smooth_heading(frame.s0 + s);
    const double kp = frame.path.smooth_curvature(frame.s0 + s);
    const double stretch = 1.0 - kp * d;
    const double u = s_rate * stretch;
    const double v = std::hypot(u, d_rate);
    speed[k] = v;
    if (v > kStill) {
      heading[k] = k == 0 ? ego.pose.heading : world::normalize_angle(hp + std::atan2(d_rate, u));
      const double u_dot = s_acc * stretch - s_rate * kp * d_rate;
      accel[k] = (u * u_dot + d_rate * d_acc) / v;
    } else {
      if (std::abs(d_rate) > kStill) {
        return std::nullopt;  // sideways motion at standstill
      }
      heading[k] = k == 0 ? ego.pose.heading : heading[k - 1];
      accel[k] = std::max(s_acc, 0.0);
    }
  }

  curvature[0] = ego.curvature;
  for (int k = 1; k <= kFineSteps; ++k) {
    const double arc_prev = 0.5 * (speed[k - 1] + speed[k]) * kFineDt;
    const double arc_next = k < kFineSteps ? 0.5 * (speed[k] + speed[k + 1]) * kFineDt : 0.0;
    const double dtheta = k < kFineSteps
                            ? world::normalize_angle(heading[k + 1] - heading[k - 1])
                            : world::normalize_angle(heading[k] - heading[k - 1]);
    const double arc = arc_prev + arc_next;
    curvature[k] = arc > 1e-6 ? dtheta / arc : curvature[k - 1];
    if (std::abs(curvature[k]) > cfg.vehicle.max_curvature) {
      return std::nullopt;
    }
  }

  Trajectory traj;
  traj.base_lane = frame.lane;
  traj.states.reserve(kHorizonSteps + 1);
  traj.states.push_back(ego);
  for (int j = 1; j <= kHorizonSteps; ++j) {
    const int k = j * kFinePerStep;
    traj.states.push_back({{pos[k].x, pos[k].y, heading[k]}, speed[k], accel[k], curvature[k]});
  }
  traj.controls.reserve(kHorizonSteps);
  for (int j = 0; j < kHorizonSteps; ++j) {
    traj.controls.push_back(step_controls(traj.states[j], traj.states[j + 1], accel[j * kFinePerStep]));
  }
  return traj;
}

struct LateralSpec
{
  double target{0.0};
  double duration{0.0};
  Maneuver maneuver{Maneuver::keep};
  bool hold{false};
};

void append_unique(std::vector<Trajectory> & out, Trajectory && t)
{
  for (const Trajectory & existing : out) {
    if (same_states(existing, t)) {
      return;
    }
  }
  out.push_back(std::move(t));
}

std::size_t ego_lane(const EgoState & ego, const world::LaneMap & map, const SamplerConfig & cfg)
{
  if (map.lanes().empty()) {
    throw OffMapError();
  }
  const world::LaneLocation loc = map.locate(ego.pose.position());
  if (!loc.contained && std::abs(loc.projection.d) > cfg.max_lane_distance) {
    throw OffMapError();
  }
  return loc.lane;
}

}  // namespace

bool same_states(const Trajectory & a, const Trajectory & b, double tol)
{
  if (a.states.size() != b.states.size()) return false;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    const EgoState & x = a.states[i];
    const EgoState & y = b.states[i];
    if (std::abs(x.pose.x - y.pose.x) > tol || std::abs(x.pose.y - y.pose.y) > tol ||
        std::abs(world::normalize_angle(x.pose.heading - y.pose.heading)) > tol ||
        std::abs(x.speed - y.speed) > tol) {
      return false;
    }
  }
  return true;
}

std::vector<Trajectory> generate_candidates(
  const EgoState & ego, const world::LaneMap & map, const SamplerConfig & cfg)
{
  cfg.validate();
  const std::size_t lane = ego_lane(ego, map, cfg);

  std::vector<Trajectory> out;
  std::optional<Trajectory> brake;

  auto sample_lane = [&](std::size_t lane_index, const std::vector<LateralSpec> & laterals,
                         bool own_lane) {
    const auto frame = make_frame(ego, map, lane_index, cfg);
    if (!frame) return;
    std::vector<double> accels = cfg.accels;
    for (const LateralSpec & lat_spec : laterals) {
      const double target = lat_spec.hold ? frame->d0 : lat_spec.target;
      const Quintic lat = Quintic::make(
        frame->d0, frame->d_rate0, frame->d_accel0, target, lat_spec.duration);
      std::vector<double> lat_accels = accels;
      const bool hold_here = own_lane && lat_spec.hold;
      if (hold_here && std::find(lat_accels.begin(), lat_accels.end(), -cfg.hard_brake_decel) ==
                         lat_accels.end()) {
        lat_accels.push_back(-cfg.hard_brake_decel);
      }
      for (double a : lat_accels) {
        const Longitudinal lon = Longitudinal::make(frame->s_rate0, a, frame->v_cap);
        auto traj = rollout(ego, *frame, lon, lat, cfg);
        if (!traj) continue;
        traj->target_accel = a;
        traj->target_offset = lat_spec.hold ? 0.0 : lat_spec.target;
        traj->lateral_duration = lat_spec.duration;
        traj->maneuver = lat_spec.maneuver;
        if (hold_here && a == -cfg.hard_brake_decel) {
          traj->maneuver = Maneuver::brake;
          brake = *traj;
        }
        append_unique(out, std::move(*traj));
      }
    }
  };

  std::vector<LateralSpec> own;
  own.push_back({0.0, cfg.nudge_duration, Maneuver::keep, true});
  for (double off : cfg.offsets) {
    own.push_back({off, cfg.nudge_duration, off == 0.0 ? Maneuver::keep : Maneuver::nudge, false});
  }
  sample_lane(lane, own, true);

  if (cfg.lane_changes) {
    const world::Lane & l = map.lane(lane);
    for (const auto & [neighbor, tag] :
         {std::pair{l.left_neighbor, Maneuver::left}, std::pair{l.right_neighbor, Maneuver::right}}) {
      if (!neighbor) continue;
      std::vector<LateralSpec> specs;
      for (double off : cfg.offsets) {
        for (double dur : cfg.lane_change_durations) {
          specs.push_back({off, dur, tag, false});
        }
      }
      sample_lane(map.index_of(*neighbor), specs, false);
    }
  }

  if (out.size() > cfg.max_candidates) {
    out.resize(cfg.max_candidates);
    if (brake && std::none_of(out.begin(), out.end(), [&](const Trajectory & t) {
          return same_states(t, *brake);
        })) {
      out.back() = *brake;
    }
  }
  return out;
}

Trajectory hard_brake(const EgoState & ego, const world::LaneMap & map, const SamplerConfig & cfg)
{
  const std::size_t lane = ego_lane(ego, map, cfg);
  const auto frame = make_frame(ego, map, lane, cfg);
  if (frame) {
    const Quintic lat =
      Quintic::make(frame->d0, frame->d_rate0, frame->d_accel0, frame->d0, cfg.nudge_duration);
    const Longitudinal lon = Longitudinal::make(frame->s_rate0, -cfg.hard_brake_decel, frame->v_cap);
    if (auto traj = rollout(ego, *frame, lon, lat, cfg)) {
      traj->maneuver = Maneuver::brake;
      traj->target_accel = -cfg.hard_brake_decel;
      traj->lateral_duration = cfg.nudge_duration;
      return *traj;
    }
  }
  // Fallback when the Frenet rollout is infeasible.
  Trajectory traj = straight_brake(ego, cfg);
  traj.base_lane = lane;
  return traj;
}

Trajectory straight_brake(const EgoState & ego, const SamplerConfig & cfg)
{
  Trajectory traj;
  traj.maneuver = Maneuver::brake;
  traj.target_accel = -cfg.hard_brake_decel;
  traj.states.push_back(ego);
  EgoState s = ego;
  for (int j = 0; j < kHorizonSteps; ++j) {
    const world::Controls c{-cfg.hard_brake_decel, -s.curvature / kPlanDt};
    EgoState next = world::bicycle_step(s, c, kPlanDt, cfg.vehicle);
    traj.controls.push_back({s.speed > 0.0 ? c.accel : 0.0, c.curvature_rate});
    traj.states.push_back(next);
    s = next;
  }
  return traj;
}

}  // namespace quad::sampler
