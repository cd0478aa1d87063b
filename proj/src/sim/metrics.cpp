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


#include "quad/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace quad::sim
{

namespace
{

bool plan_hits_future(const PlanRecord & rec, std::size_t step, const SimState & st, const world::VehicleParams & vehicle)
{
  const std::size_t base = step * 5;
  for (int j = 1; j <= kHorizonSteps * 5; ++j) {
    const std::size_t idx = base + j;
    if (idx >= st.actor_trace.size()) break;
    const world::OrientedBox ego = world::footprint(plan_pose(rec.plan, j * kActorDt), vehicle);
    for (const world::OrientedBox & a : st.actor_trace[idx]) {
      if (world::overlaps(ego, a)) return true;
    }
  }
  return false;
}

void plan_collisions(
  ScenarioMetrics & m, const std::vector<PlanRecord> & plans, const SimState & st,
  const world::VehicleParams & vehicle)
{
  std::size_t hits = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    if (plan_hits_future(plans[i], i, st, vehicle)) ++hits;
  }
  m.plan_collision = hits > 0;
  m.plan_collision_fraction = plans.empty() ? 0.0 : static_cast<double>(hits) / plans.size();
}

double mean_p2p(const std::vector<PlanRecord> & plans)
{
  if (plans.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 1; i < plans.size(); ++i) total += plan_to_plan(plans[i - 1].plan, plans[i].plan);
  return total / (plans.size() - 1);
}

double min_plan_ttc(const std::vector<PlanRecord> & plans)
{
  double best = kNoCollisionTtc;
  for (const PlanRecord & r : plans) best = std::min(best, r.min_ttc);
  return best;
}

double rms_jerk(const std::vector<double> & accels, double dt)
{
  if (accels.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < accels.size(); ++i) {
    const double j = (accels[i] - accels[i - 1]) / dt;
    sum += j * j;
  }
  return std::sqrt(sum / (accels.size() - 1));
}

bool corner_off_road(const world::LaneMap & map, const world::OrientedBox & box)
{
  for (const world::Vec2 & c : box.corners()) {
    if (!map.locate(c).contained) return true;
  }
  return false;
}

bool crosses_solid(const world::LaneMap & map, std::size_t from, std::size_t to)
{
  if (from == to) return false;
  const world::Lane & a = map.lane(from);
  const std::string & id = map.lane(to).id;
  return (a.left_neighbor == id && a.left_boundary.solid) ||
         (a.right_neighbor == id && a.right_boundary.solid);
}

}  // namespace

std::size_t MetricsReport::collisions() const
{
  return static_cast<std::size_t>(
    std::count_if(scenarios.begin(), scenarios.end(), [](const auto & s) { return s.collided; }));
}

std::size_t MetricsReport::successes() const
{
  return static_cast<std::size_t>(
    std::count_if(scenarios.begin(), scenarios.end(), [](const auto & s) { return s.success; }));
}

double plan_to_plan(const Trajectory & previous, const Trajectory & next)
{
  // next.states[k] and previous.states[k + 1] refer to the same instant.
  const int n = std::min(previous.steps(), next.steps() + 1);
  if (n <= 0) return 0.0;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    total += (next.states[k].pose.position() - previous.states[k + 1].pose.position()).norm();
  }
  return total / n;
}

ScenarioMetrics compute_metrics(
  const Scenario & scn, const SimState & st, const std::vector<world::EgoState> * reference,
  const world::VehicleParams & vehicle)
{
  ScenarioMetrics m;
  m.name = scn.name;
  m.family = scn.family;
  m.collided = st.collided;
  m.has_goal = scn.goal.has_value();
  m.goal_reached = st.goal_reached;
  m.plans = st.plans.size();
  for (const PlanRecord & r : st.plans) {
    if (r.error) ++m.planner_errors;
  }
  plan_collisions(m, st.plans, st, vehicle);
  m.min_ttc = min_plan_ttc(st.plans);
  m.p2p = mean_p2p(st.plans);

  std::optional<std::size_t> prev_lane;
  bool left_road = false;
  for (std::size_t k = 0; k < st.ego_trace.size(); ++k) {
    const world::EgoState & e = st.ego_trace[k];
    const world::LaneLocation loc = scn.map.locate(e.pose.position());
    if (corner_off_road(scn.map, world::footprint(e.pose, vehicle))) {
      m.off_road = true;
      left_road = true;
    }
    if (prev_lane && crosses_solid(scn.map, *prev_lane, loc.lane)) m.boundary_violation = true;
    prev_lane = loc.lane;
    if (k % 5 == 0 && e.speed > scn.map.lane(loc.lane).speed_limit + kSpeedTolerance) m.speeding = true;
    if (k > 0 && !left_road) {
      m.progress += (e.pose.position() - st.ego_trace[k - 1].pose.position()).norm();
    }
  }
  m.violation = m.collided || m.off_road || m.boundary_violation || m.speeding;
  m.success = m.has_goal && m.goal_reached && !m.violation;

  std::vector<double> accels;
  for (std::size_t i = 5; i < st.ego_trace.size(); i += 5) accels.push_back(st.ego_trace[i].accel);
  m.jerk = rms_jerk(accels, kPlanDt);

  if (reference != nullptr) {
    const std::size_t n = std::min(reference->size(), st.ego_trace.size());
    if (n > 0) {
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        total += (st.ego_trace[k].pose.position() - (*reference)[k].pose.position()).norm();
      }
      m.l2e = total / n;
    }
  }
  return m;
}

ScenarioMetrics compute_open_loop_metrics(
  const Scenario & scn, const OpenLoopLog & log, const world::VehicleParams & vehicle)
{
  ScenarioMetrics m = compute_metrics(scn, log.driven, nullptr, vehicle);
  m.plans = log.proposals.size();
  m.planner_errors = 0;
  for (const PlanRecord & r : log.proposals) {
    if (r.error) ++m.planner_errors;
  }
  plan_collisions(m, log.proposals, log.driven, vehicle);
  m.min_ttc = min_plan_ttc(log.proposals);
  m.p2p = mean_p2p(log.proposals);

  double l2e = 0.0;
  double jerk = 0.0;
  const std::size_t n = std::min(log.proposals.size(), log.driven.plans.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Trajectory & p = log.proposals[i].plan;
    const Trajectory & d = log.driven.plans[i].plan;
    const int steps = std::min(p.steps(), d.steps());
    double dist = 0.0;
    for (int k = 1; k <= steps; ++k) {
      dist += (p.states[k].pose.position() - d.states[k].pose.position()).norm();
    }
    l2e += steps > 0 ? dist / steps : 0.0;
    std::vector<double> accels;
    for (const auto & s : p.states) accels.push_back(s.accel);
    jerk += rms_jerk(accels, kPlanDt);
  }
  if (n > 0) {
    m.l2e = l2e / n;
    m.jerk = jerk / n;
  }
  return m;
}

double percentile(std::vector<double> values, double q)
{
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * (values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (values[hi] - values[lo]) * (pos - lo);
}

MetricsReport aggregate(std::vector<ScenarioMetrics> scenarios)
{
  MetricsReport r;
  r.scenarios = std::move(scenarios);
  const double n = static_cast<double>(r.scenarios.size());
  if (r.scenarios.empty()) return r;
  std::vector<double> ttc;
  double l2e = 0.0;
  std::size_t l2e_count = 0;
  std::size_t goal_success = 0;
  for (const ScenarioMetrics & s : r.scenarios) {
    r.ecr += s.collided;
    r.pcr += s.plan_collision;
    r.pcr_per_plan += s.plan_collision_fraction;
    r.tvr += s.violation;
    r.ttc_below_1 += s.min_ttc < 1.0;
    r.ttc_below_2 += s.min_ttc < 2.0;
    r.ttc_below_5 += s.min_ttc < 5.0;
    r.progress += s.progress;
    r.p2p += s.p2p;
    r.jerk += s.jerk;
    ttc.push_back(s.min_ttc);
    if (s.has_goal) {
      ++r.goal_scenarios;
      goal_success += s.success;
    }
    if (s.l2e) {
      l2e += *s.l2e;
      ++l2e_count;
    }
  }
  for (double * v : {&r.ecr, &r.pcr, &r.pcr_per_plan, &r.tvr, &r.ttc_below_1, &r.ttc_below_2,
                     &r.ttc_below_5, &r.progress, &r.p2p, &r.jerk}) {
    *v /= n;
  }
  r.gsr = r.goal_scenarios > 0 ? static_cast<double>(goal_success) / r.goal_scenarios : 0.0;
  r.min_ttc_p10 = percentile(ttc, 10.0);
  if (l2e_count > 0) r.l2e = l2e / l2e_count;
  return r;
}

void write_scenario_csv(std::ostream & out, const std::vector<ScenarioMetrics> & rows)
{
  out << "scenario,family,collided,plan_collision,plan_collision_fraction,violation,off_road,"
         "boundary_violation,speeding,has_goal,goal_reached,success,min_ttc,progress,l2e,p2p,jerk,"
         "plans,planner_errors\n";
  out << std::fixed << std::setprecision(6);
  for (const ScenarioMetrics & s : rows) {
    out << s.name << ',' << to_string(s.family) << ',' << s.collided << ',' << s.plan_collision << ','
        << s.plan_collision_fraction << ',' << s.violation << ',' << s.off_road << ','
        << s.boundary_violation << ',' << s.speeding << ',' << s.has_goal << ',' << s.goal_reached
        << ',' << s.success << ',' << s.min_ttc << ',' << s.progress << ',';
    if (s.l2e) out << *s.l2e;
    out << ',' << s.p2p << ',' << s.jerk << ',' << s.plans << ',' << s.planner_errors << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_summary_csv(std::ostream & out, const MetricsReport & r)
{
  out << "scenarios,goal_scenarios,gsr,ecr,pcr,pcr_per_plan,tvr,min_ttc_p10,ttc_below_1,ttc_below_2,"
         "ttc_below_5,progress,l2e,p2p,jerk\n";
  out << std::fixed << std::setprecision(6);
  out << r.scenarios.size() << ',' << r.goal_scenarios << ',' << r.gsr << ',' << r.ecr << ',' << r.pcr
      << ',' << r.pcr_per_plan << ',' << r.tvr << ',' << r.min_ttc_p10 << ',' << r.ttc_below_1 << ','
      << r.ttc_below_2 << ',' << r.ttc_below_5 << ',' << r.progress << ',';
  if (r.l2e) out << *r.l2e;
  out << ',' << r.p2p << ',' << r.jerk << '\n';
  out.unsetf(std::ios::floatfield);
}

void write_trace_csv(std::ostream & out, const SimState & st)
{
  out << "t,kind,index,x,y,heading,speed\n";
  out << std::fixed << std::setprecision(4);
  for (std::size_t k = 0; k < st.ego_trace.size(); ++k) {
    const double t = k * kActorDt;
    const world::EgoState & e = st.ego_trace[k];
    out << t << ",ego,0," << e.pose.x << ',' << e.pose.y << ',' << e.pose.heading << ',' << e.speed << '\n';
    for (std::size_t i = 0; i < st.actor_trace[k].size(); ++i) {
      const world::OrientedBox & b = st.actor_trace[k][i];
      out << t << ",actor," << i << ',' << b.center.x << ',' << b.center.y << ',' << b.heading << ",\n";
    }
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace quad::sim
