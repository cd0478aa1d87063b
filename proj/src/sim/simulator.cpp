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


#include "quad/sim/simulator.hpp"

#include "quad/occupancy/oracle_field.hpp"

#include <algorithm>
#include <cmath>

namespace quad::sim
{

namespace
{

constexpr int kSubsteps = 5;  // kPlanDt / kActorDt

std::uint64_t replan_seed(std::uint64_t scenario_seed, std::size_t step)
{
  return scenario_seed * 1000003ULL + step;
}

bool collides(const world::OrientedBox & ego, const std::vector<world::OrientedBox> & actors)
{
  for (const world::OrientedBox & a : actors) {
    if (world::overlaps(ego, a)) return true;
  }
  return false;
}

bool in_goal(const Scenario & scn, const world::EgoState & ego)
{
  if (!scn.goal) return false;
  const world::LaneLocation loc = scn.map.locate(ego.pose.position());
  return loc.contained && scn.map.lane(loc.lane).id == scn.goal->lane &&
         loc.projection.s >= scn.goal->s_min && loc.projection.s <= scn.goal->s_max;
}

/// Falls back to an emergency stop when the policy failed.
void fill_plan(PlanRecord & rec, PolicyOutput && out, const world::EgoState & ego, const world::LaneMap & map)
{
  const bool failed = out.error.has_value() || out.plan.controls.empty();
  rec.error = out.error;
  if (failed && !rec.error) rec.error = "empty plan";
  rec.plan = failed ? emergency_stop(ego, map) : std::move(out.plan);
}

using Observer = std::function<void(const PlanContext &, std::size_t step)>;

SimState simulate(
  const Scenario & scn, const Policy & driver, const FieldFactory & factory, const SimConfig & cfg,
  const Observer & observer)
{
  scn.validate();
  Traffic traffic(scn);
  SimState st;
  world::EgoState ego = scn.ego;
  st.ego_trace.push_back(ego);
  st.actor_trace.push_back(traffic.boxes());
  if (in_goal(scn, ego)) st.goal_reached = true;
  if (collides(world::footprint(ego.pose, cfg.vehicle), st.actor_trace.back())) {
    st.collided = true;
    return st;
  }

  const auto steps = static_cast<std::size_t>(std::lround(scn.duration / kPlanDt));
  for (std::size_t i = 0; i < steps; ++i) {
    if (cfg.stop_at_goal && st.goal_reached) break;
    const std::vector<occupancy::ActorPlan> plans = traffic.plans(ego, cfg.vehicle, cfg.horizon);
    const PlanContext ctx{scn, ego, plans, factory, replan_seed(scn.seed, i)};
    PolicyOutput out = driver.plan(ctx);

    PlanRecord rec;
    rec.t = st.clock;
    rec.ego = ego;
    rec.chosen_index = out.chosen_index;
    rec.candidates = out.candidates;
    fill_plan(rec, std::move(out), ego, scn.map);
    rec.min_ttc = min_ttc(rec.plan, plans, cfg.vehicle, cfg.horizon);
    if (cfg.record_actor_plans) rec.actor_plans = plans;
    if (observer) observer(ctx, i);

    const world::Controls controls = rec.plan.controls.front();
    st.executed.push_back(controls);
    st.plans.push_back(std::move(rec));

    for (int j = 1; j <= kSubsteps; ++j) {
      traffic.step(ego, cfg.vehicle);
      ego = world::bicycle_step(ego, controls, kActorDt, cfg.vehicle);
      st.ego_trace.push_back(ego);
      st.actor_trace.push_back(traffic.boxes());
      const double t = st.clock + j * kActorDt;
      if (!st.goal_reached && in_goal(scn, ego)) {
        st.goal_reached = true;
        st.goal_time = t;
      }
      if (!st.collided && collides(world::footprint(ego.pose, cfg.vehicle), st.actor_trace.back())) {
        st.collided = true;
        st.collision_time = t;
      }
    }
    st.clock = (i + 1) * kPlanDt;
    if (st.collided) break;
  }
  return st;
}

}  // namespace

FieldFactory oracle_factory(double sigma)
{
  return [sigma](const std::vector<occupancy::ActorPlan> & plans, std::uint64_t) {
    return std::make_unique<occupancy::OracleField>(plans, sigma);
  };
}

Trajectory emergency_stop(const world::EgoState & ego, const world::LaneMap & map)
{
  try {
    return sampler::hard_brake(ego, map);
  } catch (const sampler::OffMapError &) {
    return sampler::straight_brake(ego);
  }
}

QuadPolicy::QuadPolicy(costing::Weights w, planner::PlannerConfig cfg)
: w_(std::move(w)), cfg_(std::move(cfg))
{
}

PolicyOutput QuadPolicy::plan(const PlanContext & ctx) const
{
  PolicyOutput out;
  try {
    const auto field = ctx.field_factory(ctx.actor_plans, ctx.seed);
    planner::PlanResult r = planner::plan(ctx.ego, ctx.scenario.map, *field, w_, cfg_);
    out.error = r.error;
    out.chosen_index = r.chosen_index;
    out.candidates = r.candidates.size();
    out.plan = std::move(r.chosen);
  } catch (const std::exception & e) {
    out.error = e.what();
  }
  return out;
}

ExpertPolicy::ExpertPolicy(planner::ExpertWeights w, planner::PlannerConfig cfg)
: w_(w), cfg_(std::move(cfg))
{
}

PolicyOutput ExpertPolicy::plan(const PlanContext & ctx) const
{
  PolicyOutput out;
  try {
    const planner::ExpertWorldView view{&ctx.scenario.map, ctx.actor_plans};
    planner::ExpertResult r = planner::expert_plan(view, ctx.ego, w_, cfg_);
    out.chosen_index = r.chosen_index;
    out.candidates = r.candidates.size();
    if (r.candidates.empty()) out.error = "empty candidate set";
    out.plan = std::move(r.chosen);
  } catch (const std::exception & e) {
    out.error = e.what();
  }
  return out;
}

PolicyOutput HardBrakePolicy::plan(const PlanContext & ctx) const
{
  PolicyOutput out;
  out.plan = emergency_stop(ctx.ego, ctx.scenario.map);
  out.candidates = 1;
  return out;
}

world::Pose2D plan_pose(const Trajectory & plan, double t)
{
  const int last = plan.steps();
  if (t <= 0.0) return plan.states.front().pose;
  if (t >= last * kPlanDt) return plan.states.back().pose;
  const int k = std::min(static_cast<int>(std::floor(t / kPlanDt)), last - 1);
  const double w = t / kPlanDt - k;
  const world::Pose2D & a = plan.states[k].pose;
  const world::Pose2D & b = plan.states[k + 1].pose;
  return {a.x + (b.x - a.x) * w, a.y + (b.y - a.y) * w,
          world::normalize_angle(a.heading + w * world::normalize_angle(b.heading - a.heading))};
}

double min_ttc(
  const Trajectory & plan, const std::vector<occupancy::ActorPlan> & actors,
  const world::VehicleParams & vehicle, double horizon)
{
  const int n = static_cast<int>(std::lround(horizon / kActorDt));
  for (int k = 0; k <= n; ++k) {
    const double t = k * kActorDt;
    const world::OrientedBox ego = world::footprint(plan_pose(plan, t), vehicle);
    for (const occupancy::ActorPlan & a : actors) {
      if (world::overlaps(ego, a.box_at(t))) return t;
    }
  }
  return kNoCollisionTtc;
}

SimState run_closed_loop(
  const Scenario & scn, const Policy & policy, const FieldFactory & factory, const SimConfig & cfg)
{
  return simulate(scn, policy, factory, cfg, {});
}

OpenLoopLog run_open_loop(
  const Scenario & scn, const Policy & driver, const Policy & policy, const FieldFactory & factory,
  const SimConfig & cfg)
{
  OpenLoopLog log;
  SimConfig c = cfg;
  c.stop_at_goal = false;
  log.driven = simulate(scn, driver, factory, c, [&](const PlanContext & ctx, std::size_t step) {
    PolicyOutput out = policy.plan(ctx);
    PlanRecord rec;
    rec.t = step * kPlanDt;
    rec.ego = ctx.ego;
    rec.chosen_index = out.chosen_index;
    rec.candidates = out.candidates;
    fill_plan(rec, std::move(out), ctx.ego, scn.map);
    rec.min_ttc = min_ttc(rec.plan, ctx.actor_plans, c.vehicle, c.horizon);
    if (c.record_actor_plans) rec.actor_plans = ctx.actor_plans;
    log.proposals.push_back(std::move(rec));
  });
  return log;
}

}  // namespace quad::sim
