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
#include "quad/planner/planner.hpp"
#include "quad/world/road_builder.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace quad::planner
{
namespace
{

using costing::Feature;
using costing::Weights;
using occupancy::ActorPlan;
using occupancy::ConstantField;
using occupancy::OracleField;

ActorPlan static_actor(double x, double y)
{
  ActorPlan plan;
  for (double t : {0.0, 5.0}) plan.samples.push_back({t, {{x, y}, 0.0, 5.0, 2.0}});
  return plan;
}

ActorPlan moving_actor(double x0, double y, double vx)
{
  ActorPlan plan;
  for (int k = 0; k <= 10; ++k) {
    const double t = 0.5 * k;
    plan.samples.push_back({t, {{x0 + vx * t, y}, 0.0, 5.0, 2.0}});
  }
  return plan;
}

bool overlaps_any(const world::OrientedBox & ego, const std::vector<ActorPlan> & actors, double t)
{
  for (const ActorPlan & a : actors) {
    if (world::overlaps(ego, a.box_at(t))) return true;
  }
  return false;
}

world::Pose2D lerp(const world::Pose2D & a, const world::Pose2D & b, double w)
{
  return {a.x + (b.x - a.x) * w, a.y + (b.y - a.y) * w, a.heading + (b.heading - a.heading) * w};
}

class PlannerTest : public ::testing::Test
{
protected:
  world::LaneMap map = world::straight_highway(2, 1000.0);
  world::EgoState ego = test::state(0.0, 0.0, 0.0, 20.0);
};

TEST_F(PlannerTest, EmptyWorldPicksFastestCompliantKeepLane)
{
  const ConstantField field(0.0);
  const PlanResult r = plan(ego, map, field, Weights::defaults());
  ASSERT_EQ(r.costs.size(), r.candidates.size());
  ASSERT_FALSE(r.error.has_value());

  double best = std::numeric_limits<double>::infinity();
  for (const auto & c : r.costs) best = std::min(best, c.total);
  EXPECT_EQ(r.costs[r.chosen_index].total, best);
  EXPECT_EQ(r.chosen.maneuver, Maneuver::keep);

  // Maximal distance among keep-lane candidates that stay under the limit.
  double best_progress = -1.0;
  for (const Trajectory & t : r.candidates) {
    if (t.maneuver != Maneuver::keep) continue;
    bool compliant = true;
    for (const auto & s : t.states) compliant = compliant && s.speed <= 30.0 + 1e-9;
    if (compliant) best_progress = std::max(best_progress, t.states.back().pose.x);
  }
  EXPECT_NEAR(r.chosen.states.back().pose.x, best_progress, 1e-9);
}

TEST_F(PlannerTest, StoppedLeadIsNotHit)
{
  ego.speed = 10.0;
  const std::vector<ActorPlan> actors{static_actor(15.0, 0.0)};
  const OracleField field(actors, 0.25);
  const PlanResult r = plan(ego, map, field, Weights::defaults());
  // No swept point is predicted inside the actor (psi < 1/2 everywhere).
  const auto & terms = r.costs[r.chosen_index].collision_terms;
  for (std::size_t k = 0; k < terms.size(); ++k) EXPECT_LT(terms[k] / (terms.size() - k), 0.5);

  // Geometric cross-check against the true footprint with a hard oracle. The
  // query grid cannot see slivers thinner than its spacing, so the footprint
  // is shrunk by one grid step on each side.
  const OracleField hard(actors, 0.0);
  const PlanResult h = plan(ego, map, hard, Weights::defaults());
  ASSERT_EQ(h.costs[h.chosen_index].feature(Feature::collision), 0.0);
  for (int k = 0; k < h.chosen.steps(); ++k) {
    for (int j = 0; j <= 10; ++j) {
      const double w = j / 10.0;
      const world::Pose2D p = lerp(h.chosen.states[k].pose, h.chosen.states[k + 1].pose, w);
      world::OrientedBox fp = world::footprint(p, {});
      fp.length -= 2.0 * PlannerConfig{}.query.grid_res;
      fp.width -= 2.0 * PlannerConfig{}.query.grid_res;
      EXPECT_FALSE(overlaps_any(fp, actors, (k + w) * kPlanDt)) << k << " " << w;
    }
  }
}

TEST_F(PlannerTest, ZeroWeightsPickFirstCandidate)
{
  const OracleField field({static_actor(30.0, 0.0)}, 0.25);
  const PlanResult r = plan(ego, map, field, Weights{});
  EXPECT_EQ(r.chosen_index, 0u);
  EXPECT_TRUE(sampler::same_states(r.chosen, r.candidates.front()));
}

TEST(Argmin, TiesGoToLowestIndex)
{
  std::vector<costing::CostBreakdown> costs(4);
  costs[0].total = 3.0;
  costs[1].total = 1.0;
  costs[2].total = 2.0;
  costs[3].total = 1.0;
  EXPECT_EQ(argmin_index(costs), 1u);
}

TEST_F(PlannerTest, ScalingWeightsKeepsChoice)
{
  const OracleField field({static_actor(40.0, 0.0), moving_actor(-20.0, 3.5, 22.0)}, 0.25);
  const Weights w = Weights::defaults();
  const std::size_t base = plan(ego, map, field, w).chosen_index;
  for (double c : {0.01, 0.5, 4.0, 1000.0}) {
    EXPECT_EQ(plan(ego, map, field, w.scaled(c)).chosen_index, base) << c;
  }
}

TEST_F(PlannerTest, RepeatedCallsAgreeBitwise)
{
  const OracleField field({static_actor(40.0, 0.0), moving_actor(10.0, 3.5, 18.0)}, 0.25);
  const PlanResult a = plan(ego, map, field, Weights::defaults());
  const PlanResult b = plan(ego, map, field, Weights::defaults());
  ASSERT_EQ(a.chosen_index, b.chosen_index);
  ASSERT_EQ(a.costs.size(), b.costs.size());
  for (std::size_t i = 0; i < a.costs.size(); ++i) EXPECT_EQ(a.costs[i].total, b.costs[i].total);
  EXPECT_EQ(a.stats.queries.raw_points, b.stats.queries.raw_points);
  EXPECT_EQ(a.stats.queries.unique_points, b.stats.queries.unique_points);
}

TEST_F(PlannerTest, DroppingCollisionIgnoresBlockage)
{
  const OracleField field({static_actor(25.0, 0.0)}, 0.25);
  const PlanResult full = plan(ego, map, field, Weights::defaults());
  const Weights blind = Weights::defaults().without(costing::CostGroup::collision)
                          .without(costing::CostGroup::buffer);
  const PlanResult r = plan(ego, map, field, blind);
  EXPECT_GT(
    r.costs[r.chosen_index].feature(Feature::collision),
    full.costs[full.chosen_index].feature(Feature::collision));
}

TEST(PlannerConfig, JsonRoundTrip)
{
  PlannerConfig cfg;
  cfg.query.resolution = 2.0;
  cfg.query.quantized = false;
  cfg.cost.route_speed_modulation = true;
  cfg.sampler.lane_changes = false;
  const PlannerConfig back = PlannerConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.to_json(), cfg.to_json());
  EXPECT_THROW(PlannerConfig::from_json({{"query", {{"resolution", 0.0}}}}), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Expert

TEST(Contingency, EmptyWorldIsSafe)
{
  const world::LaneMap map = world::straight_highway(2, 1000.0);
  const ExpertWorldView view{&map, {}};
  EXPECT_FALSE(contingency_check(test::straight(0.0, 0.0, 0.0, 30.0), view, 6.0));
}

TEST(Contingency, StoppingDistanceDecides)
{
  const world::LaneMap map = world::straight_highway(2, 1000.0);
  const Trajectory traj = test::straight(0.0, 0.0, 0.0, 30.0);
  const double end_x = traj.states.back().pose.x;
  // 75 m to stop from 30 m/s at 6 m/s^2.
  EXPECT_TRUE(contingency_check(traj, ExpertWorldView{&map, {static_actor(end_x + 10.0, 0.0)}}, 6.0));
  EXPECT_TRUE(contingency_check(traj, ExpertWorldView{&map, {static_actor(end_x + 79.0, 0.0)}}, 6.0));
  EXPECT_FALSE(contingency_check(traj, ExpertWorldView{&map, {static_actor(end_x + 81.0, 0.0)}}, 6.0));
  EXPECT_FALSE(contingency_check(traj, ExpertWorldView{&map, {static_actor(end_x + 100.0, 0.0)}}, 6.0));
  // Neighbor-lane actors are not in the braking path.
  EXPECT_FALSE(contingency_check(traj, ExpertWorldView{&map, {static_actor(end_x + 10.0, 3.5)}}, 6.0));
}

TEST(Contingency, ActorsBehindAreIgnored)
{
  const world::LaneMap map = world::straight_highway(1, 1000.0);
  const Trajectory traj = test::straight(0.0, 0.0, 0.0, 20.0);
  const ExpertWorldView view{&map, {moving_actor(-60.0, 0.0, 25.0)}};
  EXPECT_FALSE(contingency_check(traj, view, 6.0));
}

TEST(ExpertView, ExtrapolatesPastPlanEnd)
{
  const ExpertWorldView view{nullptr, {moving_actor(0.0, 0.0, 10.0)}};
  EXPECT_NEAR(view.actor_box(0, 2.5).center.x, 25.0, 1e-12);
  EXPECT_NEAR(view.actor_box(0, 7.0).center.x, 70.0, 1e-9);
  const ExpertWorldView still{nullptr, {static_actor(4.0, 1.0)}};
  EXPECT_NEAR(still.actor_box(0, 9.0).center.x, 4.0, 1e-12);
}

TEST(ExpertCosts, CollisionStepsFlagOverlap)
{
  const world::LaneMap map = world::straight_highway(1, 1000.0);
  const Trajectory traj = test::straight(0.0, 0.0, 0.0, 10.0);
  // Inflated ego (5.8 m) touches the actor for centers in [24.6, 35.4]:
  // t in [2.46 s, 3.54 s], i.e. steps 4 to 6.
  const ExpertWorldView view{&map, {static_actor(30.0, 0.0)}};
  const std::vector<bool> hits = collision_steps(traj, view, {}, 0.4);
  ASSERT_EQ(hits.size(), 10u);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(hits[k], k >= 4 && k <= 6) << k;
}

TEST(ExpertCosts, HeadwayQuadraticInViolation)
{
  const world::LaneMap map = world::straight_highway(1, 1000.0);
  const Trajectory traj = test::straight(0.0, 0.0, 0.0, 20.0);
  // Bumper gap 20 m at 20 m/s: 1.0 s against 1.5 s -> 0.25 per step.
  const ExpertWorldView view{&map, {moving_actor(25.0, 0.0, 20.0)}};
  EXPECT_NEAR(headway_cost(traj, view, {}, 1.5), 2.5, 1e-9);
  const ExpertWorldView far{&map, {moving_actor(60.0, 0.0, 20.0)}};
  EXPECT_EQ(headway_cost(traj, far, {}, 1.5), 0.0);
}

TEST(ExpertPlan, EmptyRoadKeepsLaneAtLimit)
{
  const world::LaneMap map = world::straight_highway(2, 1000.0);
  const ExpertWorldView view{&map, {}};
  const ExpertResult r = expert_plan(view, test::state(0.0, 0.0, 0.0, 30.0));
  EXPECT_EQ(r.chosen.maneuver, Maneuver::keep);
  for (const auto & s : r.chosen.states) {
    EXPECT_NEAR(s.speed, 30.0, 1e-9);
    EXPECT_NEAR(s.pose.y, 0.0, 1e-6);
  }
  for (std::size_t i = 0; i < r.costs.size(); ++i) EXPECT_GE(r.costs[i].total, r.costs[r.chosen_index].total);
}

TEST(ExpertPlan, BlockedLaneChangesLane)
{
  const world::LaneMap map = world::straight_highway(2, 1000.0);
  const ExpertWorldView view{&map, {static_actor(60.0, 0.0)}};
  const ExpertResult r = expert_plan(view, test::state(0.0, 0.0, 0.0, 20.0));
  EXPECT_EQ(r.chosen.maneuver, Maneuver::left);
  const auto & c = r.costs[r.chosen_index];
  EXPECT_EQ(c.terms[static_cast<std::size_t>(ExpertTerm::collision)], 0.0);
  EXPECT_EQ(c.terms[static_cast<std::size_t>(ExpertTerm::contingency)], 0.0);
}

TEST(ExpertPlan, NoActorsMatchesEmptyWorld)
{
  const world::LaneMap map = world::straight_highway(2, 1000.0);
  const world::EgoState ego = test::state(0.0, 0.0, 0.0, 24.0);
  // An actor far behind and to the side has no influence.
  const ExpertResult a = expert_plan(ExpertWorldView{&map, {}}, ego);
  const ExpertResult b = expert_plan(ExpertWorldView{&map, {static_actor(-400.0, 3.5)}}, ego);
  EXPECT_EQ(a.chosen_index, b.chosen_index);
  for (std::size_t i = 0; i < a.costs.size(); ++i) EXPECT_EQ(a.costs[i].total, b.costs[i].total);
}

TEST(ExpertWeights, JsonRoundTripAndValidation)
{
  ExpertWeights w;
  w.headway = 7.0;
  w.max_decel = 5.0;
  const ExpertWeights back = ExpertWeights::from_json(w.to_json());
  EXPECT_EQ(back.to_json(), w.to_json());
  EXPECT_EQ(ExpertWeights::from_json({{"collision", 3.0}}).collision, 3.0);
  EXPECT_THROW(ExpertWeights::from_json({{"bogus", 1.0}}), std::invalid_argument);
}

}  // namespace
}  // namespace quad::planner
