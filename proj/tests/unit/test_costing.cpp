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
#include "quad/occupancy/oracle_field.hpp"
#include "quad/world/road_builder.hpp"

#include "cost_oracle.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace quad::costing
{
namespace
{

using occupancy::ActorPlan;
using occupancy::ConstantField;
using occupancy::OracleField;
using query::EvaluatedQueries;
using query::QueryConfig;
using world::LaneMap;

Weights ones()
{
  Weights w;
  w.values.fill(1.0);
  return w;
}

EvaluatedQueries queries_for(const Trajectory & t, const occupancy::OccupancyField & f, QueryConfig cfg = {})
{
  return query::run_queries(std::span<const Trajectory>(&t, 1), f, cfg);
}

Trajectory offset_straight(double y, double v)
{
  return test::straight(-50.0, y, 0.0, v);
}

TEST(Comfort, ConstantSpeedStraightIsFree)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  EXPECT_DOUBLE_EQ(comfort_cost(offset_straight(0.0, 20.0), map, ones()), 0.0);
}

TEST(Comfort, ConstantLongitudinalAccel)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  const Trajectory t = test::straight(-50.0, 0.0, 0.0, 5.0, 2.0);
  EXPECT_NEAR(comfort_cost(t, map, ones()), 40.0, 1e-9);
  const auto terms = comfort_terms(t, map);
  EXPECT_NEAR(terms[1], 40.0, 1e-9);
  EXPECT_NEAR(terms[2], 0.0, 1e-12);
}

TEST(Comfort, CentripetalIsLateral)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  Trajectory t = offset_straight(0.0, 10.0);
  for (auto & s : t.states) s.curvature = 0.01;  // 1 m/s^2 lateral
  const auto terms = comfort_terms(t, map);
  EXPECT_NEAR(terms[0], 10.0, 1e-9);
  EXPECT_NEAR(terms[1], 0.0, 1e-12);
  EXPECT_NEAR(terms[3], 10.0 * 1e-4, 1e-15);
}

TEST(Corridor, Offsets)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  EXPECT_DOUBLE_EQ(corridor_cost(offset_straight(0.0, 10.0), map), 0.0);
  EXPECT_NEAR(corridor_cost(offset_straight(0.75, 10.0), map), 7.5, 1e-12);
}

TEST(Boundary, InsideLaneIsFree)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  EXPECT_DOUBLE_EQ(boundary_cost(offset_straight(1.0, 10.0), map), 0.0);
}

TEST(Boundary, SolidCrossingForFourSteps)
{
  const LaneMap map = world::straight_highway(1, 400.0);
  Trajectory t = offset_straight(0.0, 10.0);
  for (int k = 1; k <= 4; ++k) t.states[k].pose.y = 1.75 + 0.3;
  EXPECT_NEAR(boundary_cost(t, map), 1.2, 1e-12);
  Trajectory r = offset_straight(0.0, 10.0);
  r.states[10].pose.y = -1.75 - 0.5;
  EXPECT_NEAR(boundary_cost(r, map), 0.5, 1e-12);
}

TEST(Boundary, DashedCrossingIsFree)
{
  const LaneMap map = world::straight_highway(2, 400.0);
  const Trajectory t = test::trajectory_from([](double time) {
    return test::state(-50.0 + 10.0 * time, 3.5 * time / 5.0, 0.0, 10.0);
  });
  EXPECT_DOUBLE_EQ(boundary_cost(t, map), 0.0);
}

TEST(SpeedLimit, Formula)
{
  const LaneMap map = world::straight_highway(1, 400.0, 25.0);
  EXPECT_DOUBLE_EQ(speed_limit_cost(offset_straight(0.0, 25.0), map), 0.0);
  Trajectory t = offset_straight(0.0, 20.0);
  t.states[4].speed = 26.0;
  EXPECT_DOUBLE_EQ(speed_limit_cost(t, map), 1.0);
  t.states[4].speed = 28.0;
  EXPECT_DOUBLE_EQ(speed_limit_cost(t, map), 9.0);
  t.states[0].speed = 40.0;  // current state is not costed
  EXPECT_DOUBLE_EQ(speed_limit_cost(t, map), 9.0);
}

TEST(Progress, NegativePathLength)
{
  EXPECT_DOUBLE_EQ(progress_cost(offset_straight(0.0, 0.0)), 0.0);
  EXPECT_NEAR(progress_cost(offset_straight(0.0, 10.0)), -50.0, 1e-12);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Trajectory t = test::random_trajectory(rng);
    double len = 0.0;
    for (int k = 1; k <= 10; ++k) {
      len += std::hypot(t.states[k].pose.x - t.states[k - 1].pose.x, t.states[k].pose.y - t.states[k - 1].pose.y);
    }
    EXPECT_NEAR(progress_cost(t), -len, 1e-9);
  }
}

TEST(Route, OneLaneOff)
{
  const LaneMap map = world::straight_highway(2, 400.0, 30.0, 0);
  EXPECT_DOUBLE_EQ(route_cost(offset_straight(0.0, 10.0), map), 0.0);
  EXPECT_NEAR(route_cost(offset_straight(3.5, 10.0), map), 35.0, 1e-12);
  CostOptions opt;
  opt.route_speed_modulation = true;
  opt.reference_speed = 15.0;
  EXPECT_NEAR(route_cost(offset_straight(3.5, 10.0), map, opt), 70.0, 1e-12);
}

TEST(Collision, ConstantFields)
{
  const Trajectory t = offset_straight(0.0, 10.0);
  const ConstantField zero(0.0);
  const ConstantField one(1.0);
  const auto eq0 = queries_for(t, zero);
  const auto eq1 = queries_for(t, one);
  EXPECT_DOUBLE_EQ(collision_cost(eq0.view(0)).value, 0.0);
  const CollisionCost c1 = collision_cost(eq1.view(0));
  EXPECT_DOUBLE_EQ(c1.value, 55.0);
  ASSERT_EQ(c1.terms.size(), 10u);
  EXPECT_DOUBLE_EQ(c1.terms[0], 10.0);
  EXPECT_DOUBLE_EQ(c1.terms[9], 1.0);
  EXPECT_DOUBLE_EQ(buffer_cost(eq0.view(0), BufferSide::longitudinal), 0.0);
  EXPECT_DOUBLE_EQ(buffer_cost(eq1.view(0), BufferSide::longitudinal), 55.0);
  EXPECT_DOUBLE_EQ(buffer_cost(eq1.view(0), BufferSide::lateral), 55.0);
}

/// Actor crossing the ego path (moving +y) that sits inside swept box `step`
/// only at that box's query time.
ActorPlan crossing_actor(int step)
{
  ActorPlan plan;
  const double t_hit = (step + 1) * kPlanDt;
  const double x = 5.0 * step + 2.5;  // mid-box of a 10 m/s ego starting at 0
  for (int k = 0; k <= 10; ++k) {
    const double t = k * kPlanDt;
    plan.samples.push_back({t, {{x, 20.0 * (t - t_hit)}, std::numbers::pi / 2.0, 5.0, 2.0}});
  }
  return plan;
}

TEST(Collision, SingleStepOverlap)
{
  const Trajectory t = test::straight(0.0, 0.0, 0.0, 10.0);
  const OracleField f3({crossing_actor(3)}, 0.0);
  const auto eq3 = queries_for(t, f3);
  const CollisionCost c3 = collision_cost(eq3.view(0));
  EXPECT_DOUBLE_EQ(c3.value, 7.0);
  for (int k = 0; k < 10; ++k) EXPECT_DOUBLE_EQ(c3.terms[k], k == 3 ? 7.0 : 0.0);

  // Dense in-box sampling at 0.05 m without quantization agrees.
  const auto dense = test::oracle_agent_aware(t, f3, 0.05, 0.0);
  EXPECT_DOUBLE_EQ(dense.collision, 7.0);

  // Earlier collisions cost more.
  const OracleField f1({crossing_actor(1)}, 0.0);
  const auto eq1 = queries_for(t, f1);
  EXPECT_GT(collision_cost(eq1.view(0)).value, c3.value);
}

TEST(Buffer, ActorAheadIsLongitudinal)
{
  const Trajectory t = test::straight(0.0, 0.0, 0.0, 10.0);
  ActorPlan lead;
  for (int k = 0; k <= 10; ++k) {
    const double time = k * kPlanDt;
    lead.samples.push_back({time, {{10.0 + 10.0 * time, 0.0}, 0.0, 5.0, 2.0}});
  }
  const OracleField f({lead}, 0.25);
  const auto eq = queries_for(t, f);
  const double lon = buffer_cost(eq.view(0), BufferSide::longitudinal);
  const double lat = buffer_cost(eq.view(0), BufferSide::lateral);
  EXPECT_GT(lon, 1.0);
  EXPECT_LT(lat, 1e-6);
  EXPECT_LT(collision_cost(eq.view(0)).value, 1e-6);
  const auto ref = test::oracle_agent_aware(t, f, 0.5, 0.5);
  EXPECT_NEAR(lon, ref.buffer_long, 1e-9);
  EXPECT_NEAR(lat, ref.buffer_lat, 1e-9);
}

TEST(AgentAware, MonotoneInOccupancy)
{
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const Trajectory t = test::random_trajectory(rng);
    const OracleField small({crossing_actor(2)}, 0.25);
    const OracleField big({crossing_actor(2), crossing_actor(6)}, 0.25);
    const auto a = queries_for(t, small);
    const auto b = queries_for(t, big);
    EXPECT_LE(collision_cost(a.view(0)).value, collision_cost(b.view(0)).value);
    EXPECT_LE(buffer_cost(a.view(0), BufferSide::longitudinal), buffer_cost(b.view(0), BufferSide::longitudinal));
    EXPECT_LE(buffer_cost(a.view(0), BufferSide::lateral), buffer_cost(b.view(0), BufferSide::lateral));
  }
}

Trajectory random_on_map(std::mt19937_64 & rng, const LaneMap & map)
{
  std::uniform_real_distribution<double> ux(0.0, 120.0);
  std::uniform_real_distribution<double> uy(-2.5, 6.0);
  Trajectory t = test::random_trajectory(rng, ux(rng), uy(rng));
  t.base_lane = std::uniform_int_distribution<std::size_t>(0, map.lanes().size() - 1)(rng);
  return t;
}

TEST(Oracle, AgnosticFeaturesMatchBruteForce)
{
  const std::array<LaneMap, 2> maps{world::straight_highway(2, 400.0, 22.0, 1), test::curved_two_lane()};
  std::mt19937_64 rng(99);
  for (const LaneMap & map : maps) {
    for (int i = 0; i < 50; ++i) {
      const Trajectory t = random_on_map(rng, map);
      const FeatureVector got = agnostic_features(t, map);
      const FeatureVector ref = test::oracle_agnostic(t, map);
      for (std::size_t k = 0; k < kNumFeatures; ++k) {
        EXPECT_NEAR(got[k], ref[k], 1e-9) << feature_name(static_cast<Feature>(k));
      }
      const auto comfort = comfort_terms(t, map);
      EXPECT_NEAR(comfort[0], ref[0], 1e-9);
      EXPECT_NEAR(corridor_cost(t, map), ref[static_cast<std::size_t>(Feature::corridor)], 1e-9);
      EXPECT_NEAR(boundary_cost(t, map), ref[static_cast<std::size_t>(Feature::boundary)], 1e-9);
      EXPECT_NEAR(speed_limit_cost(t, map), ref[static_cast<std::size_t>(Feature::speed)], 1e-9);
      EXPECT_NEAR(route_cost(t, map), ref[static_cast<std::size_t>(Feature::route)], 1e-9);
    }
  }
}

TEST(Oracle, AgentAwareMatchesBruteForce)
{
  std::mt19937_64 rng(17);
  const OracleField f({crossing_actor(2), crossing_actor(5)}, 0.25);
  for (int i = 0; i < 10; ++i) {
    const Trajectory t = test::random_trajectory(rng, 0.0, 0.0);
    const auto eq = queries_for(t, f);
    const auto ref = test::oracle_agent_aware(t, f, 0.5, 0.5);
    const CollisionCost c = collision_cost(eq.view(0));
    EXPECT_NEAR(c.value, ref.collision, 1e-6);
    for (int k = 0; k < 10; ++k) EXPECT_NEAR(c.terms[k], ref.collision_terms[k], 1e-6);
    EXPECT_NEAR(buffer_cost(eq.view(0), BufferSide::longitudinal), ref.buffer_long, 1e-6);
    EXPECT_NEAR(buffer_cost(eq.view(0), BufferSide::lateral), ref.buffer_lat, 1e-6);
  }
}

TEST(Total, LinearInWeights)
{
  const LaneMap map = world::straight_highway(2, 400.0, 22.0, 1);
  const OracleField f({crossing_actor(3)}, 0.25);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uw(0.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const Trajectory t = random_on_map(rng, map);
    const auto eq = queries_for(t, f);
    EXPECT_DOUBLE_EQ(total_cost(t, eq.view(0), map, Weights{}).total, 0.0);
    Weights w;
    for (double & v : w.values) v = uw(rng);
    const CostBreakdown b = total_cost(t, eq.view(0), map, w);
    double dot = 0.0;
    for (std::size_t k = 0; k < kNumFeatures; ++k) dot += w.values[k] * b.features[k];
    EXPECT_NEAR(b.total, dot, 1e-9 * std::max(1.0, std::abs(dot)));
    EXPECT_EQ(total_cost(t, eq.view(0), map, w.scaled(2.0)).total, 2.0 * b.total);
    EXPECT_NEAR(b.feature(Feature::collision), collision_cost(eq.view(0)).value, 1e-12);
  }
}

TEST(Total, AgnosticCostsIgnoreOccupancy)
{
  const LaneMap map = test::curved_two_lane();
  std::mt19937_64 rng(6);
  const ConstantField zero(0.0);
  const ConstantField some(0.8);
  for (int i = 0; i < 10; ++i) {
    const Trajectory t = random_on_map(rng, map);
    const auto a = queries_for(t, zero);
    const auto b = queries_for(t, some);
    const CostBreakdown ca = total_cost(t, a.view(0), map, ones());
    const CostBreakdown cb = total_cost(t, b.view(0), map, ones());
    for (Feature f : {Feature::acc_lat, Feature::acc_long, Feature::jerk, Feature::curvature,
                      Feature::corridor, Feature::boundary, Feature::speed, Feature::progress,
                      Feature::route}) {
      EXPECT_EQ(ca.feature(f), cb.feature(f));
    }
  }
}

TEST(Weights, JsonRoundTrip)
{
  const Weights w = Weights::defaults();
  const nlohmann::json doc = w.to_json();
  EXPECT_TRUE(doc.contains("w_curv"));
  EXPECT_TRUE(doc.contains("w_buf_lat"));
  EXPECT_EQ(Weights::from_json(doc).values, w.values);
  nlohmann::json bad = doc;
  bad["w_nope"] = 1.0;
  EXPECT_THROW(Weights::from_json(bad), std::invalid_argument);
  bad = doc;
  bad["w_col"] = -1.0;
  EXPECT_THROW(Weights::from_json(bad), std::invalid_argument);
}

TEST(Weights, GroupsAndAblation)
{
  const Weights w = Weights::defaults().without(CostGroup::comfort);
  EXPECT_EQ(w[Feature::acc_lat], 0.0);
  EXPECT_EQ(w[Feature::jerk], 0.0);
  EXPECT_GT(w[Feature::collision], 0.0);
  EXPECT_EQ(group_from_name("speed_limit"), CostGroup::speed_limit);
  EXPECT_FALSE(group_from_name("bogus").has_value());
  EXPECT_EQ(feature_from_name(feature_name(Feature::buffer_lat)), Feature::buffer_lat);
}

}  // namespace
}  // namespace quad::costing
