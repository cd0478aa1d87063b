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


#include "quad/occupancy/grid_field.hpp"
#include "quad/occupancy/occupancy_field.hpp"
#include "quad/occupancy/oracle_field.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace quad::occupancy
{
namespace
{

using world::OrientedBox;

ActorPlan static_actor(double x, double y, double heading = 0.0, double length = 5.0, double width = 2.0)
{
  ActorPlan plan;
  for (double t : {0.0, 5.0}) plan.samples.push_back({t, {{x, y}, heading, length, width}});
  return plan;
}

ActorPlan moving_actor(double x0, double vx)
{
  ActorPlan plan;
  for (int k = 0; k <= 10; ++k) {
    const double t = 0.5 * k;
    plan.samples.push_back({t, {{x0 + vx * t, 0.0}, 0.0, 5.0, 2.0}});
  }
  return plan;
}

TEST(Oracle, InteriorPointIsOccupied)
{
  const OracleField f({static_actor(3.0, -1.0)}, 0.0);
  EXPECT_DOUBLE_EQ(oracle_query(f, {3.0, -1.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(oracle_query(f, {9.0, -1.0, 0.0}), 0.0);
}

TEST(Oracle, FarFieldVanishes)
{
  const OracleField f({static_actor(0.0, 0.0)}, 0.25);
  EXPECT_LT(oracle_query(f, {0.0, 51.0, 2.0}), 1e-8);
}

TEST(Oracle, InterpolatesMovingActor)
{
  ActorPlan plan;
  plan.samples = {{0.0, {{0.0, 0.0}, 0.0, 5.0, 2.0}}, {5.0, {{50.0, 0.0}, 0.0, 5.0, 2.0}}};
  const OracleField f({plan}, 0.0);
  EXPECT_DOUBLE_EQ(oracle_query(f, {5.0, 0.0, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(oracle_query(f, {0.0, 0.0, 0.5}), 0.0);  // actor has left x = 0
  const OrientedBox b = plan.box_at(0.5);
  EXPECT_DOUBLE_EQ(b.center.x, 5.0);
}

TEST(Oracle, HorizonExceeded)
{
  const OracleField f({static_actor(0.0, 0.0)}, 0.25, 5.0);
  EXPECT_THROW(oracle_query(f, {0.0, 0.0, 5.5}), HorizonError);
  EXPECT_THROW(oracle_query(f, {0.0, 0.0, -0.1}), HorizonError);
  try {
    oracle_query(f, {0.0, 0.0, 7.0});
  } catch (const HorizonError & e) {
    EXPECT_STREQ(e.what(), "occupancy horizon exceeded");
  }
  EXPECT_NO_THROW(oracle_query(f, {0.0, 0.0, 5.0}));
}

TEST(Oracle, MonotoneAlongOutwardNormal)
{
  const OracleField f({static_actor(0.0, 0.0, 0.4)}, 0.25);
  const world::Vec2 n = world::unit_from_heading(0.4 + std::numbers::pi / 2.0);
  double prev = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double r = 0.02 * i;
    const double p = oracle_query(f, {n.x * r, n.y * r, 1.0});
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(Oracle, AddingActorNeverDecreases)
{
  const OracleField one({moving_actor(0.0, 10.0)}, 0.25);
  const OracleField two({moving_actor(0.0, 10.0), static_actor(20.0, 1.0, 0.3)}, 0.25);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-10.0, 60.0);
  std::uniform_real_distribution<double> uy(-5.0, 5.0);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const QueryPoint q{ux(rng), uy(rng), ut(rng)};
    EXPECT_GE(oracle_query(two, q), oracle_query(one, q));
  }
}

TEST(Oracle, SharpLimitMatchesIndicator)
{
  const ActorPlan actor = static_actor(1.0, 2.0, 0.7);
  const OracleField soft({actor}, 1e-4);
  const OrientedBox box = actor.box_at(0.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-4.0, 6.0);
  int disagreements_far = 0;
  for (int i = 0; i < 20000; ++i) {
    const world::Vec2 p{u(rng), u(rng) + 1.0};
    const double sd = box.signed_distance(p);
    const bool inside = sd < 0.0;
    const bool soft_inside = oracle_query(soft, {p.x, p.y, 1.0}) > 0.5;
    if (inside != soft_inside && std::abs(sd) > 1e-3) ++disagreements_far;
    if (std::abs(sd) > 1e-3) {
      EXPECT_NEAR(oracle_query(soft, {p.x, p.y, 1.0}), inside ? 1.0 : 0.0, 1e-4);
    }
  }
  EXPECT_EQ(disagreements_far, 0);
}

TEST(Oracle, NoiseIsSeeded)
{
  const std::vector<ActorPlan> actors{static_actor(0.0, 0.0), moving_actor(10.0, 5.0)};
  const OracleField a(actors, 0.25, 5.0, NoiseModel{0.3, 42});
  const OracleField b(actors, 0.25, 5.0, NoiseModel{0.3, 42});
  const OracleField c(actors, 0.25, 5.0, NoiseModel{0.3, 43});
  const OracleField clean(actors, 0.25);
  const QueryPoint q{2.4, 0.9, 0.0};
  EXPECT_EQ(oracle_query(a, q), oracle_query(b, q));
  EXPECT_NE(oracle_query(a, q), oracle_query(clean, q));
  EXPECT_NE(oracle_query(a, q), oracle_query(c, q));
}

TEST(Oracle, BatchCountsEvaluations)
{
  const OracleField f({static_actor(0.0, 0.0)}, 0.25);
  std::vector<QueryPoint> pts(37, QueryPoint{1.0, 1.0, 1.0});
  std::vector<double> out(pts.size());
  f.query_batch(pts, out);
  EXPECT_EQ(f.evaluations(), 37u);
  for (double p : out) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
  f.reset_evaluations();
  EXPECT_EQ(f.evaluations(), 0u);
}

TEST(Oracle, RejectsBadInputs)
{
  EXPECT_THROW(OracleField({static_actor(0.0, 0.0)}, -1.0), std::invalid_argument);
  EXPECT_THROW(OracleField({static_actor(0.0, 0.0, 0.0, 0.0, 2.0)}, 0.2), std::invalid_argument);
}

TEST(Grid, EmptyWorldIsZero)
{
  const OracleField empty({}, 0.25);
  const GridField g = grid_build(empty, {0.0, 0.0, 10.0, 10.0}, 1.0, {0.0});
  EXPECT_EQ(g.size(), 100u);
  for (std::size_t iy = 0; iy < g.ny(); ++iy) {
    for (std::size_t ix = 0; ix < g.nx(); ++ix) EXPECT_EQ(g.at(0, iy, ix), 0.0);
  }
}

TEST(Grid, ActorInsideMatchesPointInBox)
{
  const ActorPlan actor = static_actor(5.2, 4.9, 0.3);
  const OracleField f({actor}, 0.0);
  const GridField g = grid_build(f, {0.0, 0.0, 10.0, 10.0}, 1.0, {0.0, 0.5});
  const OrientedBox box = actor.box_at(0.0);
  int inside = 0;
  for (std::size_t it = 0; it < 2; ++it) {
    for (std::size_t iy = 0; iy < g.ny(); ++iy) {
      for (std::size_t ix = 0; ix < g.nx(); ++ix) {
        const QueryPoint c = g.cell_center(it, iy, ix);
        const bool in = box.signed_distance({c.x, c.y}) < 0.0;
        inside += in;
        EXPECT_EQ(g.at(it, iy, ix), in ? 1.0 : 0.0);
        EXPECT_EQ(grid_query(g, c), oracle_query(f, c));
      }
    }
  }
  EXPECT_GT(inside, 0);
}

TEST(Grid, LipschitzBoundAgainstOracle)
{
  const double sigma = 0.25;
  const double res = 0.5;
  const OracleField f({moving_actor(0.0, 8.0), static_actor(12.0, 3.0, 0.5)}, sigma);
  std::vector<double> times;
  for (int k = 0; k <= 10; ++k) times.push_back(0.5 * k);
  const GridField g = grid_build(f, {-10.0, -10.0, 50.0, 10.0}, res, times);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(-10.0, 50.0);
  std::uniform_real_distribution<double> uy(-10.0, 10.0);
  std::uniform_int_distribution<int> ut(0, 10);
  const double bound = res * std::sqrt(2.0) / 2.0 / (4.0 * sigma);
  for (int i = 0; i < 5000; ++i) {
    const QueryPoint q{ux(rng), uy(rng), 0.5 * ut(rng)};
    EXPECT_LE(std::abs(grid_query(g, q) - oracle_query(f, q)), bound + 1e-12);
  }
}

TEST(Grid, OutOfExtentCounted)
{
  const OracleField f({static_actor(0.0, 0.0)}, 0.25);
  const GridField g = grid_build(f, {-5.0, -5.0, 5.0, 5.0}, 1.0, {0.0});
  EXPECT_EQ(grid_query(g, {20.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(grid_query(g, {0.0, -6.0, 0.0}), 0.0);
  EXPECT_EQ(g.out_of_extent(), 2u);
  EXPECT_GT(grid_query(g, {0.1, 0.1, 0.0}), 0.5);
  EXPECT_EQ(g.out_of_extent(), 2u);
}

TEST(Grid, CsvHasOneRowPerCell)
{
  const OracleField f({}, 0.25);
  const GridField g = grid_build(f, {0.0, 0.0, 3.0, 2.0}, 1.0, {0.0, 0.5});
  std::ostringstream os;
  g.write_csv(os);
  const std::string csv = os.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 12);
}

TEST(Constant, ReturnsValue)
{
  const ConstantField f(0.7);
  EXPECT_DOUBLE_EQ(f.query({1.0, 2.0, 3.0}), 0.7);
  EXPECT_THROW(f.query({1.0, 2.0, 9.0}), HorizonError);
}

}  // namespace
}  // namespace quad::occupancy
