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

#include "quad/world/bicycle.hpp"
#include "quad/world/geometry.hpp"
#include "quad/world/lane_map.hpp"
#include "quad/world/polyline.hpp"
#include "quad/world/road_builder.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace quad::world
{
namespace
{

const Polyline kXAxis({{0.0, 0.0}, {10.0, 0.0}});

Polyline three_bends()
{
  return Polyline({{0.0, 0.0}, {10.0, 0.0}, {15.0, 6.0}, {22.0, 4.0}, {30.0, 12.0}});
}

TEST(Projection, PointOnLine)
{
  const Projection pr = project_to_polyline({5.0, 0.0}, kXAxis);
  EXPECT_DOUBLE_EQ(pr.s, 5.0);
  EXPECT_DOUBLE_EQ(pr.d, 0.0);
}

TEST(Projection, LeftIsPositive)
{
  const Projection pr = project_to_polyline({5.0, 2.0}, kXAxis);
  EXPECT_DOUBLE_EQ(pr.s, 5.0);
  EXPECT_DOUBLE_EQ(pr.d, 2.0);
  EXPECT_DOUBLE_EQ(signed_distance({5.0, -3.0}, kXAxis), -3.0);
  EXPECT_DOUBLE_EQ(signed_distance({5.0, 0.0}, kXAxis), 0.0);
}

TEST(Projection, TieResolvesToSmallerArcLength)
{
  // Equidistant from both legs of a symmetric V.
  const Polyline v({{-5.0, 5.0}, {0.0, 0.0}, {5.0, 5.0}});
  const Projection pr = v.project({0.0, 3.0});
  EXPECT_LT(pr.s, v.length() / 2.0);
  EXPECT_EQ(pr.segment, 0u);
}

TEST(Projection, MatchesDenseResampling)
{
  const Polyline pl = three_bends();
  const test::DenseOracle oracle(pl, 1e-3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-5.0, 35.0);
  std::uniform_real_distribution<double> uy(-8.0, 18.0);
  for (int i = 0; i < 100; ++i) {
    const Vec2 p{ux(rng), uy(rng)};
    const Projection pr = pl.project(p);
    const auto ref = oracle.nearest(p);
    EXPECT_NEAR(std::abs(pr.d), ref.distance, 1e-3) << p.x << "," << p.y;
    EXPECT_NEAR(pr.d, ref.signed_distance, 1e-3) << p.x << "," << p.y;
    EXPECT_NEAR(signed_distance(p, pl), ref.signed_distance, 1e-3);
  }
}

TEST(Projection, ContinuousAlongRandomWalk)
{
  const Polyline pl = three_bends();
  std::mt19937_64 rng(11);
  std::normal_distribution<double> step(0.0, 0.05);
  Vec2 p{12.0, 1.0};
  double prev = pl.signed_distance(p);
  for (int i = 0; i < 5000; ++i) {
    const Vec2 q{p.x + step(rng), p.y + step(rng)};
    const double sd = pl.signed_distance(q);
    EXPECT_LT(std::abs(sd - prev), 10.0 * (q - p).norm() + 1e-12);
    p = q;
    prev = sd;
  }
}

TEST(Frenet, StraightLine)
{
  const FrenetResult a = frenet_to_cartesian(5.0, 0.0, kXAxis);
  EXPECT_DOUBLE_EQ(a.pose.x, 5.0);
  EXPECT_DOUBLE_EQ(a.pose.y, 0.0);
  EXPECT_DOUBLE_EQ(a.pose.heading, 0.0);
  EXPECT_FALSE(a.clamped);
  const FrenetResult b = frenet_to_cartesian(5.0, 2.0, kXAxis);
  EXPECT_DOUBLE_EQ(b.pose.x, 5.0);
  EXPECT_DOUBLE_EQ(b.pose.y, 2.0);
}

TEST(Frenet, OutOfRangeIsClampedAndFlagged)
{
  const FrenetResult r = frenet_to_cartesian(12.0, 0.0, kXAxis);
  EXPECT_TRUE(r.clamped);
  EXPECT_DOUBLE_EQ(r.pose.x, 10.0);
  EXPECT_TRUE(frenet_to_cartesian(-1.0, 0.0, kXAxis).clamped);
}

TEST(Frenet, RoundTripOnArcs)
{
  for (double radius : {100.0, -150.0, 250.0}) {
    const Polyline arc = arc_reference(0.0, radius, 120.0, 1.0);
    for (std::size_t k = 0; k + 1 < arc.num_segments(); k += 7) {
      const double s = arc.arc_lengths()[k] + 0.5 * (arc.arc_lengths()[k + 1] - arc.arc_lengths()[k]);
      for (double d : {-3.0, -1.2, 0.0, 0.8, 3.0}) {
        const FrenetResult fr = arc.to_cartesian(s, d);
        const Projection pr = arc.project(fr.pose.position());
        EXPECT_NEAR(pr.s, s, 1e-6);
        EXPECT_NEAR(pr.d, d, 1e-6);
      }
    }
  }
}

TEST(Decompose, StraightLine)
{
  const LatLong a = decompose_lat_long({3.0, 0.0}, {2.0, 0.0}, kXAxis);
  EXPECT_DOUBLE_EQ(a.lat, 0.0);
  EXPECT_DOUBLE_EQ(a.lon, 3.0);
  const LatLong b = decompose_lat_long({0.0, -1.0}, {2.0, 0.0}, kXAxis);
  EXPECT_DOUBLE_EQ(b.lat, -1.0);
  EXPECT_DOUBLE_EQ(b.lon, 0.0);
}

TEST(Decompose, PreservesNorm)
{
  const Polyline arc = arc_reference(10.0, 40.0, 60.0, 0.5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const Vec2 v{u(rng), u(rng)};
    const Vec2 p{u(rng) + 20.0, u(rng) + 10.0};
    const LatLong ll = decompose_lat_long(v, p, arc);
    EXPECT_NEAR(ll.lat * ll.lat + ll.lon * ll.lon, v.dot(v), 1e-9 * std::max(1.0, v.dot(v)));
  }
}

TEST(Geometry, NormalizeAngle)
{
  EXPECT_DOUBLE_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(normalize_angle(3.0 * std::numbers::pi / 2.0), -std::numbers::pi / 2.0, 1e-12);
}

TEST(Geometry, BoxSignedDistanceAndOverlap)
{
  const OrientedBox box{{0.0, 0.0}, 0.0, 4.0, 2.0};
  EXPECT_DOUBLE_EQ(box.signed_distance({0.0, 0.0}), -1.0);
  EXPECT_DOUBLE_EQ(box.signed_distance({5.0, 0.0}), 3.0);
  EXPECT_NEAR(box.signed_distance({5.0, 4.0}), std::hypot(3.0, 3.0), 1e-12);
  EXPECT_TRUE(overlaps(box, {{3.0, 0.0}, 0.3, 4.0, 2.0}));
  EXPECT_FALSE(overlaps(box, {{4.0, 0.0}, 0.0, 4.0, 2.0}));  // touching
  EXPECT_FALSE(overlaps(box, {{0.0, 5.0}, 1.0, 4.0, 2.0}));
}

TEST(Bicycle, ConstantSpeedStraight)
{
  EgoState s;
  s.speed = 10.0;
  const EgoState n = bicycle_step(s, {}, 0.5);
  EXPECT_NEAR(n.pose.x, 5.0, 1e-12);
  EXPECT_NEAR(n.pose.y, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(n.speed, 10.0);
  EXPECT_DOUBLE_EQ(n.curvature, 0.0);
}

TEST(Bicycle, ZeroControlsPreserveSpeedAndCurvature)
{
  EgoState s;
  s.speed = 7.3;
  s.curvature = 0.031;
  const EgoState n = bicycle_step(s, {}, 0.5);
  EXPECT_EQ(n.speed, s.speed);
  EXPECT_EQ(n.curvature, s.curvature);
}

TEST(Bicycle, CircleCloses)
{
  EgoState s;
  s.speed = 10.0;
  s.curvature = 0.05;
  const double period = 2.0 * std::numbers::pi / (s.speed * s.curvature);
  const int n = static_cast<int>(period / 0.01);
  EgoState cur = s;
  for (int i = 0; i < n; ++i) cur = bicycle_step(cur, {}, 0.01);
  cur = bicycle_step(cur, {}, period - n * 0.01);
  EXPECT_LT((cur.pose.position() - s.pose.position()).norm(), 0.05);
}

TEST(Bicycle, NoReverse)
{
  EgoState s;
  s.speed = 1.0;
  const EgoState n = bicycle_step(s, {-5.0, 0.0}, 0.5);
  EXPECT_DOUBLE_EQ(n.speed, 0.0);
  EXPECT_NEAR(n.pose.x, 0.1, 1e-12);  // v^2 / (2a)
}

TEST(Bicycle, CurvatureClamped)
{
  EgoState s;
  s.speed = 5.0;
  s.curvature = 0.19;
  const EgoState n = bicycle_step(s, {0.0, 1.0}, 0.5);
  EXPECT_DOUBLE_EQ(n.curvature, 0.2);
}

TEST(LaneMap, CenterlinesLieBetweenBoundaries)
{
  for (const LaneMap & map : {straight_highway(3, 300.0), test::curved_two_lane()}) {
    for (const Lane & lane : map.lanes()) {
      for (const Vec2 & p : lane.centerline.points()) {
        EXPECT_LT(lane.left_boundary.line.signed_distance(p), 0.0);
        EXPECT_GT(lane.right_boundary.line.signed_distance(p), 0.0);
      }
      EXPECT_GT(lane.speed_limit, 0.0);
    }
  }
}

TEST(LaneMap, LocateAndRoute)
{
  const LaneMap map = straight_highway(3, 300.0, 30.0, 1);
  const LaneLocation a = map.locate({0.0, 0.3});
  EXPECT_EQ(map.lane(a.lane).id, RoadBuilder::lane_id(0, 0));
  EXPECT_TRUE(a.contained);
  EXPECT_NEAR(a.projection.d, 0.3, 1e-12);
  const LaneLocation b = map.locate({0.0, 7.4});
  EXPECT_EQ(map.lane(b.lane).id, RoadBuilder::lane_id(0, 2));
  const LaneLocation r = map.locate_on_route({0.0, 0.0});
  EXPECT_NEAR(r.projection.d, -3.5, 1e-12);
  EXPECT_FALSE(map.locate({0.0, 40.0}).contained);
}

TEST(LaneMap, NeighborsAndEdges)
{
  const LaneMap map = straight_highway(2, 200.0);
  const Lane & right = map.lane(RoadBuilder::lane_id(0, 0));
  const Lane & left = map.lane(RoadBuilder::lane_id(0, 1));
  EXPECT_EQ(right.left_neighbor, left.id);
  EXPECT_FALSE(right.right_neighbor.has_value());
  EXPECT_TRUE(right.right_boundary.solid);
  EXPECT_FALSE(right.left_boundary.solid);
  EXPECT_TRUE(left.left_boundary.solid);
}

TEST(LaneMap, JsonRoundTrip)
{
  const LaneMap map = test::curved_two_lane();
  const LaneMap back = LaneMap::from_json(map.to_json());
  ASSERT_EQ(back.lanes().size(), map.lanes().size());
  EXPECT_EQ(back.route(), map.route());
  EXPECT_EQ(back.to_json(), map.to_json());
}

TEST(LaneMap, RejectsInvalidDocuments)
{
  nlohmann::json doc = straight_highway(2, 100.0).to_json();
  nlohmann::json bad_route = doc;
  bad_route["route"] = {"nope"};
  EXPECT_THROW(LaneMap::from_json(bad_route), std::invalid_argument);
  nlohmann::json bad_speed = doc;
  bad_speed["lanes"][0]["speed_limit"] = 0.0;
  EXPECT_THROW(LaneMap::from_json(bad_speed), std::invalid_argument);
  nlohmann::json swapped = doc;
  std::swap(swapped["lanes"][0]["left_boundary"], swapped["lanes"][0]["right_boundary"]);
  EXPECT_THROW(LaneMap::from_json(swapped), std::invalid_argument);
  EXPECT_THROW(Polyline({{0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(Polyline({{0.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
}

TEST(LaneMap, BasePathFollowsSuccessors)
{
  RoadBuilder builder(straight_reference(0.0, 400.0));
  builder.add_section({0.0, 150.0, 0, 1, {}, 30.0});
  builder.add_section({150.0, 400.0, 0, 1, {}, 25.0});
  const LaneMap map = builder.build({RoadBuilder::lane_id(0, 0), RoadBuilder::lane_id(1, 0)});
  const Polyline path = map.base_path(map.index_of(RoadBuilder::lane_id(0, 0)), 300.0);
  EXPECT_GE(path.length(), 300.0);
  EXPECT_NEAR(path.signed_distance({250.0, 0.0}), 0.0, 1e-9);
  EXPECT_EQ(map.lane(RoadBuilder::lane_id(0, 0)).successors.front(), RoadBuilder::lane_id(1, 0));
}

}  // namespace
}  // namespace quad::world
