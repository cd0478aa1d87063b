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

#ifndef QUAD__WORLD__POLYLINE_HPP_
#define QUAD__WORLD__POLYLINE_HPP_

#include "quad/world/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace quad::world
{

/// Closest-point projection onto a polyline.
struct Projection
{
  double s{0.0};  ///< arc length of the foot point
  double d{0.0};  ///< signed lateral offset, positive to the left of travel
  std::size_t segment{0};
};

struct FrenetResult
{
  Pose2D pose;
  bool clamped{false};  ///< s was outside [0, length] and got clamped to an endpoint
};

struct LatLong
{
  double lat{0.0};
  double lon{0.0};
};

/// Piecewise-linear path with cumulative arc length.
///
/// Construction validates the invariants: at least two points, no
/// consecutive duplicates. Everything else is const.
class Polyline
{
public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> points);

  const std::vector<Vec2> & points() const { return points_; }
  const std::vector<double> & arc_lengths() const { return arc_; }
  double length() const { return arc_.empty() ? 0.0 : arc_.back(); }
  std::size_t num_segments() const { return points_.empty() ? 0 : points_.size() - 1; }
  bool empty() const { return points_.empty(); }

  Vec2 segment_tangent(std::size_t segment) const;
  std::size_t segment_at(double s) const;

  /// Global minimum-distance projection. Ties resolve to the smaller arc length.
  Projection project(const Vec2 & p) const;

  double signed_distance(const Vec2 & p) const { return project(p).d; }

  /// Point at arc length s offset by d along the left normal. Heading is the
  /// tangent heading of the segment holding s.
  FrenetResult to_cartesian(double s, double d) const;

  /// Tangent heading interpolated between segment midpoints; continuous in s.
  double smooth_heading(double s) const;
  /// Derivative of smooth_heading with respect to s.
  double smooth_curvature(double s) const;

  /// Components of v along the tangent and left normal at the projection of p.
  LatLong decompose(const Vec2 & v, const Vec2 & p) const;

  /// Copy with a straight extension of the final segment by `extra` meters.
  Polyline extended(double extra) const;

  /// Joins polylines end to start; a shared join point is emitted once.
  static Polyline concatenate(std::span<const Polyline> parts);

private:
  std::vector<Vec2> points_;
  std::vector<double> arc_;
};

Projection project_to_polyline(const Vec2 & p, const Polyline & pl);
double signed_distance(const Vec2 & p, const Polyline & pl);
FrenetResult frenet_to_cartesian(double s, double d, const Polyline & pl);
LatLong decompose_lat_long(const Vec2 & v, const Vec2 & p, const Polyline & pl);

}  // namespace quad::world

#endif  // QUAD__WORLD__POLYLINE_HPP_
