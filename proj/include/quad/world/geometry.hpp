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

#ifndef QUAD__WORLD__GEOMETRY_HPP_
#define QUAD__WORLD__GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <numbers>

namespace quad::world
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
  constexpr bool operator==(const Vec2 &) const = default;

  constexpr double dot(const Vec2 & o) const { return x * o.x + y * o.y; }
  /// z-component of the 3D cross product; positive when `o` is counter-clockwise of this.
  constexpr double cross(const Vec2 & o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }

/// Wraps an angle to (-pi, pi].
inline double normalize_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) {
    a += two_pi;
  } else if (a > std::numbers::pi) {
    a -= two_pi;
  }
  return a;
}

struct Pose2D
{
  double x{0.0};
  double y{0.0};
  double heading{0.0};

  Vec2 position() const { return {x, y}; }
  bool operator==(const Pose2D &) const = default;
};

/// Rectangle with its center at `center`, long side along `heading`.
struct OrientedBox
{
  Vec2 center;
  double heading{0.0};
  double length{0.0};
  double width{0.0};

  Vec2 axis() const { return unit_from_heading(heading); }
  Vec2 left() const { return unit_from_heading(heading + std::numbers::pi / 2.0); }

  /// Corners in counter-clockwise order starting front-left.
  std::array<Vec2, 4> corners() const;

  /// Exact signed distance to the boundary, negative inside.
  double signed_distance(const Vec2 & p) const;

  bool contains(const Vec2 & p, double tolerance = 0.0) const;
};

/// Separating-axis overlap test; touching boxes do not overlap.
bool overlaps(const OrientedBox & a, const OrientedBox & b);

}  // namespace quad::world

#endif  // QUAD__WORLD__GEOMETRY_HPP_
