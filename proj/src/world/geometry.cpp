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

#include "quad/world/geometry.hpp"

#include <algorithm>

namespace quad::world
{

std::array<Vec2, 4> OrientedBox::corners() const
{
  const Vec2 f = axis() * (length / 2.0);
  const Vec2 l = left() * (width / 2.0);
  return {center + f + l, center - f + l, center - f - l, center + f - l};
}

double OrientedBox::signed_distance(const Vec2 & p) const
{
  const Vec2 rel = p - center;
  const Vec2 ax = axis();
  const double lx = std::abs(rel.dot(ax)) - length / 2.0;
  const double ly = std::abs(ax.cross(rel)) - width / 2.0;
  const double outside = std::hypot(std::max(lx, 0.0), std::max(ly, 0.0));
  const double inside = std::min(std::max(lx, ly), 0.0);
  return outside + inside;
}

bool OrientedBox::contains(const Vec2 & p, double tolerance) const
{
  const Vec2 rel = p - center;
  const Vec2 ax = axis();
  return std::abs(rel.dot(ax)) <= length / 2.0 + tolerance &&
         std::abs(ax.cross(rel)) <= width / 2.0 + tolerance;
}

namespace
{
// Projects the box onto `dir` and returns the half-extent around the projected center.
double half_extent(const OrientedBox & b, const Vec2 & dir)
{
  return std::abs(b.axis().dot(dir)) * b.length / 2.0 + std::abs(b.left().dot(dir)) * b.width / 2.0;
}
}  // namespace

bool overlaps(const OrientedBox & a, const OrientedBox & b)
{
  const Vec2 d = b.center - a.center;
  for (const Vec2 & axis : {a.axis(), a.left(), b.axis(), b.left()}) {
    if (std::abs(d.dot(axis)) >= half_extent(a, axis) + half_extent(b, axis)) {
      return false;
    }
  }
  return true;
}

}  // namespace quad::world
