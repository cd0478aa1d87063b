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

#include "quad/world/polyline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace quad::world
{

Polyline::Polyline(std::vector<Vec2> points) : points_(std::move(points))
{
  if (points_.size() < 2) {
    throw std::invalid_argument("polyline needs at least two points");
  }
  arc_.reserve(points_.size());
  arc_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double len = (points_[i] - points_[i - 1]).norm();
    if (!(len > 0.0)) {
      throw std::invalid_argument("polyline has repeated consecutive points");
    }
    arc_.push_back(arc_.back() + len);
  }
}

Vec2 Polyline::segment_tangent(std::size_t segment) const
{
  const Vec2 d = points_[segment + 1] - points_[segment];
  return d * (1.0 / (arc_[segment + 1] - arc_[segment]));
}

std::size_t Polyline::segment_at(double s) const
{
  // upper_bound gives the first vertex strictly past s; the segment starts one before it.
  const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - arc_.begin() - 1, 0));
  return std::min(idx, num_segments() - 1);
}

Projection Polyline::project(const Vec2 & p) const
{
  Projection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Vec2 a = points_[i];
    const double seg_len = arc_[i + 1] - arc_[i];
    const Vec2 t = (points_[i + 1] - a) * (1.0 / seg_len);
    const Vec2 rel = p - a;
    const double u = std::clamp(rel.dot(t), 0.0, seg_len);
    const Vec2 foot = a + t * u;
    const Vec2 off = p - foot;
    const double d2 = off.dot(off);
    if (d2 < best_d2) {
      best_d2 = d2;
      best.s = arc_[i] + u;
      best.segment = i;
      const double side = t.cross(off);
      best.d = side >= 0.0 ? std::sqrt(d2) : -std::sqrt(d2);
    }
  }
  return best;
}

FrenetResult Polyline::to_cartesian(double s, double d) const
{
  FrenetResult out;
  if (s < 0.0 || s > length()) {
    out.clamped = true;
    s = std::clamp(s, 0.0, length());
  }
  const std::size_t seg = segment_at(s);
  const Vec2 t = segment_tangent(seg);
  const Vec2 n{-t.y, t.x};
  const Vec2 p = points_[seg] + t * (s - arc_[seg]) + n * d;
  out.pose = {p.x, p.y, std::atan2(t.y, t.x)};
  return out;
}

double Polyline::smooth_heading(double s) const
{
  const std::size_t n = num_segments();
  auto heading = [&](std::size_t i) {
    const Vec2 t = segment_tangent(i);
    return std::atan2(t.y, t.x);
  };
  auto mid = [&](std::size_t i) { return 0.5 * (arc_[i] + arc_[i + 1]); };
  if (n == 1 || s <= mid(0)) {
    return heading(0);
  }
  if (s >= mid(n - 1)) {
    return heading(n - 1);
  }
  std::size_t i = segment_at(s);
  if (s < mid(i)) {
    --i;
  }
  const double h0 = heading(i);
  const double dh = normalize_angle(heading(i + 1) - h0);
  const double w = (s - mid(i)) / (mid(i + 1) - mid(i));
  return normalize_angle(h0 + w * dh);
}

double Polyline::smooth_curvature(double s) const
{
  const std::size_t n = num_segments();
  auto mid = [&](std::size_t i) { return 0.5 * (arc_[i] + arc_[i + 1]); };
  if (n == 1 || s <= mid(0) || s >= mid(n - 1)) {
    return 0.0;
  }
  std::size_t i = segment_at(s);
  if (s < mid(i)) {
    --i;
  }
  const Vec2 t0 = segment_tangent(i);
  const Vec2 t1 = segment_tangent(i + 1);
  const double dh = std::atan2(t0.cross(t1), t0.dot(t1));
  return dh / (mid(i + 1) - mid(i));
}

LatLong Polyline::decompose(const Vec2 & v, const Vec2 & p) const
{
  const Vec2 t = segment_tangent(project(p).segment);
  return {t.cross(v), t.dot(v)};
}

Polyline Polyline::extended(double extra) const
{
  std::vector<Vec2> pts = points_;
  const Vec2 t = segment_tangent(num_segments() - 1);
  pts.push_back(pts.back() + t * extra);
  return Polyline(std::move(pts));
}

Polyline Polyline::concatenate(std::span<const Polyline> parts)
{
  std::vector<Vec2> pts;
  for (const Polyline & part : parts) {
    for (const Vec2 & p : part.points()) {
      if (!pts.empty() && (p - pts.back()).norm() < 1e-9) {
        continue;
      }
      pts.push_back(p);
    }
  }
  return Polyline(std::move(pts));
}

Projection project_to_polyline(const Vec2 & p, const Polyline & pl) { return pl.project(p); }

double signed_distance(const Vec2 & p, const Polyline & pl) { return pl.signed_distance(p); }

FrenetResult frenet_to_cartesian(double s, double d, const Polyline & pl)
{
  return pl.to_cartesian(s, d);
}

LatLong decompose_lat_long(const Vec2 & v, const Vec2 & p, const Polyline & pl)
{
  return pl.decompose(v, p);
}

}  // namespace quad::world
