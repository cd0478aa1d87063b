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

#include "quad/query/query_engine.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace quad::query
{

using occupancy::QueryPoint;
using world::OrientedBox;
using world::Vec2;

MotionBlurBox motion_blur_box(
  const Trajectory & traj, int step, const world::VehicleParams & vehicle,
  std::size_t trajectory_index)
{
  const world::Pose2D & p0 = traj.states.at(step).pose;
  const world::Pose2D & p1 = traj.states.at(step + 1).pose;
  const Vec2 disp = p1.position() - p0.position();
  const double heading = disp.norm() > 1e-6 ? std::atan2(disp.y, disp.x) : p0.heading;
  const Vec2 u = world::unit_from_heading(heading);
  const Vec2 v{-u.y, u.x};

  double u_min = std::numeric_limits<double>::infinity();
  double u_max = -u_min;
  double v_min = u_min;
  double v_max = -u_min;
  const Vec2 origin = p0.position();
  for (const world::Pose2D * p : {&p0, &p1}) {
    for (const Vec2 & c : world::footprint(*p, vehicle).corners()) {
      const Vec2 rel = c - origin;
      u_min = std::min(u_min, rel.dot(u));
      u_max = std::max(u_max, rel.dot(u));
      v_min = std::min(v_min, rel.dot(v));
      v_max = std::max(v_max, rel.dot(v));
    }
  }
  MotionBlurBox out;
  out.box.center = origin + u * (0.5 * (u_min + u_max)) + v * (0.5 * (v_min + v_max));
  out.box.heading = heading;
  out.box.length = u_max - u_min;
  out.box.width = v_max - v_min;
  out.trajectory = trajectory_index;
  out.step = step;
  return out;
}

GridShape grid_shape(const OrientedBox & box, double grid_res)
{
  auto count = [&](double extent) {
    return static_cast<std::uint32_t>(std::floor(extent / grid_res + 1e-9)) + 1;
  };
  return {count(box.length), count(box.width)};
}

Vec2 local_point(
  const OrientedBox & box, const GridShape & shape, double grid_res, RegionTag region,
  std::uint32_t idx)
{
  const std::uint32_t i = idx / shape.across;
  const std::uint32_t j = idx % shape.across;
  double a = (static_cast<double>(i) - 0.5 * (shape.along - 1)) * grid_res;
  double b = (static_cast<double>(j) - 0.5 * (shape.across - 1)) * grid_res;
  switch (region) {
    case RegionTag::in:
      break;
    case RegionTag::forward:
      a += box.length;
      break;
    case RegionTag::backward:
      a -= box.length;
      break;
    case RegionTag::left:
      b += box.width;
      break;
    case RegionTag::right:
      b -= box.width;
      break;
  }
  return {a, b};
}

namespace
{

/// Box-frame to world, with the trig done once per box.
struct BoxFrame
{
  Vec2 center;
  Vec2 axis;
  Vec2 left;

  explicit BoxFrame(const OrientedBox & b) : center(b.center), axis(b.axis()), left(b.left()) {}
  Vec2 to_world(const Vec2 & local) const { return center + axis * local.x + left * local.y; }
};

constexpr std::int64_t kCoordBias = std::int64_t{1} << 27;

std::uint64_t pack(const QuantKey & k)
{
  const std::int64_t x = k.ix + kCoordBias;
  const std::int64_t y = k.iy + kCoordBias;
  if (x < 0 || x >= 2 * kCoordBias || y < 0 || y >= 2 * kCoordBias || k.it < 0 || k.it > 255) {
    throw std::out_of_range("query point outside quantization range");
  }
  return (static_cast<std::uint64_t>(x) << 36) | (static_cast<std::uint64_t>(y) << 8) |
         static_cast<std::uint64_t>(k.it);
}

class Quantizer
{
public:
  explicit Quantizer(QuerySet & out) : out_(out) {}

  void add(const QueryPoint & p)
  {
    if (out_.resolution <= 0.0) {
      out_.point_key.push_back(static_cast<std::uint32_t>(out_.representatives.size()));
      out_.representatives.push_back(p);
      return;
    }
    const QuantKey key = quantize_point(p, out_.resolution);
    const auto [it, inserted] =
      index_.try_emplace(pack(key), static_cast<std::uint32_t>(out_.keys.size()));
    if (inserted) {
      out_.keys.push_back(key);
      out_.representatives.push_back(cell_center(key, out_.resolution));
    }
    out_.point_key.push_back(it->second);
  }

private:
  QuerySet & out_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> index_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
    .count();
}

}  // namespace

std::vector<TaggedPoint> points_of_interest(
  const Trajectory & traj, double grid_res, const world::VehicleParams & vehicle)
{
  if (!(grid_res > 0.0)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
  std::vector<TaggedPoint> out;
  for (int k = 0; k < traj.steps(); ++k) {
    const MotionBlurBox blur = motion_blur_box(traj, k, vehicle);
    const GridShape shape = grid_shape(blur.box, grid_res);
    const BoxFrame frame(blur.box);
    const double t = query_time(k);
    for (RegionTag region : kAllRegions) {
      for (std::uint32_t i = 0; i < shape.size(); ++i) {
        const Vec2 w = frame.to_world(local_point(blur.box, shape, grid_res, region, i));
        out.push_back({{w.x, w.y, t}, region, k});
      }
    }
  }
  return out;
}

QuantKey quantize_point(const QueryPoint & p, double resolution)
{
  return {static_cast<std::int32_t>(std::floor(p.x / resolution)),
          static_cast<std::int32_t>(std::floor(p.y / resolution)), time_index(p.t)};
}

QueryPoint cell_center(const QuantKey & key, double resolution)
{
  return {(key.ix + 0.5) * resolution, (key.iy + 0.5) * resolution, key.it * kPlanDt};
}

QuerySet quantize(std::span<const QueryPoint> points, double resolution)
{
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("quantization resolution must be positive");
  }
  QuerySet qs;
  qs.resolution = resolution;
  qs.point_key.reserve(points.size());
  Quantizer quantizer(qs);
  for (const QueryPoint & p : points) {
    quantizer.add(p);
  }
  return qs;
}

QueryBatch QueryBatch::build(std::span<const Trajectory> candidates, const QueryConfig & cfg)
{
  if (!(cfg.grid_res > 0.0) || (cfg.quantized && !(cfg.resolution > 0.0))) {
    throw std::invalid_argument("query resolutions must be positive");
  }
  QueryBatch batch;
  batch.cfg_ = cfg;
  batch.set_.resolution = cfg.quantized ? cfg.resolution : 0.0;
  batch.layouts_.resize(candidates.size());
  Quantizer quantizer(batch.set_);
  for (std::size_t ti = 0; ti < candidates.size(); ++ti) {
    const Trajectory & traj = candidates[ti];
    auto & steps = batch.layouts_[ti];
    steps.reserve(traj.steps());
    for (int k = 0; k < traj.steps(); ++k) {
      StepLayout l;
      l.blur = motion_blur_box(traj, k, cfg.vehicle, ti);
      l.shape = grid_shape(l.blur.box, cfg.grid_res);
      l.offset = batch.set_.point_key.size();
      const BoxFrame frame(l.blur.box);
      const double t = query_time(k);
      for (RegionTag region : kAllRegions) {
        for (std::uint32_t i = 0; i < l.shape.size(); ++i) {
          const Vec2 w = frame.to_world(local_point(l.blur.box, l.shape, cfg.grid_res, region, i));
          quantizer.add({w.x, w.y, t});
        }
      }
      steps.push_back(l);
    }
  }
  return batch;
}

const StepLayout & QueryBatch::layout(std::size_t traj, int step) const
{
  if (traj >= layouts_.size() || step < 0 || step >= static_cast<int>(layouts_[traj].size())) {
    throw CoverageError();
  }
  return layouts_[traj][step];
}

std::span<const std::uint32_t> QueryBatch::region_keys(
  std::size_t traj, int step, RegionTag region) const
{
  const StepLayout & l = layout(traj, step);
  const std::size_t n = l.shape.size();
  const std::size_t start = l.offset + static_cast<std::size_t>(region) * n;
  return {set_.point_key.data() + start, n};
}

OccupancyTable evaluate(const QuerySet & qs, const occupancy::OccupancyField & field)
{
  OccupancyTable table;
  table.values.resize(qs.representatives.size());
  field.query_batch(qs.representatives, table.values);
  return table;
}

OccupancyView::OccupancyView(const QueryBatch & batch, const OccupancyTable & table, std::size_t traj)
: batch_(&batch), table_(&table), traj_(traj)
{
  if (traj >= batch.num_trajectories() || table.values.size() != batch.set().unique_count()) {
    throw CoverageError();
  }
}

double OccupancyView::max_probability(int step, RegionTag region) const
{
  double best = 0.0;
  for (std::uint32_t k : batch_->region_keys(traj_, step, region)) {
    best = std::max(best, table_->values[k]);
  }
  return best;
}

EvaluatedQueries run_queries(
  std::span<const Trajectory> candidates, const occupancy::OccupancyField & field,
  const QueryConfig & cfg)
{
  const auto t0 = std::chrono::steady_clock::now();
  QueryBatch batch = QueryBatch::build(candidates, cfg);
  const double gen_ms = elapsed_ms(t0);
  const auto t1 = std::chrono::steady_clock::now();
  const std::uint64_t before = field.evaluations();
  OccupancyTable table = evaluate(batch.set(), field);
  QueryStats stats;
  stats.raw_points = batch.set().raw_count();
  stats.unique_points = batch.set().unique_count();
  stats.field_evaluations = field.evaluations() - before;
  stats.generate_ms = gen_ms;
  stats.evaluate_ms = elapsed_ms(t1);
  return {std::move(batch), std::move(table), stats};
}

}  // namespace quad::query
