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
#include "quad/occupancy/oracle_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace quad::occupancy
{

namespace
{
constexpr double kTimeEps = 1e-9;
}

void OccupancyField::query_batch(std::span<const QueryPoint> points, std::span<double> out) const
{
  if (points.size() != out.size()) {
    throw std::invalid_argument("query_batch output size mismatch");
  }
  evaluate(points, out);
  evaluations_.add(points.size());
}

double OccupancyField::query(const QueryPoint & q) const
{
  double p = 0.0;
  query_batch({&q, 1}, {&p, 1});
  return p;
}

ConstantField::ConstantField(double value, double horizon) : value_(value), horizon_(horizon)
{
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("constant occupancy must lie in [0, 1]");
  }
}

void ConstantField::evaluate(std::span<const QueryPoint> points, std::span<double> out) const
{
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].t > horizon_ + kTimeEps || points[i].t < -kTimeEps) throw HorizonError();
    out[i] = value_;
  }
}

// ---------------------------------------------------------------------------

world::OrientedBox ActorPlan::box_at(double t) const
{
  if (samples.empty()) {
    throw std::logic_error("empty actor plan");
  }
  if (t <= samples.front().t) return samples.front().box;
  if (t >= samples.back().t) return samples.back().box;
  const auto it = std::upper_bound(
    samples.begin(), samples.end(), t, [](double v, const TimedBox & b) { return v < b.t; });
  const TimedBox & b = *it;
  const TimedBox & a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  world::OrientedBox out = a.box;
  out.center = a.box.center + (b.box.center - a.box.center) * w;
  out.heading = world::normalize_angle(
    a.box.heading + w * world::normalize_angle(b.box.heading - a.box.heading));
  return out;
}

double soft_occupancy(double signed_distance, double sigma)
{
  if (sigma <= 0.0) {
    return signed_distance < 0.0 ? 1.0 : 0.0;
  }
  const double z = -signed_distance / sigma;
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

OracleField::OracleField(
  std::vector<ActorPlan> actors, double sigma, double horizon, std::optional<NoiseModel> noise)
: actors_(std::move(actors)), sigma_(sigma), horizon_(horizon)
{
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("oracle sigma must be >= 0");
  }
  for (const ActorPlan & a : actors_) {
    if (a.samples.empty()) throw std::invalid_argument("actor plan without samples");
    for (const TimedBox & tb : a.samples) {
      if (!(tb.box.length > 0.0) || !(tb.box.width > 0.0)) {
        throw std::invalid_argument("actor box must have positive extent");
      }
    }
  }
  if (noise) {
    std::mt19937_64 rng(noise->seed);
    std::normal_distribution<double> jitter(0.0, noise->position_std);
    for (ActorPlan & a : actors_) {
      const world::Vec2 offset{jitter(rng), jitter(rng)};
      for (TimedBox & tb : a.samples) tb.box.center = tb.box.center + offset;
    }
  }
}

void OracleField::evaluate(std::span<const QueryPoint> points, std::span<double> out) const
{
  // Query batches carry few distinct times; interpolate actor boxes once per time.
  std::vector<double> cached_times;
  std::vector<std::vector<world::OrientedBox>> cached_boxes;
  auto boxes_at = [&](double t) -> const std::vector<world::OrientedBox> & {
    for (std::size_t i = 0; i < cached_times.size(); ++i) {
      if (cached_times[i] == t) return cached_boxes[i];
    }
    std::vector<world::OrientedBox> boxes;
    boxes.reserve(actors_.size());
    for (const ActorPlan & a : actors_) boxes.push_back(a.box_at(t));
    cached_times.push_back(t);
    cached_boxes.push_back(std::move(boxes));
    return cached_boxes.back();
  };

  for (std::size_t i = 0; i < points.size(); ++i) {
    const QueryPoint & q = points[i];
    if (q.t > horizon_ + kTimeEps || q.t < -kTimeEps) {
      throw HorizonError();
    }
    const auto & boxes = boxes_at(q.t);
    double best = 0.0;
    for (const world::OrientedBox & box : boxes) {
      best = std::max(best, soft_occupancy(box.signed_distance({q.x, q.y}), sigma_));
    }
    out[i] = best;
  }
}

double oracle_query(const OracleField & field, const QueryPoint & q) { return field.query(q); }

// ---------------------------------------------------------------------------

GridField::GridField(Region region, double resolution, std::vector<double> times)
: region_(region), resolution_(resolution), times_(std::move(times))
{
  if (!(resolution > 0.0) || !std::isfinite(region.x_min) || !std::isfinite(region.x_max) ||
      !std::isfinite(region.y_min) || !std::isfinite(region.y_max) ||
      !(region.x_max > region.x_min) || !(region.y_max > region.y_min) || times_.empty()) {
    throw std::invalid_argument("bad grid geometry");
  }
  nx_ = static_cast<std::size_t>(std::ceil((region.x_max - region.x_min) / resolution - 1e-9));
  ny_ = static_cast<std::size_t>(std::ceil((region.y_max - region.y_min) / resolution - 1e-9));
  values_.assign(nx_ * ny_ * times_.size(), 0.0);
}

QueryPoint GridField::cell_center(std::size_t it, std::size_t iy, std::size_t ix) const
{
  return {region_.x_min + (static_cast<double>(ix) + 0.5) * resolution_,
          region_.y_min + (static_cast<double>(iy) + 0.5) * resolution_, times_[it]};
}

void GridField::evaluate(std::span<const QueryPoint> points, std::span<double> out) const
{
  for (std::size_t i = 0; i < points.size(); ++i) {
    const QueryPoint & q = points[i];
    if (q.t > horizon() + kTimeEps || q.t < -kTimeEps) {
      throw HorizonError();
    }
    const double fx = std::floor((q.x - region_.x_min) / resolution_);
    const double fy = std::floor((q.y - region_.y_min) / resolution_);
    if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(nx_) || fy >= static_cast<double>(ny_)) {
      out_of_extent_.add(1);
      out[i] = 0.0;
      continue;
    }
    const auto it = std::lower_bound(times_.begin(), times_.end(), q.t);
    std::size_t ti = static_cast<std::size_t>(it - times_.begin());
    if (ti == times_.size() || (ti > 0 && q.t - times_[ti - 1] < times_[ti] - q.t)) {
      --ti;
    }
    out[i] = at(ti, static_cast<std::size_t>(fy), static_cast<std::size_t>(fx));
  }
}

void GridField::write_csv(std::ostream & os) const
{
  os << "t,x,y,p\n";
  for (std::size_t it = 0; it < times_.size(); ++it) {
    for (std::size_t iy = 0; iy < ny_; ++iy) {
      for (std::size_t ix = 0; ix < nx_; ++ix) {
        const QueryPoint c = cell_center(it, iy, ix);
        os << c.t << ',' << c.x << ',' << c.y << ',' << at(it, iy, ix) << '\n';
      }
    }
  }
}

GridField grid_build(
  const OccupancyField & source, const Region & region, double resolution,
  const std::vector<double> & times)
{
  GridField grid(region, resolution, times);
  std::vector<QueryPoint> centers;
  centers.reserve(grid.size());
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
      for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
        centers.push_back(grid.cell_center(it, iy, ix));
      }
    }
  }
  std::vector<double> values(centers.size());
  source.query_batch(centers, values);
  std::size_t k = 0;
  for (std::size_t it = 0; it < times.size(); ++it) {
    for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
      for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
        grid.at(it, iy, ix) = values[k++];
      }
    }
  }
  return grid;
}

double grid_query(const GridField & field, const QueryPoint & q) { return field.query(q); }

}  // namespace quad::occupancy
