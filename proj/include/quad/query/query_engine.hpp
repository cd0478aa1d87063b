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

#ifndef QUAD__QUERY__QUERY_ENGINE_HPP_
#define QUAD__QUERY__QUERY_ENGINE_HPP_

#include "quad/occupancy/occupancy_field.hpp"
#include "quad/sampler/trajectory.hpp"
#include "quad/world/bicycle.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace quad::query
{

/// Region of points of interest around a motion-blurred box.
enum class RegionTag : std::uint8_t { in = 0, forward, backward, left, right };
inline constexpr std::size_t kNumRegions = 5;
inline constexpr std::array<RegionTag, kNumRegions> kAllRegions{
  RegionTag::in, RegionTag::forward, RegionTag::backward, RegionTag::left, RegionTag::right};

/// Ego swept area between steps k and k+1.
struct MotionBlurBox
{
  world::OrientedBox box;
  std::size_t trajectory{0};
  int step{0};
};

/// Tight rectangle, aligned with the k -> k+1 displacement (pose heading when
/// stationary), containing both instantaneous ego footprints.
MotionBlurBox motion_blur_box(
  const Trajectory & traj, int step, const world::VehicleParams & vehicle = {},
  std::size_t trajectory_index = 0);

/// Occupancy is sampled at the end of each swept interval: box k -> t = (k+1) * dt.
inline double query_time(int step) { return (step + 1) * kPlanDt; }
inline std::int32_t time_index(double t)
{
  return static_cast<std::int32_t>(t / kPlanDt + 0.5);
}

/// Uniform grid of `grid_res` spacing centered in the box, one count per axis.
struct GridShape
{
  std::uint32_t along{1};
  std::uint32_t across{1};
  std::uint32_t size() const { return along * across; }
};
GridShape grid_shape(const world::OrientedBox & box, double grid_res);

/// Box-frame coordinates (along, left) of point `idx` of `region`.
world::Vec2 local_point(
  const world::OrientedBox & box, const GridShape & shape, double grid_res, RegionTag region,
  std::uint32_t idx);

struct TaggedPoint
{
  occupancy::QueryPoint point;
  RegionTag region{RegionTag::in};
  int step{0};
};

/// All points of interest of one trajectory, step-major then region then grid.
std::vector<TaggedPoint> points_of_interest(
  const Trajectory & traj, double grid_res, const world::VehicleParams & vehicle = {});

struct QuantKey
{
  std::int32_t ix{0};
  std::int32_t iy{0};
  std::int32_t it{0};

  bool operator==(const QuantKey &) const = default;
};

/// Unique query cells plus the reverse index from every raw point to its cell.
struct QuerySet
{
  double resolution{0.0};  ///< 0 means continuous (no quantization)
  std::vector<QuantKey> keys;
  std::vector<occupancy::QueryPoint> representatives;
  std::vector<std::uint32_t> point_key;  ///< raw point -> index into representatives

  std::size_t raw_count() const { return point_key.size(); }
  std::size_t unique_count() const { return representatives.size(); }
};

QuantKey quantize_point(const occupancy::QueryPoint & p, double resolution);
occupancy::QueryPoint cell_center(const QuantKey & key, double resolution);

/// floor-based spatial quantization; time is already on the planning grid.
QuerySet quantize(std::span<const occupancy::QueryPoint> points, double resolution);

struct QueryConfig
{
  double grid_res{0.5};      ///< spacing of the points of interest
  double resolution{0.5};    ///< quantization cell size
  bool quantized{true};      ///< false: evaluate every raw point
  world::VehicleParams vehicle{};
};

struct StepLayout
{
  MotionBlurBox blur;
  GridShape shape;
  std::size_t offset{0};  ///< first raw point of this step in QuerySet::point_key
};

struct QueryStats
{
  std::size_t raw_points{0};
  std::size_t unique_points{0};
  std::uint64_t field_evaluations{0};
  double generate_ms{0.0};
  double evaluate_ms{0.0};
};

class CoverageError : public std::runtime_error
{
public:
  CoverageError() : std::runtime_error("query coverage gap") {}
};

/// Points of interest for a whole candidate set, deduplicated.
class QueryBatch
{
public:
  static QueryBatch build(std::span<const Trajectory> candidates, const QueryConfig & cfg);

  const QuerySet & set() const { return set_; }
  const QueryConfig & config() const { return cfg_; }
  std::size_t num_trajectories() const { return layouts_.size(); }
  const StepLayout & layout(std::size_t traj, int step) const;
  int steps(std::size_t traj) const { return static_cast<int>(layouts_.at(traj).size()); }

  /// Key indices of one region of one step.
  std::span<const std::uint32_t> region_keys(std::size_t traj, int step, RegionTag region) const;

private:
  QueryConfig cfg_;
  QuerySet set_;
  std::vector<std::vector<StepLayout>> layouts_;
};

/// Occupancy probability per unique key of a batch.
struct OccupancyTable
{
  std::vector<double> values;
};

/// One field call over the unique representatives.
OccupancyTable evaluate(const QuerySet & qs, const occupancy::OccupancyField & field);

/// Read-only occupancy for one trajectory: scatter of the table through the reverse index.
class OccupancyView
{
public:
  OccupancyView(const QueryBatch & batch, const OccupancyTable & table, std::size_t traj);

  int steps() const { return batch_->steps(traj_); }
  const StepLayout & layout(int step) const { return batch_->layout(traj_, step); }
  double resolution() const { return batch_->config().grid_res; }

  /// Calls fn(local_point, probability) for every point of the region.
  template <typename Fn>
  void for_each(int step, RegionTag region, Fn && fn) const
  {
    const StepLayout & l = layout(step);
    const auto keys = batch_->region_keys(traj_, step, region);
    for (std::uint32_t i = 0; i < keys.size(); ++i) {
      fn(local_point(l.blur.box, l.shape, resolution(), region, i), table_->values[keys[i]]);
    }
  }

  double max_probability(int step, RegionTag region) const;

private:
  const QueryBatch * batch_;
  const OccupancyTable * table_;
  std::size_t traj_;
};

/// Build + evaluate, with instrumentation.
struct EvaluatedQueries
{
  QueryBatch batch;
  OccupancyTable table;
  QueryStats stats;

  OccupancyView view(std::size_t traj) const { return {batch, table, traj}; }
};

EvaluatedQueries run_queries(
  std::span<const Trajectory> candidates, const occupancy::OccupancyField & field,
  const QueryConfig & cfg);

}  // namespace quad::query

#endif  // QUAD__QUERY__QUERY_ENGINE_HPP_
