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

#ifndef QUAD__OCCUPANCY__GRID_FIELD_HPP_
#define QUAD__OCCUPANCY__GRID_FIELD_HPP_

#include "quad/occupancy/occupancy_field.hpp"

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

namespace quad::occupancy
{

struct Region
{
  double x_min{0.0};
  double y_min{0.0};
  double x_max{0.0};
  double y_max{0.0};
};

/// Dense BEV x time occupancy grid; the baseline the implicit query path is
/// measured against. Lookup is nearest-cell, nearest-time.
class GridField final : public OccupancyField
{
public:
  GridField(Region region, double resolution, std::vector<double> times);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  const std::vector<double> & times() const { return times_; }
  double resolution() const { return resolution_; }
  const Region & region() const { return region_; }
  std::size_t size() const { return values_.size(); }

  double & at(std::size_t it, std::size_t iy, std::size_t ix)
  {
    return values_[(it * ny_ + iy) * nx_ + ix];
  }
  double at(std::size_t it, std::size_t iy, std::size_t ix) const
  {
    return values_[(it * ny_ + iy) * nx_ + ix];
  }
  QueryPoint cell_center(std::size_t it, std::size_t iy, std::size_t ix) const;

  double horizon() const override { return times_.empty() ? 0.0 : times_.back(); }
  /// Queries that fell outside the grid extent (answered with 0).
  std::uint64_t out_of_extent() const { return out_of_extent_.load(); }

  /// CSV rows: t,x,y,p for every cell.
  void write_csv(std::ostream & os) const;

protected:
  void evaluate(std::span<const QueryPoint> points, std::span<double> out) const override;

private:
  Region region_;
  double resolution_;
  std::vector<double> times_;
  std::size_t nx_{0};
  std::size_t ny_{0};
  std::vector<double> values_;
  RelaxedCounter out_of_extent_;
};

/// Evaluates `source` at every cell center.
GridField grid_build(
  const OccupancyField & source, const Region & region, double resolution,
  const std::vector<double> & times);

double grid_query(const GridField & field, const QueryPoint & q);

}  // namespace quad::occupancy

#endif  // QUAD__OCCUPANCY__GRID_FIELD_HPP_
