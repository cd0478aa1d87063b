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

#ifndef QUAD__OCCUPANCY__ORACLE_FIELD_HPP_
#define QUAD__OCCUPANCY__ORACLE_FIELD_HPP_

#include "quad/occupancy/occupancy_field.hpp"
#include "quad/world/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace quad::occupancy
{

struct TimedBox
{
  double t{0.0};
  world::OrientedBox box;
};

/// Future footprints of one actor, sorted by time, starting at t = 0.
struct ActorPlan
{
  std::vector<TimedBox> samples;

  double end_time() const { return samples.empty() ? 0.0 : samples.back().t; }
  /// Linear interpolation of center and heading; holds the last sample past the end.
  world::OrientedBox box_at(double t) const;
};

/// Seeded per-actor position jitter, applied once at construction.
struct NoiseModel
{
  double position_std{0.3};
  std::uint64_t seed{0};
};

/// Logistic of the signed distance to the nearest actor box.
double soft_occupancy(double signed_distance, double sigma);

/// Analytic ground-truth occupancy over actor plans:
/// psi(q) = max_actor sigmoid(-sd(q, box_actor(t)) / sigma), hard indicator at sigma = 0.
class OracleField final : public OccupancyField
{
public:
  OracleField(
    std::vector<ActorPlan> actors, double sigma, double horizon = 5.0,
    std::optional<NoiseModel> noise = std::nullopt);

  double horizon() const override { return horizon_; }
  double sigma() const { return sigma_; }
  const std::vector<ActorPlan> & actors() const { return actors_; }

protected:
  void evaluate(std::span<const QueryPoint> points, std::span<double> out) const override;

private:
  std::vector<ActorPlan> actors_;
  double sigma_;
  double horizon_;
};

double oracle_query(const OracleField & field, const QueryPoint & q);

}  // namespace quad::occupancy

#endif  // QUAD__OCCUPANCY__ORACLE_FIELD_HPP_
