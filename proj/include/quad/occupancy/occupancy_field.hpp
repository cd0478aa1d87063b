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

#ifndef QUAD__OCCUPANCY__OCCUPANCY_FIELD_HPP_
#define QUAD__OCCUPANCY__OCCUPANCY_FIELD_HPP_

#include <atomic>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace quad::occupancy
{

/// Continuous spatio-temporal query location; t is seconds into the future.
struct QueryPoint
{
  double x{0.0};
  double y{0.0};
  double t{0.0};

  bool operator==(const QueryPoint &) const = default;
};

class HorizonError : public std::runtime_error
{
public:
  HorizonError() : std::runtime_error("occupancy horizon exceeded") {}
};

/// Relaxed atomic counter that copies by value.
class RelaxedCounter
{
public:
  RelaxedCounter() = default;
  RelaxedCounter(const RelaxedCounter & o) : value_(o.load()) {}
  RelaxedCounter & operator=(const RelaxedCounter & o)
  {
    value_.store(o.load(), std::memory_order_relaxed);
    return *this;
  }
  void add(std::uint64_t n) const { value_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t load() const { return value_.load(std::memory_order_relaxed); }
  void reset() const { value_.store(0, std::memory_order_relaxed); }

private:
  mutable std::atomic<std::uint64_t> value_{0};
};

/// psi(q) -> probability that q lies inside some actor. Implementations are
/// read-only after construction and safe to query from many threads.
class OccupancyField
{
public:
  virtual ~OccupancyField() = default;

  /// Writes one probability per point into `out` (same size as `points`).
  void query_batch(std::span<const QueryPoint> points, std::span<double> out) const;
  double query(const QueryPoint & q) const;

  virtual double horizon() const = 0;

  /// Number of points evaluated since construction (or the last reset).
  std::uint64_t evaluations() const { return evaluations_.load(); }
  void reset_evaluations() const { evaluations_.reset(); }

protected:
  virtual void evaluate(std::span<const QueryPoint> points, std::span<double> out) const = 0;

private:
  RelaxedCounter evaluations_;
};

/// Same probability everywhere; handy for bounding-case tests.
class ConstantField final : public OccupancyField
{
public:
  explicit ConstantField(double value, double horizon = 5.0);
  double horizon() const override { return horizon_; }

protected:
  void evaluate(std::span<const QueryPoint> points, std::span<double> out) const override;

private:
  double value_;
  double horizon_;
};

}  // namespace quad::occupancy

#endif  // QUAD__OCCUPANCY__OCCUPANCY_FIELD_HPP_
