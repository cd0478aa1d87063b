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

#ifndef QUAD__COSTING__WEIGHTS_HPP_
#define QUAD__COSTING__WEIGHTS_HPP_

#include <nlohmann/json.hpp>

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quad::costing
{

/// One entry per learnable coefficient; the cost is sum_i w_i * f_i.
enum class Feature : std::size_t {
  acc_lat = 0,
  acc_long,
  jerk,
  curvature,
  corridor,
  boundary,
  speed,
  progress,
  route,
  collision,
  buffer_long,
  buffer_lat,
};
inline constexpr std::size_t kNumFeatures = 12;

std::string_view feature_name(Feature f);
std::optional<Feature> feature_from_name(std::string_view name);

/// Sub-cost groups that can be dropped together (ablation rows).
enum class CostGroup { collision, buffer, comfort, corridor, boundary, speed_limit, progress, route };
std::string_view group_name(CostGroup g);
std::optional<CostGroup> group_from_name(std::string_view name);
std::vector<Feature> group_features(CostGroup g);

using FeatureVector = std::array<double, kNumFeatures>;

struct Weights
{
  FeatureVector values{};

  double & operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }

  double dot(const FeatureVector & f) const;
  Weights scaled(double k) const;
  Weights without(CostGroup g) const;
  bool finite_nonnegative() const;

  /// Flat key-value document: {"w_acc_lat": ..., "w_curv": ..., ...}.
  nlohmann::json to_json() const;
  static Weights from_json(const nlohmann::json & doc);
  void save(const std::filesystem::path & path) const;
  static Weights load(const std::filesystem::path & path);

  /// Default hand-set starting point for the learned planner.
  static Weights defaults();
};

}  // namespace quad::costing

#endif  // QUAD__COSTING__WEIGHTS_HPP_
