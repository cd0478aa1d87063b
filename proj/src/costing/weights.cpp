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

#include "quad/costing/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace quad::costing
{

namespace
{
constexpr std::array<std::string_view, kNumFeatures> kFeatureNames{
  "acc_lat", "acc_long", "jerk",  "curvature", "corridor",    "boundary",
  "speed",   "progress", "route", "collision", "buffer_long", "buffer_lat"};

/// Document keys; shorter than the feature names.
constexpr std::array<std::string_view, kNumFeatures> kWeightKeys{
  "w_acc_lat", "w_acc_long", "w_jerk",  "w_curv", "w_corr",     "w_bound",
  "w_speed",   "w_prog",     "w_route", "w_col",  "w_buf_long", "w_buf_lat"};

constexpr std::array<std::pair<CostGroup, std::string_view>, 8> kGroupNames{{
  {CostGroup::collision, "collision"},
  {CostGroup::buffer, "buffer"},
  {CostGroup::comfort, "comfort"},
  {CostGroup::corridor, "corridor"},
  {CostGroup::boundary, "boundary"},
  {CostGroup::speed_limit, "speed_limit"},
  {CostGroup::progress, "progress"},
  {CostGroup::route, "route"},
}};
}  // namespace

std::string_view feature_name(Feature f) { return kFeatureNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> feature_from_name(std::string_view name)
{
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

std::string_view group_name(CostGroup g)
{
  for (const auto & [group, name] : kGroupNames) {
    if (group == g) return name;
  }
  return "unknown";
}

std::optional<CostGroup> group_from_name(std::string_view name)
{
  for (const auto & [group, n] : kGroupNames) {
    if (n == name) return group;
  }
  return std::nullopt;
}

std::vector<Feature> group_features(CostGroup g)
{
  switch (g) {
    case CostGroup::collision:
      return {Feature::collision};
    case CostGroup::buffer:
      return {Feature::buffer_long, Feature::buffer_lat};
    case CostGroup::comfort:
      return {Feature::acc_lat, Feature::acc_long, Feature::jerk, Feature::curvature};
    case CostGroup::corridor:
      return {Feature::corridor};
    case CostGroup::boundary:
      return {Feature::boundary};
    case CostGroup::speed_limit:
      return {Feature::speed};
    case CostGroup::progress:
      return {Feature::progress};
    case CostGroup::route:
      return {Feature::route};
  }
  return {};
}

double Weights::dot(const FeatureVector & f) const
{
  double total = 0.0;
  for (std::size_t i = 0; i < kNumFeatures; ++i) total += values[i] * f[i];
  return total;
}

Weights Weights::scaled(double k) const
{
  Weights w = *this;
  for (double & v : w.values) v *= k;
  return w;
}

Weights Weights::without(CostGroup g) const
{
  Weights w = *this;
  for (Feature f : group_features(g)) w[f] = 0.0;
  return w;
}

bool Weights::finite_nonnegative() const
{
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return true;
}

nlohmann::json Weights::to_json() const
{
  nlohmann::json doc = nlohmann::json::object();
  for (std::size_t i = 0; i < kNumFeatures; ++i) {
    doc[std::string(kWeightKeys[i])] = values[i];
  }
  return doc;
}

Weights Weights::from_json(const nlohmann::json & doc)
{
  Weights w;
  for (const auto & [key, value] : doc.items()) {
    const auto it = std::find(kWeightKeys.begin(), kWeightKeys.end(), key);
    if (it == kWeightKeys.end()) {
      throw std::invalid_argument("unknown weight key '" + key + "'");
    }
    w.values[static_cast<std::size_t>(it - kWeightKeys.begin())] = value.get<double>();
  }
  if (!w.finite_nonnegative()) {
    throw std::invalid_argument("weights must be finite and non-negative");
  }
  return w;
}

void Weights::save(const std::filesystem::path & path) const
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

Weights Weights::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights " + path.string());
  return from_json(nlohmann::json::parse(in));
}

Weights Weights::defaults()
{
  Weights w;
  w[Feature::acc_lat] = 0.1;
  w[Feature::acc_long] = 0.1;
  w[Feature::jerk] = 0.02;
  w[Feature::curvature] = 10.0;
  w[Feature::corridor] = 2.0;
  w[Feature::boundary] = 5.0;
  w[Feature::speed] = 1.0;
  w[Feature::progress] = 1.0;
  w[Feature::route] = 1.0;
  w[Feature::collision] = 50.0;
  w[Feature::buffer_long] = 1.0;
  w[Feature::buffer_lat] = 0.5;
  return w;
}

}  // namespace quad::costing
