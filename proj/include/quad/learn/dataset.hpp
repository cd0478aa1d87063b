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

#ifndef QUAD__LEARN__DATASET_HPP_
#define QUAD__LEARN__DATASET_HPP_

#include "quad/learn/max_margin.hpp"
#include "quad/sim/simulator.hpp"

#include <filesystem>
#include <functional>
#include <vector>

namespace quad::learn
{

inline constexpr int kDatasetSchemaVersion = 1;

struct DatasetConfig
{
  /// Must match the learner's planner so candidate sets agree.
  planner::PlannerConfig planner{};
  world::VehicleParams vehicle{};
  double safety_margin{kSafetyMargin};
  /// Label every `stride`-th replanning step.
  std::size_t stride{1};
};

using ExampleFilter = std::function<bool(const TrainingExample &)>;

/// Keeps examples whose expert choice `scale * w` separates by every margin,
/// i.e. zero loss at that weight vector.
ExampleFilter separable_under(const costing::Weights & w, double scale);

/// Hidden weights of the synthetic expert used for realizable training sets.
costing::Weights synthetic_expert_weights();

/// Candidate features at the context's state, with the expert plan snapped to
/// the nearest candidate and the context's actor plans as ground truth.
TrainingExample make_example(
  const sim::PlanContext & ctx, const Trajectory & expert_plan, int iteration,
  const DatasetConfig & cfg = {});

/// Drives every scenario with `driver` and labels each visited state with the
/// expert's plan from that state. Examples failing `keep` are dropped.
std::vector<TrainingExample> collect(
  const std::vector<sim::Scenario> & scenarios, const sim::Policy & driver, const sim::Policy & expert,
  int iteration, const DatasetConfig & cfg = {}, const sim::FieldFactory & factory = sim::oracle_factory(),
  const ExampleFilter & keep = {});

/// Examples tagged by aggregation round; tags never decrease.
class AggregatedDataset
{
public:
  const std::vector<TrainingExample> & examples() const { return examples_; }
  std::size_t size() const { return examples_.size(); }
  /// One past the highest tag, or 0 when empty.
  int rounds() const;
  /// Throws std::invalid_argument if a tag is lower than the current last tag.
  void append(std::vector<TrainingExample> batch);

  void save(const std::filesystem::path & path) const;
  static AggregatedDataset load(const std::filesystem::path & path);

private:
  std::vector<TrainingExample> examples_;
};

/// Round 0: expert-driven states.
AggregatedDataset initial_dataset(
  const std::vector<sim::Scenario> & scenarios, const sim::Policy & expert, const DatasetConfig & cfg = {},
  const sim::FieldFactory & factory = sim::oracle_factory(), const ExampleFilter & keep = {});

/// One aggregation round: drive with the learner, label with the expert, append.
void aggregate(
  AggregatedDataset & dataset, const costing::Weights & learner, const std::vector<sim::Scenario> & scenarios,
  const sim::Policy & expert, const DatasetConfig & cfg = {},
  const sim::FieldFactory & factory = sim::oracle_factory(), const ExampleFilter & keep = {});

}  // namespace quad::learn

#endif  // QUAD__LEARN__DATASET_HPP_
