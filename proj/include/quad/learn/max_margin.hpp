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

#ifndef QUAD__LEARN__MAX_MARGIN_HPP_
#define QUAD__LEARN__MAX_MARGIN_HPP_

#include "quad/costing/costs.hpp"
#include "quad/occupancy/oracle_field.hpp"
#include "quad/sampler/trajectory.hpp"

#include <string>
#include <vector>

namespace quad::learn
{

/// Default magnitude of the per-step safety margin, in cost units.
inline constexpr double kSafetyMargin = 1.0;

/// Mean Euclidean distance between the future waypoints (states 1..T).
double imitation_margin(const Trajectory & candidate, const Trajectory & expert);

/// Per-step margin for steps 0..T-1: `margin` when the footprint overlaps a
/// ground-truth actor anywhere in (k dt, (k+1) dt], sampled every 0.1 s.
std::vector<double> safety_margin(
  const Trajectory & candidate, const std::vector<occupancy::ActorPlan> & actors,
  const world::VehicleParams & vehicle = {}, double margin = kSafetyMargin);

struct CandidateRecord
{
  costing::FeatureVector features{};   ///< includes the summed collision feature
  std::vector<double> collision_terms;  ///< per-step collision feature, sums to features[collision]
  std::vector<double> safety;           ///< per-step safety margins
  double imitation{0.0};                ///< imitation margin against the expert
};

struct TrainingExample
{
  std::vector<CandidateRecord> candidates;
  std::size_t expert{0};  ///< index of the expert-matched candidate
  int iteration{0};       ///< aggregation round that produced the example
  std::string scenario;
  double t{0.0};
  world::EgoState ego;

  /// Throws std::invalid_argument on non-finite features or inconsistent sizes.
  void validate() const;
};

/// Index of the candidate closest to `expert` by imitation margin; ties go low.
std::size_t snap_to_candidates(const std::vector<Trajectory> & candidates, const Trajectory & expert);

struct LossResult
{
  double loss{0.0};
  costing::FeatureVector gradient{};
  std::size_t argmax{0};  ///< maximizing candidate; ties go to the lowest index
};

/// Structured hinge: max over candidates of
///   [ dJr + l_im + sum_t [dJc_t + l_c_t]_+ ]_+ ,  dJ = J(expert) - J(candidate),
/// where Jc_t = w_col * collision_terms[t] and Jr is every other weighted feature.
LossResult max_margin_loss(const TrainingExample & ex, const costing::Weights & w);

/// Mean loss and mean subgradient over a set of examples.
LossResult mean_loss(const std::vector<TrainingExample> & set, const costing::Weights & w);

/// Candidate with the lowest J = w . f; ties go to the lowest index.
std::size_t choose(const TrainingExample & ex, const costing::Weights & w);

/// Fraction of examples where `choose` picks the expert-matched candidate.
double match_rate(const std::vector<TrainingExample> & set, const costing::Weights & w);

struct FitConfig
{
  int epochs{200};
  double lr{0.05};  ///< eta_0 in eta_k = eta_0 / sqrt(k)
  /// Features whose weights stay fixed during fitting.
  std::vector<costing::Feature> frozen{};
};

struct FitResult
{
  costing::Weights weights;
  double loss{0.0};                 ///< best validation (or training) loss
  std::vector<double> train_loss;   ///< training loss of the iterate, per epoch
  std::vector<double> best_so_far;  ///< selection loss envelope, per epoch
  int best_epoch{0};
};

/// Full-batch projected subgradient descent; weights are clamped to >= 0.
/// Returns the iterate with the lowest loss on `validation`, or on the
/// training set when `validation` is empty.
FitResult fit_weights(
  const std::vector<TrainingExample> & train, const costing::Weights & init, const FitConfig & cfg = {},
  const std::vector<TrainingExample> & validation = {});

}  // namespace quad::learn

#endif  // QUAD__LEARN__MAX_MARGIN_HPP_
