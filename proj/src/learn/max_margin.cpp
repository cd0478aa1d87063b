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

#include "quad/learn/max_margin.hpp"

#include "quad/sim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace quad::learn
{

namespace
{

constexpr auto kCollision = static_cast<std::size_t>(costing::Feature::collision);

double relu(double x) { return x > 0.0 ? x : 0.0; }

double rest_cost(const CandidateRecord & c, const costing::Weights & w)
{
  double total = 0.0;
  for (std::size_t i = 0; i < costing::kNumFeatures; ++i) {
    if (i != kCollision) total += w.values[i] * c.features[i];
  }
  return total;
}

}  // namespace

double imitation_margin(const Trajectory & candidate, const Trajectory & expert)
{
  const int n = std::min(candidate.steps(), expert.steps());
  if (n <= 0) return 0.0;
  double total = 0.0;
  for (int k = 1; k <= n; ++k) {
    total += (candidate.states[k].pose.position() - expert.states[k].pose.position()).norm();
  }
  return total / n;
}

std::vector<double> safety_margin(
  const Trajectory & candidate, const std::vector<occupancy::ActorPlan> & actors,
  const world::VehicleParams & vehicle, double margin)
{
  constexpr int kSub = 5;
  const double sub_dt = kPlanDt / kSub;
  std::vector<double> out(candidate.steps(), 0.0);
  for (int k = 0; k < candidate.steps(); ++k) {
    for (int j = 1; j <= kSub && out[k] == 0.0; ++j) {
      const double t = k * kPlanDt + j * sub_dt;
      const world::OrientedBox ego = world::footprint(sim::plan_pose(candidate, t), vehicle);
      for (const occupancy::ActorPlan & a : actors) {
        if (world::overlaps(ego, a.box_at(t))) {
          out[k] = margin;
          break;
        }
      }
    }
  }
  return out;
}

void TrainingExample::validate() const
{
  if (candidates.empty()) throw std::invalid_argument("training example has no candidates");
  if (expert >= candidates.size()) throw std::invalid_argument("expert index out of range");
  const std::size_t steps = candidates.front().collision_terms.size();
  for (const CandidateRecord & c : candidates) {
    if (c.collision_terms.size() != steps || c.safety.size() != steps) {
      throw std::invalid_argument("per-step vectors disagree in length");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(c.features.begin(), c.features.end(), finite) ||
        !std::all_of(c.collision_terms.begin(), c.collision_terms.end(), finite) ||
        !std::all_of(c.safety.begin(), c.safety.end(), finite) || !std::isfinite(c.imitation)) {
      throw std::invalid_argument("training example has non-finite values");
    }
  }
}

std::size_t snap_to_candidates(const std::vector<Trajectory> & candidates, const Trajectory & expert)
{
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = imitation_margin(candidates[i], expert);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

LossResult max_margin_loss(const TrainingExample & ex, const costing::Weights & w)
{
  LossResult out;
  if (ex.candidates.empty()) return out;
  const CandidateRecord & e = ex.candidates[ex.expert];
  const double w_col = w.values[kCollision];
  const double jr_e = rest_cost(e, w);

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ex.candidates.size(); ++i) {
    const CandidateRecord & c = ex.candidates[i];
    double value = jr_e - rest_cost(c, w) + c.imitation;
    for (std::size_t t = 0; t < c.collision_terms.size(); ++t) {
      value += relu(w_col * (e.collision_terms[t] - c.collision_terms[t]) + c.safety[t]);
    }
    if (value > best) {
      best = value;
      out.argmax = i;
    }
  }
  if (best <= 0.0) return out;

  out.loss = best;
  const CandidateRecord & c = ex.candidates[out.argmax];
  for (std::size_t i = 0; i < costing::kNumFeatures; ++i) {
    if (i != kCollision) out.gradient[i] = e.features[i] - c.features[i];
  }
  for (std::size_t t = 0; t < c.collision_terms.size(); ++t) {
    const double diff = e.collision_terms[t] - c.collision_terms[t];
    if (w_col * diff + c.safety[t] > 0.0) out.gradient[kCollision] += diff;
  }
  return out;
}

LossResult mean_loss(const std::vector<TrainingExample> & set, const costing::Weights & w)
{
  LossResult out;
  if (set.empty()) return out;
  for (const TrainingExample & ex : set) {
    const LossResult r = max_margin_loss(ex, w);
    out.loss += r.loss;
    for (std::size_t i = 0; i < costing::kNumFeatures; ++i) out.gradient[i] += r.gradient[i];
  }
  const double n = static_cast<double>(set.size());
  out.loss /= n;
  for (double & g : out.gradient) g /= n;
  return out;
}

std::size_t choose(const TrainingExample & ex, const costing::Weights & w)
{
  std::size_t best = 0;
  double best_j = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ex.candidates.size(); ++i) {
    const double j = w.dot(ex.candidates[i].features);
    if (j < best_j) {
      best_j = j;
      best = i;
    }
  }
  return best;
}

double match_rate(const std::vector<TrainingExample> & set, const costing::Weights & w)
{
  if (set.empty()) return 0.0;
  std::size_t hits = 0;
  for (const TrainingExample & ex : set) hits += choose(ex, w) == ex.expert;
  return static_cast<double>(hits) / set.size();
}

FitResult fit_weights(
  const std::vector<TrainingExample> & train, const costing::Weights & init, const FitConfig & cfg,
  const std::vector<TrainingExample> & validation)
{
  FitResult out;
  out.weights = init;
  if (train.empty()) return out;

  std::array<bool, costing::kNumFeatures> frozen{};
  for (costing::Feature f : cfg.frozen) frozen[static_cast<std::size_t>(f)] = true;

  costing::Weights w = init;
  out.loss = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= cfg.epochs; ++k) {
    const LossResult r = mean_loss(train, w);
    const double selection = validation.empty() ? r.loss : mean_loss(validation, w).loss;
    out.train_loss.push_back(r.loss);
    if (selection < out.loss) {
      out.loss = selection;
      out.weights = w;
      out.best_epoch = k;
    }
    out.best_so_far.push_back(out.loss);
    // A zero subgradient is a fixed point of the update.
    if (k == cfg.epochs || r.loss == 0.0) break;
    const double eta = cfg.lr / std::sqrt(static_cast<double>(k + 1));
    for (std::size_t i = 0; i < costing::kNumFeatures; ++i) {
      if (frozen[i]) continue;
      w.values[i] = std::max(0.0, w.values[i] - eta * r.gradient[i]);
    }
  }
  return out;
}

}  // namespace quad::learn
