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

#include "quad/learn/dataset.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace quad::learn
{

namespace
{

/// Passes the expert's output through while recording a labeled example.
class LabelingPolicy final : public sim::Policy
{
public:
  LabelingPolicy(
    const sim::Policy & expert, int iteration, const DatasetConfig & cfg, const ExampleFilter & keep,
    std::vector<TrainingExample> & sink)
  : expert_(expert), iteration_(iteration), cfg_(cfg), keep_(keep), sink_(sink)
  {
  }

  std::string name() const override { return "label:" + expert_.name(); }

  sim::PolicyOutput plan(const sim::PlanContext & ctx) const override
  {
    sim::PolicyOutput out = expert_.plan(ctx);
    const std::size_t step = calls_++;
    if (step % cfg_.stride != 0 || out.error) return out;
    try {
      TrainingExample ex = make_example(ctx, out.plan, iteration_, cfg_);
      ex.t = static_cast<double>(step) * kPlanDt;
      if (!keep_ || keep_(ex)) sink_.push_back(std::move(ex));
    } catch (const std::exception &) {
      // States without candidates carry no supervision.
    }
    return out;
  }

private:
  const sim::Policy & expert_;
  int iteration_;
  const DatasetConfig & cfg_;
  const ExampleFilter & keep_;
  std::vector<TrainingExample> & sink_;
  mutable std::size_t calls_{0};
};

void write_values(std::ostream & out, const std::vector<double> & v)
{
  for (double x : v) out << ' ' << x;
}

std::vector<double> read_values(std::istream & in, std::size_t n)
{
  std::vector<double> v(n);
  for (double & x : v) {
    if (!(in >> x)) throw std::runtime_error("truncated dataset");
  }
  return v;
}

void expect(std::istream & in, const std::string & token)
{
  std::string got;
  if (!(in >> got) || got != token) throw std::runtime_error("dataset: expected '" + token + "'");
}

}  // namespace

ExampleFilter separable_under(const costing::Weights & w, double scale)
{
  const costing::Weights scaled = w.scaled(scale);
  return [scaled](const TrainingExample & ex) { return max_margin_loss(ex, scaled).loss == 0.0; };
}

costing::Weights synthetic_expert_weights()
{
  costing::Weights w = costing::Weights::defaults();
  w[costing::Feature::acc_long] = 0.3;
  w[costing::Feature::progress] = 1.5;
  w[costing::Feature::route] = 2.0;
  w[costing::Feature::buffer_long] = 2.0;
  return w;
}

TrainingExample make_example(
  const sim::PlanContext & ctx, const Trajectory & expert_plan, int iteration, const DatasetConfig & cfg)
{
  const auto field = ctx.field_factory(ctx.actor_plans, ctx.seed);
  const planner::PlanResult r =
    planner::plan(ctx.ego, ctx.scenario.map, *field, costing::Weights::defaults(), cfg.planner);
  if (r.error || r.candidates.empty()) {
    throw std::runtime_error("no candidates at this state");
  }
  TrainingExample ex;
  ex.iteration = iteration;
  ex.scenario = ctx.scenario.name;
  ex.ego = ctx.ego;
  ex.expert = snap_to_candidates(r.candidates, expert_plan);
  ex.candidates.resize(r.candidates.size());
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    CandidateRecord & c = ex.candidates[i];
    c.features = r.costs[i].features;
    c.collision_terms = r.costs[i].collision_terms;
    c.safety = safety_margin(r.candidates[i], ctx.actor_plans, cfg.vehicle, cfg.safety_margin);
    c.imitation = imitation_margin(r.candidates[i], expert_plan);
  }
  ex.validate();
  return ex;
}

std::vector<TrainingExample> collect(
  const std::vector<sim::Scenario> & scenarios, const sim::Policy & driver, const sim::Policy & expert,
  int iteration, const DatasetConfig & cfg, const sim::FieldFactory & factory, const ExampleFilter & keep)
{
  if (cfg.stride == 0) throw std::invalid_argument("stride must be positive");
  std::vector<TrainingExample> out;
  sim::SimConfig sim_cfg;
  sim_cfg.vehicle = cfg.vehicle;
  for (const sim::Scenario & scn : scenarios) {
    std::vector<TrainingExample> batch;
    const LabelingPolicy labeler(expert, iteration, cfg, keep, batch);
    (void)sim::run_open_loop(scn, driver, labeler, factory, sim_cfg);
    for (TrainingExample & ex : batch) out.push_back(std::move(ex));
  }
  return out;
}

int AggregatedDataset::rounds() const
{
  return examples_.empty() ? 0 : examples_.back().iteration + 1;
}

void AggregatedDataset::append(std::vector<TrainingExample> batch)
{
  int last = examples_.empty() ? std::numeric_limits<int>::min() : examples_.back().iteration;
  for (const TrainingExample & ex : batch) {
    if (ex.iteration < last) throw std::invalid_argument("aggregation rounds must not decrease");
    ex.validate();
    last = ex.iteration;
  }
  for (TrainingExample & ex : batch) examples_.push_back(std::move(ex));
}

void AggregatedDataset::save(const std::filesystem::path & path) const
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "quad-dataset " << kDatasetSchemaVersion << '\n';
  out << "examples " << examples_.size() << " features " << costing::kNumFeatures << '\n';
  for (const TrainingExample & ex : examples_) {
    const std::size_t steps = ex.candidates.front().collision_terms.size();
    out << "example " << ex.iteration << ' ' << ex.expert << ' ' << ex.candidates.size() << ' ' << steps
        << ' ' << ex.t << ' ' << ex.scenario << '\n';
    const world::EgoState & e = ex.ego;
    out << "ego " << e.pose.x << ' ' << e.pose.y << ' ' << e.pose.heading << ' ' << e.speed << ' ' << e.accel
        << ' ' << e.curvature << '\n';
    for (const CandidateRecord & c : ex.candidates) {
      out << c.imitation;
      for (double f : c.features) out << ' ' << f;
      write_values(out, c.collision_terms);
      write_values(out, c.safety);
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

AggregatedDataset AggregatedDataset::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path.string());
  int version = 0;
  expect(in, "quad-dataset");
  if (!(in >> version) || version != kDatasetSchemaVersion) {
    throw std::runtime_error("unsupported dataset version");
  }
  std::size_t n = 0;
  std::size_t features = 0;
  expect(in, "examples");
  in >> n;
  expect(in, "features");
  in >> features;
  if (!in || features != costing::kNumFeatures) throw std::runtime_error("dataset feature count mismatch");

  std::vector<TrainingExample> examples(n);
  for (TrainingExample & ex : examples) {
    std::size_t count = 0;
    std::size_t steps = 0;
    expect(in, "example");
    in >> ex.iteration >> ex.expert >> count >> steps >> ex.t;
    std::getline(in >> std::ws, ex.scenario);
    expect(in, "ego");
    in >> ex.ego.pose.x >> ex.ego.pose.y >> ex.ego.pose.heading >> ex.ego.speed >> ex.ego.accel >>
      ex.ego.curvature;
    if (!in) throw std::runtime_error("truncated dataset");
    ex.candidates.resize(count);
    for (CandidateRecord & c : ex.candidates) {
      if (!(in >> c.imitation)) throw std::runtime_error("truncated dataset");
      const std::vector<double> f = read_values(in, costing::kNumFeatures);
      std::copy(f.begin(), f.end(), c.features.begin());
      c.collision_terms = read_values(in, steps);
      c.safety = read_values(in, steps);
    }
  }
  AggregatedDataset ds;
  ds.append(std::move(examples));
  return ds;
}

AggregatedDataset initial_dataset(
  const std::vector<sim::Scenario> & scenarios, const sim::Policy & expert, const DatasetConfig & cfg,
  const sim::FieldFactory & factory, const ExampleFilter & keep)
{
  AggregatedDataset ds;
  ds.append(collect(scenarios, expert, expert, 0, cfg, factory, keep));
  return ds;
}

void aggregate(
  AggregatedDataset & dataset, const costing::Weights & learner, const std::vector<sim::Scenario> & scenarios,
  const sim::Policy & expert, const DatasetConfig & cfg, const sim::FieldFactory & factory,
  const ExampleFilter & keep)
{
  const sim::QuadPolicy driver(learner, cfg.planner);
  dataset.append(collect(scenarios, driver, expert, dataset.rounds(), cfg, factory, keep));
}

}  // namespace quad::learn
