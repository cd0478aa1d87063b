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

#include "commands.hpp"

#include "quad/learn/dataset.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

namespace quad::tools
{

int cmd_train(const RunConfig & cfg, const TrainOptions & opt)
{
  if (opt.iterations < 0) throw ConfigError("iterations must be non-negative");
  if (opt.epochs < 0) throw ConfigError("epochs must be non-negative");
  if (!(opt.lr > 0.0)) throw ConfigError("lr must be positive");
  if (!(opt.init_scale > 0.0)) throw ConfigError("init-scale must be positive");
  if (opt.stride == 0) throw ConfigError("stride must be positive");
  if (opt.separation_scale < 0.0) throw ConfigError("separation-scale must be non-negative");
  if (opt.expert != "synthetic" && opt.expert != "privileged") {
    throw ConfigError("expert must be synthetic or privileged");
  }
  if (opt.dataset && !fs::exists(*opt.dataset)) throw ConfigError("dataset not found: " + opt.dataset->string());

  const auto scenarios = load_scenarios(cfg.scenarios, cfg.seed);
  std::vector<sim::Scenario> validation;
  if (!opt.validation.empty()) validation = load_scenarios(opt.validation, cfg.seed);
  const planner::PlannerConfig pc = planner_config(cfg);

  costing::Weights hidden = learn::synthetic_expert_weights();
  if (opt.expert_weights) {
    try {
      hidden = costing::Weights::load(*opt.expert_weights);
    } catch (const std::exception & e) {
      throw ConfigError(std::string("expert weights: ") + e.what());
    }
  }
  std::unique_ptr<sim::Policy> expert;
  learn::ExampleFilter keep;
  if (opt.expert == "synthetic") {
    expert = std::make_unique<sim::QuadPolicy>(hidden, pc);
    if (opt.separation_scale > 0.0) keep = learn::separable_under(hidden, opt.separation_scale);
  } else {
    expert = std::make_unique<sim::ExpertPolicy>(planner::ExpertWeights::preset(), pc);
  }

  learn::DatasetConfig dc;
  dc.planner = pc;
  dc.vehicle = pc.query.vehicle;
  dc.stride = opt.stride;
  const sim::FieldFactory factory = make_factory(cfg);
  ensure_dir(cfg.out);

  learn::AggregatedDataset ds = opt.dataset
                                  ? learn::AggregatedDataset::load(*opt.dataset)
                                  : learn::initial_dataset(scenarios, *expert, dc, factory, keep);
  std::vector<learn::TrainingExample> held;
  if (!validation.empty()) held = learn::collect(validation, *expert, *expert, 0, dc, factory, keep);

  const costing::Weights init = load_weights(cfg).scaled(opt.init_scale);
  learn::FitConfig fc;
  fc.epochs = opt.epochs;
  fc.lr = opt.lr;

  std::ostringstream log;
  std::ostringstream summary;
  log << "round,epoch,train_loss,best_so_far\n" << std::scientific << std::setprecision(6);
  summary << "round,examples,train_loss,train_match,validation_examples,validation_match\n"
          << std::fixed << std::setprecision(6);

  costing::Weights w = init;
  for (int round = 0; round <= opt.iterations; ++round) {
    if (round > 0) learn::aggregate(ds, w, scenarios, *expert, dc, factory, keep);
    const learn::FitResult fit = learn::fit_weights(ds.examples(), init, fc);
    w = fit.weights;
    for (std::size_t k = 0; k < fit.train_loss.size(); ++k) {
      log << round << ',' << k << ',' << fit.train_loss[k] << ',' << fit.best_so_far[k] << '\n';
    }
    summary << round << ',' << ds.size() << ',' << fit.loss << ',' << learn::match_rate(ds.examples(), w) << ','
            << held.size() << ',';
    if (!held.empty()) summary << learn::match_rate(held, w);
    summary << '\n';
    w.save(cfg.out / ("weights_round" + std::to_string(round) + ".json"));
  }
  w.save(cfg.out / "weights.json");
  ds.save(cfg.out / "dataset.txt");
  write_text(cfg.out / "train_log.csv", log.str());
  write_text(cfg.out / "train_summary.csv", summary.str());

  nlohmann::json meta = cfg.to_json();
  meta["train"] = {
    {"iterations", opt.iterations}, {"epochs", opt.epochs}, {"lr", opt.lr}, {"init_scale", opt.init_scale},
    {"stride", opt.stride}, {"expert", opt.expert}, {"separation_scale", opt.separation_scale},
    {"validation", opt.validation}, {"expert_weights", hidden.to_json()}};
  write_metadata(cfg.out, "train", meta);
  std::cout << summary.str();
  return kExitOk;
}

}  // namespace quad::tools
