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

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace
{

using namespace quad::tools;

/// Flags shared by every simulation subcommand; each overrides the file.
struct CommonFlags
{
  std::string config;
  std::string planner;
  std::string weights;
  double resolution{0.0};
  double sigma{0.0};
  double noise{0.0};
  std::uint64_t seed{0};
  std::string scenarios;
  std::string out;
  int jobs{1};
  bool open_loop{false};
  std::map<std::string, CLI::Option *> opts;

  void attach(CLI::App * app, bool with_planner)
  {
    opts["config"] = app->add_option("-c,--config", config, "JSON config file; flags override it");
    if (with_planner) {
      opts["planner"] = app->add_option("--planner", planner, "quad, expert or hard_brake");
      opts["open_loop"] = app->add_flag("--open-loop", open_loop, "expert drives; the planner only proposes");
    }
    opts["weights"] = app->add_option("--weights", weights, "cost weights JSON");
    opts["resolution"] = app->add_option("--resolution", resolution, "query quantization cell size (m)");
    opts["sigma"] = app->add_option("--sigma", sigma, "oracle boundary softness (m)");
    opts["noise"] = app->add_option("--noise", noise, "oracle position jitter std (m), 0 = off");
    opts["seed"] = app->add_option("--seed", seed, "run seed (falls back to QUAD_SEED)");
    opts["scenarios"] = app->add_option("--scenarios", scenarios, "builtin:<eval|train|smoke|crowded|empty>, a directory or a file");
    opts["out"] = app->add_option("-o,--out", out, "output directory");
    opts["jobs"] = app->add_option("-j,--jobs", jobs, "scenarios run in parallel");
  }

  bool given(const std::string & name) const
  {
    const auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }

  RunConfig resolve(const std::string & default_scenarios) const
  {
    RunConfig cfg;
    cfg.scenarios = default_scenarios;
    if (given("config")) cfg.merge_file(config);
    if (given("planner")) cfg.planner = planner;
    if (given("open_loop")) cfg.open_loop = open_loop;
    if (given("weights")) cfg.weights = weights;
    if (given("resolution")) cfg.resolution = resolution;
    if (given("sigma")) cfg.sigma = sigma;
    if (given("noise")) cfg.noise = noise;
    if (given("scenarios")) cfg.scenarios = scenarios;
    if (given("out")) cfg.out = out;
    if (given("jobs")) cfg.jobs = jobs;
    cfg.seed = resolve_seed(
      given("seed") ? std::optional<std::uint64_t>(seed) : std::nullopt,
      cfg.seed_from_file ? std::optional<std::uint64_t>(cfg.seed) : std::nullopt);
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Query-based highway motion planner: simulate, benchmark, train and plot."};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App * run = app.add_subcommand("run", "run a scenario set and write metrics, traces and snapshots");
  run_flags.attach(run, true);
  RunOptions run_opt;
  bool no_traces = false;
  run->add_flag("--no-traces", no_traces, "only write metrics and summary");

  CommonFlags bench_flags;
  CLI::App * bench = app.add_subcommand("bench", "profile one planning step: continuous, quantized and dense grid");
  bench_flags.attach(bench, false);
  BenchOptions bench_opt;
  bench->add_option("--actors", bench_opt.actors, "actors in the built-in crowded scenario");
  bench->add_option("--repeats", bench_opt.repeats, "timing repetitions (median is reported)");
  bench->add_option("--resolutions", bench_opt.resolutions, "quantization resolutions to profile");
  bench->add_option("--grid-resolution", bench_opt.grid_resolution, "dense-grid cell size (m)");

  CommonFlags ablate_flags;
  CLI::App * ablate = app.add_subcommand("ablate", "rerun the set with one cost group dropped at a time");
  ablate_flags.attach(ablate, false);
  AblateOptions ablate_opt;
  ablate->add_option("--drop", ablate_opt.drop, "cost groups to drop (default: all), or none");

  CommonFlags train_flags;
  CLI::App * train = app.add_subcommand("train", "fit cost weights by max-margin imitation with aggregation");
  train_flags.attach(train, false);
  TrainOptions train_opt;
  std::string expert_weights;
  std::string dataset;
  train->add_option("--iterations", train_opt.iterations, "aggregation rounds after the expert round");
  train->add_option("--epochs", train_opt.epochs, "subgradient epochs per fit");
  train->add_option("--lr", train_opt.lr, "initial step size");
  train->add_option("--init-scale", train_opt.init_scale, "initial weights = weights * scale");
  train->add_option("--stride", train_opt.stride, "label every n-th planning step");
  train->add_option("--expert", train_opt.expert, "synthetic (hidden weights) or privileged");
  auto * ew = train->add_option("--expert-weights", expert_weights, "hidden weights of the synthetic expert");
  train->add_option("--separation-scale", train_opt.separation_scale, "keep states the expert separates at this scale; 0 keeps all");
  train->add_option("--validation", train_opt.validation, "held-out scenario set for the match rate");
  auto * dso = train->add_option("--dataset", dataset, "start from a saved dataset");

  std::string plot_run;
  std::string plot_out;
  CLI::App * plot = app.add_subcommand("plot", "render SVG figures from a run directory");
  plot->add_option("run_dir", plot_run, "directory written by `run`")->required();
  auto * plot_out_opt = plot->add_option("-o,--out", plot_out, "image directory (default: <run_dir>/plots)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      run_opt.write_traces = !no_traces;
      return cmd_run(run_flags.resolve("builtin:eval"), run_opt);
    }
    if (bench->parsed()) return cmd_bench(bench_flags.resolve("builtin:crowded"), bench_opt);
    if (ablate->parsed()) return cmd_ablate(ablate_flags.resolve("builtin:eval"), ablate_opt);
    if (train->parsed()) {
      if (ew->count() > 0) train_opt.expert_weights = expert_weights;
      if (dso->count() > 0) train_opt.dataset = dataset;
      return cmd_train(train_flags.resolve("builtin:train"), train_opt);
    }
    if (plot->parsed()) {
      const fs::path out = plot_out_opt->count() > 0 ? fs::path(plot_out) : fs::path(plot_run) / "plots";
      return cmd_plot(plot_run, out);
    }
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
