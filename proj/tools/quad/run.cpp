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

#include "quad/occupancy/grid_field.hpp"
#include "quad/sim/bench.hpp"
#include "quad/sim/library.hpp"
#include "quad/sim/traffic.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

namespace quad::tools
{

namespace
{

std::string plans_csv(const std::vector<sim::PlanRecord> & plans)
{
  std::ostringstream out;
  out << "t,chosen_index,candidates,error,min_ttc,k,x,y,heading,speed\n";
  out << std::fixed << std::setprecision(4);
  for (const sim::PlanRecord & r : plans) {
    for (std::size_t k = 0; k < r.plan.states.size(); ++k) {
      const world::EgoState & s = r.plan.states[k];
      out << r.t << ',' << r.chosen_index << ',' << r.candidates << ',' << (r.error ? 1 : 0) << ','
          << r.min_ttc << ',' << k << ',' << s.pose.x << ',' << s.pose.y << ',' << s.pose.heading << ','
          << s.speed << '\n';
    }
  }
  return out.str();
}

/// Candidate fan and occupancy grid at the initial state, for plotting.
void write_snapshot(
  const RunConfig & cfg, const sim::Scenario & scn, const fs::path & fan_path, const fs::path & grid_path)
{
  const planner::PlannerConfig pc = planner_config(cfg);
  const sim::Traffic traffic(scn);
  const auto actors = traffic.plans(scn.ego, pc.query.vehicle);
  const auto field = make_factory(cfg)(actors, scn.seed * 1000003ULL);
  const planner::PlanResult r = planner::plan(scn.ego, scn.map, *field, load_weights(cfg), pc);

  std::ostringstream fan;
  fan << "candidate,cost,chosen,k,x,y\n" << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    for (std::size_t k = 0; k < r.candidates[i].states.size(); ++k) {
      const world::Pose2D & p = r.candidates[i].states[k].pose;
      fan << i << ',' << r.costs[i].total << ',' << (i == r.chosen_index ? 1 : 0) << ',' << k << ',' << p.x
          << ',' << p.y << '\n';
    }
  }
  write_text(fan_path, fan.str());

  const occupancy::Region region{scn.ego.pose.x - 20.0, scn.ego.pose.y - 12.0, scn.ego.pose.x + 160.0,
                                 scn.ego.pose.y + 12.0};
  const occupancy::GridField grid = occupancy::grid_build(*field, region, 1.0, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
  std::ostringstream g;
  grid.write_csv(g);
  write_text(grid_path, g.str());
}

}  // namespace

std::vector<ScenarioResult> run_scenarios(
  const RunConfig & cfg, const std::vector<sim::Scenario> & scenarios, const sim::Policy & policy)
{
  const sim::FieldFactory factory = make_factory(cfg);
  sim::SimConfig sc;
  sc.vehicle = planner_config(cfg).query.vehicle;
  const sim::ExpertPolicy driver(planner::ExpertWeights::preset(), planner_config(cfg));
  std::vector<ScenarioResult> out(scenarios.size());
  parallel_for(scenarios.size(), cfg.jobs, [&](std::size_t i) {
    const sim::Scenario & scn = scenarios[i];
    ScenarioResult & r = out[i];
    if (cfg.open_loop) {
      sim::OpenLoopLog log = sim::run_open_loop(scn, driver, policy, factory, sc);
      r.metrics = sim::compute_open_loop_metrics(scn, log, sc.vehicle);
      r.driven = std::move(log.driven);
      r.plans = std::move(log.proposals);
    } else {
      r.driven = sim::run_closed_loop(scn, policy, factory, sc);
      r.metrics = sim::compute_metrics(scn, r.driven, nullptr, sc.vehicle);
      r.plans = r.driven.plans;
    }
  });
  return out;
}

int cmd_run(const RunConfig & cfg, const RunOptions & opt)
{
  const auto scenarios = load_scenarios(cfg.scenarios, cfg.seed);
  const auto policy = make_policy(cfg, cfg.planner);
  ensure_dir(cfg.out);
  const auto results = run_scenarios(cfg, scenarios, *policy);

  std::vector<sim::ScenarioMetrics> rows;
  for (const ScenarioResult & r : results) rows.push_back(r.metrics);
  const sim::MetricsReport report = sim::aggregate(rows);
  std::ostringstream metrics;
  sim::write_scenario_csv(metrics, rows);
  write_text(cfg.out / "metrics.csv", metrics.str());
  std::ostringstream summary;
  sim::write_summary_csv(summary, report);
  write_text(cfg.out / "summary.csv", summary.str());

  if (opt.write_traces) {
    for (const char * sub : {"traces", "plans", "scenarios", "fans", "grids"}) ensure_dir(cfg.out / sub);
    parallel_for(scenarios.size(), cfg.jobs, [&](std::size_t i) {
      const std::string & name = scenarios[i].name;
      std::ostringstream trace;
      sim::write_trace_csv(trace, results[i].driven);
      write_text(cfg.out / "traces" / (name + ".csv"), trace.str());
      write_text(cfg.out / "plans" / (name + ".csv"), plans_csv(results[i].plans));
      write_text(cfg.out / "scenarios" / (name + ".json"), scenarios[i].to_json().dump(2) + "\n");
      write_snapshot(cfg, scenarios[i], cfg.out / "fans" / (name + ".csv"), cfg.out / "grids" / (name + ".csv"));
    });
  }
  write_metadata(cfg.out, "run", cfg.to_json());
  std::cout << summary.str();
  return kExitOk;
}

int cmd_bench(const RunConfig & cfg, const BenchOptions & opt)
{
  if (opt.repeats < 1) throw ConfigError("repeats must be at least 1");
  if (opt.resolutions.empty()) throw ConfigError("need at least one resolution");
  for (double r : opt.resolutions) {
    if (!(r > 0.0)) throw ConfigError("resolutions must be positive");
  }
  sim::Scenario scn = cfg.scenarios == "builtin:crowded"
                        ? sim::crowded_scenario(static_cast<std::size_t>(std::max(0, opt.actors)), 7 + cfg.seed)
                        : load_scenarios(cfg.scenarios, cfg.seed).front();
  sim::BenchConfig bc;
  bc.resolutions = opt.resolutions;
  bc.repeats = opt.repeats;
  bc.sigma = cfg.sigma;
  bc.grid_resolution = opt.grid_resolution;
  bc.grid_query_resolution = cfg.resolution;
  bc.planner = planner_config(cfg);
  ensure_dir(cfg.out);
  const auto rows = sim::bench_step(scn, bc);
  std::ostringstream csv;
  sim::write_bench_csv(csv, rows);
  // Wall times vary run to run, so the table goes next to the metadata.
  write_text(cfg.out / "bench.csv", csv.str());
  nlohmann::json meta = cfg.to_json();
  meta["bench"] = {{"scenario", scn.name}, {"actors", scn.actors.size()}, {"repeats", opt.repeats}};
  write_metadata(cfg.out, "bench", meta);
  std::cout << csv.str();
  return kExitOk;
}

std::string ablation_csv(const std::vector<std::pair<std::string, sim::MetricsReport>> & rows)
{
  std::ostringstream out;
  const char * names[] = {"gsr", "ecr", "pcr", "tvr", "min_ttc_p10", "progress", "p2p", "jerk"};
  auto values = [](const sim::MetricsReport & r) {
    return std::array<double, 8>{r.gsr, r.ecr, r.pcr, r.tvr, r.min_ttc_p10, r.progress, r.p2p, r.jerk};
  };
  out << "dropped";
  for (const char * n : names) out << ',' << n;
  for (const char * n : names) out << ",delta_" << n;
  out << '\n' << std::fixed << std::setprecision(6);
  const auto base = values(rows.front().second);
  for (const auto & [name, report] : rows) {
    const auto v = values(report);
    out << name;
    for (double x : v) out << ',' << x;
    for (std::size_t i = 0; i < v.size(); ++i) out << ',' << v[i] - base[i];
    out << '\n';
  }
  return out.str();
}

int cmd_ablate(const RunConfig & cfg, const AblateOptions & opt)
{
  std::vector<std::string> drop = opt.drop;
  if (drop.empty()) {
    for (const char * g : {"collision", "buffer", "comfort", "corridor", "boundary", "speed_limit", "progress", "route"}) {
      drop.emplace_back(g);
    }
  }
  for (const std::string & d : drop) {
    if (d != "none" && !costing::group_from_name(d)) throw ConfigError("unknown cost group '" + d + "'");
  }
  const auto scenarios = load_scenarios(cfg.scenarios, cfg.seed);
  const costing::Weights base = load_weights(cfg);
  const planner::PlannerConfig pc = planner_config(cfg);
  ensure_dir(cfg.out);

  auto report_for = [&](const costing::Weights & w) {
    const sim::QuadPolicy policy(w, pc);
    std::vector<sim::ScenarioMetrics> rows;
    for (const ScenarioResult & r : run_scenarios(cfg, scenarios, policy)) rows.push_back(r.metrics);
    return sim::aggregate(rows);
  };
  std::vector<std::pair<std::string, sim::MetricsReport>> rows;
  rows.emplace_back("baseline", report_for(base));
  for (const std::string & d : drop) {
    const costing::Weights w = d == "none" ? base : base.without(*costing::group_from_name(d));
    rows.emplace_back(d, report_for(w));
  }
  const std::string csv = ablation_csv(rows);
  write_text(cfg.out / "ablation.csv", csv);
  nlohmann::json meta = cfg.to_json();
  meta["drop"] = drop;
  write_metadata(cfg.out, "ablate", meta);
  std::cout << csv;
  return kExitOk;
}

}  // namespace quad::tools
