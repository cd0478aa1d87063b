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

#include "quad/sim/bench.hpp"

#include "quad/occupancy/grid_field.hpp"
#include "quad/sim/traffic.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>

namespace quad::sim
{

namespace
{

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

/// Plans `repeats` times and keeps the median of each timing.
BenchRow timed_plan(
  const std::string & mode, double resolution, const Scenario & scn, const occupancy::OccupancyField & field,
  const planner::PlannerConfig & pcfg, int repeats)
{
  BenchRow row;
  row.mode = mode;
  row.resolution = resolution;
  std::vector<double> sample, query, cost, total;
  for (int r = 0; r < std::max(1, repeats); ++r) {
    field.reset_evaluations();
    const planner::PlanResult res = planner::plan(scn.ego, scn.map, field, costing::Weights::defaults(), pcfg);
    row.candidates = res.stats.candidates;
    row.raw_points = res.stats.queries.raw_points;
    row.unique_points = res.stats.queries.unique_points;
    row.field_evaluations = field.evaluations();
    sample.push_back(res.stats.sample_ms);
    query.push_back(res.stats.query_ms);
    cost.push_back(res.stats.cost_ms);
    total.push_back(res.stats.total_ms);
  }
  row.sample_ms = median(sample);
  row.query_ms = median(query);
  row.cost_ms = median(cost);
  row.total_ms = median(total);
  return row;
}

occupancy::Region candidate_extent(const Scenario & scn, const planner::PlannerConfig & pcfg)
{
  const auto cands = sampler::generate_candidates(scn.ego, scn.map, pcfg.sampler);
  occupancy::Region r{
    std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
    -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Trajectory & t : cands) {
    for (const world::EgoState & s : t.states) {
      r.x_min = std::min(r.x_min, s.pose.x);
      r.y_min = std::min(r.y_min, s.pose.y);
      r.x_max = std::max(r.x_max, s.pose.x);
      r.y_max = std::max(r.y_max, s.pose.y);
    }
  }
  // Room for the footprint and the buffer regions around it.
  const double pad = 2.0 * (pcfg.query.vehicle.length + pcfg.query.vehicle.width);
  return {r.x_min - pad, r.y_min - pad, r.x_max + pad, r.y_max + pad};
}

}  // namespace

std::vector<BenchRow> bench_step(const Scenario & scn, const BenchConfig & cfg)
{
  const Traffic traffic(scn);
  const occupancy::OracleField field(traffic.plans(scn.ego, cfg.planner.query.vehicle), cfg.sigma);
  std::vector<BenchRow> rows;

  planner::PlannerConfig pcfg = cfg.planner;
  pcfg.query.quantized = false;
  rows.push_back(timed_plan("continuous", 0.0, scn, field, pcfg, cfg.repeats));

  for (double res : cfg.resolutions) {
    pcfg.query.quantized = true;
    pcfg.query.resolution = res;
    rows.push_back(timed_plan("quantized", res, scn, field, pcfg, cfg.repeats));
  }

  const occupancy::Region region = candidate_extent(scn, cfg.planner);
  std::vector<double> times;
  for (int k = 0; k <= kHorizonSteps; ++k) times.push_back(k * kPlanDt);
  std::vector<double> build;
  std::size_t cells = 0;
  std::unique_ptr<occupancy::GridField> grid;
  for (int r = 0; r < std::max(1, cfg.repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    grid = std::make_unique<occupancy::GridField>(occupancy::grid_build(field, region, cfg.grid_resolution, times));
    build.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    cells = grid->size();
  }
  pcfg.query.quantized = true;
  pcfg.query.resolution = cfg.grid_query_resolution;
  BenchRow g = timed_plan("dense_grid", cfg.grid_resolution, scn, *grid, pcfg, cfg.repeats);
  g.grid_cells = cells;
  g.build_ms = median(build);
  g.total_ms += g.build_ms;
  rows.push_back(g);
  return rows;
}

void write_bench_csv(std::ostream & out, const std::vector<BenchRow> & rows)
{
  out << "mode,resolution,candidates,raw_points,unique_points,field_evaluations,grid_cells,build_ms,"
         "sample_ms,query_ms,cost_ms,total_ms\n";
  out << std::fixed << std::setprecision(3);
  for (const BenchRow & r : rows) {
    out << r.mode << ',' << r.resolution << ',' << r.candidates << ',' << r.raw_points << ','
        << r.unique_points << ',' << r.field_evaluations << ',' << r.grid_cells << ',' << r.build_ms << ','
        << r.sample_ms << ',' << r.query_ms << ',' << r.cost_ms << ',' << r.total_ms << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace quad::sim
