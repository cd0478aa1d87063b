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


#include "quad/planner/planner.hpp"

#include <chrono>

namespace quad::planner
{

namespace
{
double ms_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}
}  // namespace

nlohmann::json PlannerConfig::to_json() const
{
  return {
    {"sampler", sampler.to_json()},
    {"query",
     {{"grid_res", query.grid_res}, {"resolution", query.resolution}, {"quantized", query.quantized}}},
    {"cost",
     {{"route_speed_modulation", cost.route_speed_modulation},
      {"reference_speed", cost.reference_speed}}},
  };
}

PlannerConfig PlannerConfig::from_json(const nlohmann::json & doc)
{
  PlannerConfig cfg;
  if (doc.contains("sampler")) cfg.sampler = sampler::SamplerConfig::from_json(doc.at("sampler"));
  if (doc.contains("query")) {
    const auto & q = doc.at("query");
    cfg.query.grid_res = q.value("grid_res", cfg.query.grid_res);
    cfg.query.resolution = q.value("resolution", cfg.query.resolution);
    cfg.query.quantized = q.value("quantized", cfg.query.quantized);
  }
  if (doc.contains("cost")) {
    const auto & c = doc.at("cost");
    cfg.cost.route_speed_modulation = c.value("route_speed_modulation", cfg.cost.route_speed_modulation);
    cfg.cost.reference_speed = c.value("reference_speed", cfg.cost.reference_speed);
  }
  if (!(cfg.query.grid_res > 0.0) || !(cfg.query.resolution > 0.0)) {
    throw std::invalid_argument("query resolutions must be positive");
  }
  cfg.query.vehicle = cfg.sampler.vehicle;
  return cfg;
}

std::size_t argmin_index(const std::vector<costing::CostBreakdown> & costs)
{
  std::size_t best = 0;
  for (std::size_t i = 1; i < costs.size(); ++i) {
    if (costs[i].total < costs[best].total) best = i;
  }
  return best;
}

PlanResult plan(
  const world::EgoState & ego, const world::LaneMap & map, const occupancy::OccupancyField & field,
  const costing::Weights & w, const PlannerConfig & cfg)
{
  const auto t0 = std::chrono::steady_clock::now();
  PlanResult out;
  out.candidates = sampler::generate_candidates(ego, map, cfg.sampler);
  out.stats.sample_ms = ms_since(t0);
  out.stats.candidates = out.candidates.size();
  if (out.candidates.empty()) {
    out.chosen = sampler::hard_brake(ego, map, cfg.sampler);
    out.error = "empty candidate set";
    out.stats.total_ms = ms_since(t0);
    return out;
  }

  const auto t1 = std::chrono::steady_clock::now();
  const query::EvaluatedQueries eq = query::run_queries(out.candidates, field, cfg.query);
  out.stats.query_ms = ms_since(t1);
  out.stats.queries = eq.stats;

  const auto t2 = std::chrono::steady_clock::now();
  out.costs.reserve(out.candidates.size());
  for (std::size_t i = 0; i < out.candidates.size(); ++i) {
    out.costs.push_back(costing::total_cost(out.candidates[i], eq.view(i), map, w, cfg.cost));
  }
  out.stats.cost_ms = ms_since(t2);

  out.chosen_index = argmin_index(out.costs);
  out.chosen = out.candidates[out.chosen_index];
  out.stats.total_ms = ms_since(t0);
  return out;
}

}  // namespace quad::planner
