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

#include "common.hpp"

#include "quad/occupancy/oracle_field.hpp"
#include "quad/sim/library.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace quad::tools
{

namespace
{

template <typename T>
T get_as(const nlohmann::json & doc, const std::string & key)
{
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

void RunConfig::merge_file(const fs::path & path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const fs::path base = path.parent_path();
  auto rel = [&](const std::string & p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };
  for (const auto & [key, value] : doc.items()) {
    if (key == "planner") {
      planner = get_as<std::string>(doc, key);
    } else if (key == "weights") {
      weights = rel(get_as<std::string>(doc, key));
    } else if (key == "planner_config") {
      if (!value.is_object()) throw ConfigError("planner_config must be an object");
      planner_config = value;
    } else if (key == "resolution") {
      resolution = get_as<double>(doc, key);
    } else if (key == "sigma") {
      sigma = get_as<double>(doc, key);
    } else if (key == "noise") {
      noise = get_as<double>(doc, key);
    } else if (key == "seed") {
      seed = get_as<std::uint64_t>(doc, key);
      seed_from_file = true;
    } else if (key == "scenarios") {
      const std::string s = get_as<std::string>(doc, key);
      scenarios = s.starts_with("builtin:") ? s : rel(s).string();
    } else if (key == "out") {
      out = rel(get_as<std::string>(doc, key));
    } else if (key == "jobs") {
      jobs = get_as<int>(doc, key);
    } else if (key == "open_loop") {
      open_loop = get_as<bool>(doc, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void RunConfig::validate() const
{
  if (planner != "quad" && planner != "expert" && planner != "hard_brake") {
    throw ConfigError("planner must be quad, expert or hard_brake");
  }
  if (!(resolution > 0.0)) throw ConfigError("resolution must be positive");
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be non-negative");
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (weights && !fs::exists(*weights)) throw ConfigError("weights file not found: " + weights->string());
}

nlohmann::json RunConfig::to_json() const
{
  return {
    {"planner", planner},
    {"weights", weights ? weights->string() : ""},
    {"planner_config", planner_config},
    {"resolution", resolution},
    {"sigma", sigma},
    {"noise", noise},
    {"seed", seed},
    {"scenarios", scenarios},
    {"out", out.string()},
    {"jobs", jobs},
    {"open_loop", open_loop},
  };
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::optional<std::uint64_t> file_seed)
{
  if (explicit_seed) return *explicit_seed;
  if (file_seed) return *file_seed;
  if (const char * env = std::getenv("QUAD_SEED"); env != nullptr && *env != '\0') {
    char * end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ConfigError("QUAD_SEED must be a non-negative integer");
    return v;
  }
  return 0;
}

costing::Weights load_weights(const RunConfig & cfg)
{
  if (!cfg.weights) return costing::Weights::defaults();
  try {
    return costing::Weights::load(*cfg.weights);
  } catch (const std::exception & e) {
    throw ConfigError(std::string("weights: ") + e.what());
  }
}

planner::PlannerConfig planner_config(const RunConfig & cfg)
{
  planner::PlannerConfig pc;
  try {
    pc = planner::PlannerConfig::from_json(cfg.planner_config);
  } catch (const std::exception & e) {
    throw ConfigError(std::string("planner_config: ") + e.what());
  }
  pc.query.resolution = cfg.resolution;
  return pc;
}

std::unique_ptr<sim::Policy> make_policy(const RunConfig & cfg, const std::string & name)
{
  if (name == "quad") return std::make_unique<sim::QuadPolicy>(load_weights(cfg), planner_config(cfg));
  if (name == "expert") {
    return std::make_unique<sim::ExpertPolicy>(planner::ExpertWeights::preset(), planner_config(cfg));
  }
  if (name == "hard_brake") return std::make_unique<sim::HardBrakePolicy>();
  throw ConfigError("unknown planner '" + name + "'");
}

sim::FieldFactory make_factory(const RunConfig & cfg)
{
  const double sigma = cfg.sigma;
  const double noise = cfg.noise;
  return [sigma, noise](const std::vector<occupancy::ActorPlan> & plans, std::uint64_t seed) {
    std::optional<occupancy::NoiseModel> model;
    if (noise > 0.0) model = occupancy::NoiseModel{noise, seed};
    return std::make_unique<occupancy::OracleField>(plans, sigma, 5.0, model);
  };
}

std::vector<sim::Scenario> load_scenarios(const std::string & spec, std::uint64_t seed)
{
  std::vector<sim::Scenario> out;
  if (spec == "builtin:eval") {
    out = sim::safety_suite(sim::Split::eval);
  } else if (spec == "builtin:train") {
    out = sim::safety_suite(sim::Split::train);
  } else if (spec == "builtin:smoke") {
    out = sim::smoke_set();
  } else if (spec == "builtin:crowded") {
    out = {sim::crowded_scenario()};
  } else if (spec == "builtin:empty") {
    out = {sim::empty_road()};
  } else if (spec.starts_with("builtin:")) {
    throw ConfigError("unknown builtin scenario set '" + spec + "'");
  } else {
    const fs::path p(spec);
    try {
      if (fs::is_directory(p)) {
        out = sim::load_scenario_dir(p);
      } else if (fs::is_regular_file(p)) {
        out = {sim::Scenario::load(p)};
      } else {
        throw ConfigError("scenario path not found: " + spec);
      }
    } catch (const ConfigError &) {
      throw;
    } catch (const std::exception & e) {
      throw ConfigError("scenarios: " + std::string(e.what()));
    }
  }
  if (out.empty()) throw ConfigError("no scenarios in '" + spec + "'");
  for (sim::Scenario & s : out) s.seed += seed;
  return out;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> & fn)
{
  const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread & t : pool) t.join();
  for (const std::exception_ptr & e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void ensure_dir(const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create directory " + dir.string());
}

void write_metadata(const fs::path & dir, const std::string & command, const nlohmann::json & config)
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream ts;
  ts << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  nlohmann::json doc{{"command", command}, {"timestamp", ts.str()}, {"config", config}};
  write_text(dir / "metadata.json", doc.dump(2) + "\n");
}

void write_text(const fs::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace quad::tools
