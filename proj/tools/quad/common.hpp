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

#ifndef QUAD_TOOLS__COMMON_HPP_
#define QUAD_TOOLS__COMMON_HPP_

#include "quad/costing/weights.hpp"
#include "quad/planner/planner.hpp"
#include "quad/sim/scenario.hpp"
#include "quad/sim/simulator.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quad::tools
{

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Bad input from the user: flags, config file, missing paths.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Settings shared by every subcommand. File values are loaded first and
/// command-line flags override them.
struct RunConfig
{
  std::string planner{"quad"};  ///< quad, expert or hard_brake
  std::optional<fs::path> weights;
  nlohmann::json planner_config = nlohmann::json::object();
  double resolution{0.5};
  double sigma{0.25};
  double noise{0.0};  ///< oracle position jitter std, 0 disables
  std::uint64_t seed{0};
  std::string scenarios{"builtin:eval"};
  fs::path out{"quad_out"};
  int jobs{1};
  bool open_loop{false};
  /// True once a config file provided the seed.
  bool seed_from_file{false};

  /// Throws ConfigError on unknown keys or wrong types.
  void merge_file(const fs::path & path);
  void validate() const;
  nlohmann::json to_json() const;
};

/// Seed lookup order: explicit value, then QUAD_SEED, then 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed, std::optional<std::uint64_t> file_seed);

costing::Weights load_weights(const RunConfig & cfg);
planner::PlannerConfig planner_config(const RunConfig & cfg);
std::unique_ptr<sim::Policy> make_policy(const RunConfig & cfg, const std::string & name);
sim::FieldFactory make_factory(const RunConfig & cfg);

/// builtin:eval|train|smoke|crowded|empty, a directory of *.json, or one file.
/// The run seed is added to every scenario seed.
std::vector<sim::Scenario> load_scenarios(const std::string & spec, std::uint64_t seed);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; results stay ordered
/// because callers write into slot i.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)> & fn);

void ensure_dir(const fs::path & dir);
/// Timestamps and the command line live here and nowhere else.
void write_metadata(const fs::path & dir, const std::string & command, const nlohmann::json & config);
void write_text(const fs::path & path, const std::string & text);

}  // namespace quad::tools

#endif  // QUAD_TOOLS__COMMON_HPP_
