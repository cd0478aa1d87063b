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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string & name)
{
  const fs::path p = fs::path(testing::TempDir()) / ("quad_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int quad(const std::string & args)
{
  const std::string cmd = std::string(QUAD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const fs::path & p)
{
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string & s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Cli, HelpAndBadFlags)
{
  EXPECT_EQ(quad("--help"), 0);
  EXPECT_EQ(quad("run --no-such-flag"), 1);
  EXPECT_EQ(quad(""), 1);
}

TEST(Cli, EmptyScenarioDirectoryIsConfigError)
{
  const fs::path dir = scratch("empty");
  fs::create_directories(dir / "scn");
  EXPECT_EQ(quad("run --scenarios " + (dir / "scn").string() + " --out " + (dir / "o").string()), 1);
}

TEST(Cli, InvalidValuesAreConfigErrors)
{
  const fs::path dir = scratch("invalid");
  const std::string out = " --scenarios builtin:smoke --out " + (dir / "o").string();
  EXPECT_EQ(quad("run --planner nope" + out), 1);
  EXPECT_EQ(quad("run --resolution -1" + out), 1);
  EXPECT_EQ(quad("run --weights " + (dir / "missing.json").string() + out), 1);
  std::ofstream(dir / "cfg.json") << R"({"unknown_key": 3})";
  EXPECT_EQ(quad("run --config " + (dir / "cfg.json").string() + out), 1);
}

TEST(Cli, UnwritableOutputIsRuntimeError)
{
  const fs::path dir = scratch("unwritable");
  std::ofstream(dir / "file") << "x";
  EXPECT_EQ(quad("run --scenarios builtin:smoke --out " + (dir / "file" / "sub").string()), 2);
}

TEST(Cli, RunWritesMetricsAndIsReproducible)
{
  const fs::path dir = scratch("run");
  ASSERT_EQ(quad("run --scenarios builtin:smoke --seed 5 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(quad("run --scenarios builtin:smoke --seed 5 --out " + (dir / "b").string()), 0);

  const auto metrics = lines(dir / "a" / "metrics.csv");
  ASSERT_EQ(metrics.size(), 4u);
  EXPECT_EQ(split(metrics[0])[0], "scenario");
  EXPECT_EQ(lines(dir / "a" / "summary.csv").size(), 2u);
  EXPECT_TRUE(fs::exists(dir / "a" / "metadata.json"));

  for (const auto & entry : fs::recursive_directory_iterator(dir / "a")) {
    if (!entry.is_regular_file() || entry.path().filename() == "metadata.json") continue;
    const fs::path twin = dir / "b" / fs::relative(entry.path(), dir / "a");
    ASSERT_TRUE(fs::exists(twin)) << twin;
    EXPECT_EQ(slurp(entry.path()), slurp(twin)) << entry.path();
  }
}

TEST(Cli, SeedFromEnvironmentMatchesFlag)
{
  const fs::path dir = scratch("seed");
  ASSERT_EQ(quad("run --no-traces --scenarios builtin:smoke --noise 0.3 --seed 9 --out " + (dir / "a").string()), 0);
  ASSERT_EQ(quad("run --no-traces --scenarios builtin:smoke --noise 0.3 --seed 10 --out " + (dir / "b").string()), 0);
  const std::string env = "QUAD_SEED=9 " + std::string(QUAD_CLI_PATH) +
                          " run --no-traces --scenarios builtin:smoke --noise 0.3 --out " +
                          (dir / "c").string() + " > /dev/null 2>&1";
  ASSERT_EQ(std::system(env.c_str()), 0);
  EXPECT_EQ(slurp(dir / "a" / "metrics.csv"), slurp(dir / "c" / "metrics.csv"));
  EXPECT_NE(slurp(dir / "a" / "metrics.csv"), slurp(dir / "b" / "metrics.csv"));
}

TEST(Cli, AblateWithoutDropsHasZeroDeltas)
{
  const fs::path dir = scratch("ablate");
  ASSERT_EQ(quad("ablate --scenarios builtin:smoke --drop none --out " + dir.string()), 0);
  const auto rows = lines(dir / "ablation.csv");
  ASSERT_EQ(rows.size(), 3u);
  const auto header = split(rows[0]);
  const auto none = split(rows[2]);
  ASSERT_EQ(none[0], "none");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i].rfind("delta_", 0) == 0) EXPECT_DOUBLE_EQ(std::stod(none[i]), 0.0) << header[i];
  }
  EXPECT_EQ(quad("ablate --scenarios builtin:smoke --drop nonsense --out " + dir.string()), 1);
}

TEST(Cli, PlotRendersOneImagePerScenario)
{
  const fs::path dir = scratch("plot");
  EXPECT_EQ(quad("plot " + (dir / "missing").string()), 1);
  ASSERT_EQ(quad("run --scenarios builtin:smoke --out " + (dir / "run").string()), 0);
  ASSERT_EQ(quad("plot " + (dir / "run").string() + " --out " + (dir / "img").string()), 0);
  std::size_t svgs = 0;
  for (const auto & entry : fs::directory_iterator(dir / "img")) {
    if (entry.path().extension() != ".svg") continue;
    ++svgs;
    const std::string body = slurp(entry.path());
    EXPECT_EQ(body.rfind("<svg", 0) == 0 || body.rfind("<?xml", 0) == 0, true) << entry.path();
    EXPECT_NE(body.find("</svg>"), std::string::npos);
  }
  EXPECT_EQ(svgs, 4u);
  EXPECT_TRUE(fs::exists(dir / "img" / "summary.svg"));
}

TEST(Cli, BenchWritesOneRowPerMode)
{
  const fs::path dir = scratch("bench");
  ASSERT_EQ(quad("bench --actors 10 --repeats 1 --resolutions 0.5 1 --out " + dir.string()), 0);
  const auto rows = lines(dir / "bench.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(split(rows[1])[0], "continuous");
  EXPECT_EQ(split(rows[4])[0], "dense_grid");
}

TEST(Cli, TrainWritesWeightsPerRound)
{
  const fs::path dir = scratch("train");
  ASSERT_EQ(
    quad("train --scenarios builtin:smoke --epochs 20 --stride 6 --iterations 1 --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "weights_round0.json"));
  EXPECT_TRUE(fs::exists(dir / "weights_round1.json"));
  EXPECT_TRUE(fs::exists(dir / "dataset.txt"));
  EXPECT_EQ(lines(dir / "train_summary.csv").size(), 3u);
  ASSERT_EQ(
    quad("run --no-traces --scenarios builtin:smoke --weights " + (dir / "weights.json").string() +
         " --out " + (dir / "eval").string()),
    0);
}
