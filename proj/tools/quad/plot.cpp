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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

namespace quad::tools
{

namespace
{

/// Header-indexed CSV table of strings.
struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string & name) const
  {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  }
  double num(std::size_t row, const std::string & name) const
  {
    const std::string & v = rows[row][col(name)];
    return v.empty() ? 0.0 : std::stod(v);
  }
};

std::vector<std::string> split(const std::string & line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table read_csv(const fs::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  if (std::getline(in, line)) t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split(line);
    row.resize(t.header.size());
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Maps world metres to pixels; lateral scale is exaggerated for readability.
struct View
{
  double x0, x1, y0, y1;
  double width{1200.0}, height{360.0}, margin{40.0};

  double px(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

std::string fmt(double v)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

std::string polyline(const View & v, const std::vector<std::pair<double, double>> & pts, const std::string & style)
{
  std::ostringstream s;
  s << "<polyline fill=\"none\" " << style << " points=\"";
  for (const auto & [x, y] : pts) s << fmt(v.px(x)) << ',' << fmt(v.py(y)) << ' ';
  s << "\"/>\n";
  return s.str();
}

/// Green (cheap) to red (expensive).
std::string ramp(double u)
{
  const int r = static_cast<int>(std::lround(255 * std::clamp(u, 0.0, 1.0)));
  const int g = static_cast<int>(std::lround(200 * (1.0 - std::clamp(u, 0.0, 1.0))));
  std::ostringstream s;
  s << "rgb(" << r << ',' << g << ",60)";
  return s.str();
}

void scenario_svg(const fs::path & run, const std::string & name, const Table & metrics, std::size_t row, const fs::path & out)
{
  const sim::Scenario scn = sim::Scenario::load(run / "scenarios" / (name + ".json"));
  const Table trace = read_csv(run / "traces" / (name + ".csv"));
  const Table fan = read_csv(run / "fans" / (name + ".csv"));
  const Table grid = read_csv(run / "grids" / (name + ".csv"));

  std::vector<std::pair<double, double>> ego;
  std::map<int, std::vector<std::pair<double, double>>> actors;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const double x = trace.num(i, "x");
    const double y = trace.num(i, "y");
    if (trace.rows[i][trace.col("kind")] == "ego") {
      ego.emplace_back(x, y);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    } else {
      actors[static_cast<int>(trace.num(i, "index"))].emplace_back(x, y);
    }
  }
  for (std::size_t i = 0; i < fan.rows.size(); ++i) xmax = std::max(xmax, fan.num(i, "x"));
  xmin -= 20.0;
  xmax += 20.0;

  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -ymin;
  for (const world::Lane & lane : scn.map.lanes()) {
    for (const world::LaneBoundary * b : {&lane.left_boundary, &lane.right_boundary}) {
      for (const world::Vec2 & p : b->line.points()) {
        if (p.x < xmin || p.x > xmax) continue;
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
    }
  }
  if (!std::isfinite(ymin)) {
    ymin = -5.0;
    ymax = 5.0;
  }
  const View v{xmin, xmax, ymin - 2.0, ymax + 2.0};

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << v.width << "\" height=\"" << v.height << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Occupancy: max over the dumped time slices.
  std::map<std::pair<long, long>, double> heat;
  double cell = 1.0;
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    const double x = grid.num(i, "x");
    const double y = grid.num(i, "y");
    auto & p = heat[{std::lround(x * 100), std::lround(y * 100)}];
    p = std::max(p, grid.num(i, "p"));
  }
  if (grid.rows.size() > 1) cell = std::abs(grid.num(1, "x") - grid.num(0, "x"));
  if (!(cell > 0.0)) cell = 1.0;
  for (const auto & [key, p] : heat) {
    if (p < 0.02) continue;
    const double x = key.first / 100.0;
    const double y = key.second / 100.0;
    if (x < xmin || x > xmax) continue;
    s << "<rect x=\"" << fmt(v.px(x - cell / 2)) << "\" y=\"" << fmt(v.py(y + cell / 2)) << "\" width=\""
      << fmt(v.px(x + cell / 2) - v.px(x - cell / 2)) << "\" height=\"" << fmt(v.py(y - cell / 2) - v.py(y + cell / 2))
      << "\" fill=\"rgb(200,0,0)\" fill-opacity=\"" << fmt(0.6 * p) << "\"/>\n";
  }

  for (const world::Lane & lane : scn.map.lanes()) {
    for (const world::LaneBoundary * b : {&lane.left_boundary, &lane.right_boundary}) {
      std::vector<std::pair<double, double>> pts;
      for (const world::Vec2 & p : b->line.points()) {
        if (p.x >= xmin - 5.0 && p.x <= xmax + 5.0) pts.emplace_back(std::clamp(p.x, xmin, xmax), p.y);
      }
      if (pts.size() < 2) continue;
      s << polyline(v, pts, b->solid ? "stroke=\"#444\" stroke-width=\"1.5\"" : "stroke=\"#999\" stroke-dasharray=\"6,6\"");
    }
  }

  // Candidate fan at the first planning step, colored by cost rank.
  std::map<int, std::vector<std::pair<double, double>>> cands;
  std::map<int, double> cost;
  int chosen = -1;
  for (std::size_t i = 0; i < fan.rows.size(); ++i) {
    const int c = static_cast<int>(fan.num(i, "candidate"));
    cands[c].emplace_back(fan.num(i, "x"), fan.num(i, "y"));
    cost[c] = fan.num(i, "cost");
    if (fan.num(i, "chosen") > 0.5) chosen = c;
  }
  std::vector<std::pair<double, int>> order;
  for (const auto & [c, j] : cost) order.emplace_back(j, c);
  std::sort(order.begin(), order.end());
  for (std::size_t rank = order.size(); rank-- > 0;) {
    const int c = order[rank].second;
    const double u = order.size() > 1 ? static_cast<double>(rank) / (order.size() - 1) : 0.0;
    s << polyline(v, cands[c], "stroke=\"" + ramp(u) + "\" stroke-width=\"0.7\" stroke-opacity=\"0.6\"");
  }
  if (chosen >= 0) s << polyline(v, cands[chosen], "stroke=\"#0050ff\" stroke-width=\"2.5\"");

  for (const auto & [i, pts] : actors) s << polyline(v, pts, "stroke=\"#e08000\" stroke-width=\"2\"");
  s << polyline(v, ego, "stroke=\"black\" stroke-width=\"2\"");

  s << "<text x=\"" << v.margin << "\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << name
    << "  collided=" << metrics.rows[row][metrics.col("collided")]
    << "  success=" << metrics.rows[row][metrics.col("success")]
    << "  min_ttc=" << fmt(metrics.num(row, "min_ttc")) << "  progress=" << fmt(metrics.num(row, "progress"))
    << "  (lateral scale exaggerated)</text>\n";
  s << "</svg>\n";
  write_text(out, s.str());
}

void summary_svg(const Table & metrics, const Table & summary, const fs::path & out)
{
  const double w = 900.0;
  const double h = 420.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"20\" y=\"24\" font-family=\"monospace\" font-size=\"14\">rates</text>\n";
  const char * rates[] = {"gsr", "ecr", "pcr", "tvr"};
  for (int i = 0; i < 4; ++i) {
    const double val = summary.rows.empty() ? 0.0 : summary.num(0, rates[i]);
    const double bar = 150.0 * std::clamp(val, 0.0, 1.0);
    const double x = 40.0 + i * 70.0;
    s << "<rect x=\"" << x << "\" y=\"" << fmt(200.0 - bar) << "\" width=\"40\" height=\"" << fmt(bar)
      << "\" fill=\"#4a7bd0\"/>\n";
    s << "<text x=\"" << x << "\" y=\"218\" font-family=\"monospace\" font-size=\"12\">" << rates[i] << "</text>\n";
    s << "<text x=\"" << x << "\" y=\"" << fmt(195.0 - bar) << "\" font-family=\"monospace\" font-size=\"11\">"
      << fmt(val) << "</text>\n";
  }
  s << "<line x1=\"30\" y1=\"200\" x2=\"320\" y2=\"200\" stroke=\"black\"/>\n";

  s << "<text x=\"360\" y=\"24\" font-family=\"monospace\" font-size=\"14\">progress per scenario (m)</text>\n";
  double pmax = 1.0;
  for (std::size_t i = 0; i < metrics.rows.size(); ++i) pmax = std::max(pmax, metrics.num(i, "progress"));
  const double row_h = std::min(30.0, 360.0 / std::max<std::size_t>(1, metrics.rows.size()));
  for (std::size_t i = 0; i < metrics.rows.size(); ++i) {
    const double y = 40.0 + i * row_h;
    const double bar = 300.0 * metrics.num(i, "progress") / pmax;
    const bool bad = metrics.rows[i][metrics.col("collided")] == "1";
    s << "<rect x=\"560\" y=\"" << fmt(y) << "\" width=\"" << fmt(bar) << "\" height=\"" << fmt(row_h * 0.7)
      << "\" fill=\"" << (bad ? "#d04a4a" : "#4ab07b") << "\"/>\n";
    s << "<text x=\"360\" y=\"" << fmt(y + row_h * 0.6) << "\" font-family=\"monospace\" font-size=\"11\">"
      << metrics.rows[i][0] << "</text>\n";
  }
  s << "</svg>\n";
  write_text(out, s.str());
}

}  // namespace

int cmd_plot(const fs::path & run_dir, const fs::path & out_dir)
{
  if (!fs::is_directory(run_dir)) throw ConfigError("run directory not found: " + run_dir.string());
  if (!fs::exists(run_dir / "metrics.csv")) throw ConfigError("not a run directory (no metrics.csv): " + run_dir.string());
  const Table metrics = read_csv(run_dir / "metrics.csv");
  const Table summary = read_csv(run_dir / "summary.csv");
  ensure_dir(out_dir);
  std::size_t written = 0;
  for (std::size_t i = 0; i < metrics.rows.size(); ++i) {
    const std::string & name = metrics.rows[i][0];
    if (!fs::exists(run_dir / "traces" / (name + ".csv"))) {
      throw std::runtime_error("run directory lacks traces for " + name);
    }
    scenario_svg(run_dir, name, metrics, i, out_dir / (name + ".svg"));
    ++written;
  }
  summary_svg(metrics, summary, out_dir / "summary.svg");
  std::cout << "wrote " << written + 1 << " images to " << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace quad::tools
