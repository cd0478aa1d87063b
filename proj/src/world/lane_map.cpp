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

#include "quad/world/lane_map.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace quad::world
{

namespace
{
constexpr int kSchemaVersion = 1;

void check_ref(
  const std::unordered_map<std::string, std::size_t> & index, const std::string & id,
  const std::string & context)
{
  if (index.find(id) == index.end()) {
    throw std::invalid_argument(context + " references unknown lane '" + id + "'");
  }
}

std::vector<Vec2> points_from_json(const nlohmann::json & arr)
{
  std::vector<Vec2> pts;
  pts.reserve(arr.size());
  for (const auto & p : arr) {
    pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return pts;
}

nlohmann::json points_to_json(const Polyline & pl)
{
  nlohmann::json arr = nlohmann::json::array();
  for (const Vec2 & p : pl.points()) {
    arr.push_back({p.x, p.y});
  }
  return arr;
}
}  // namespace

LaneMap::LaneMap(std::vector<Lane> lanes, std::vector<std::string> route)
: lanes_(std::move(lanes)), route_(std::move(route))
{
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    if (!index_.emplace(lanes_[i].id, i).second) {
      throw std::invalid_argument("duplicate lane id '" + lanes_[i].id + "'");
    }
  }
  route_member_.assign(lanes_.size(), false);
  for (const auto & id : route_) {
    check_ref(index_, id, "route");
    route_member_[index_.at(id)] = true;
  }
  for (const Lane & lane : lanes_) {
    const std::string ctx = "lane '" + lane.id + "'";
    if (!(lane.speed_limit > 0.0)) {
      throw std::invalid_argument(ctx + " has non-positive speed limit");
    }
    if (lane.left_neighbor) check_ref(index_, *lane.left_neighbor, ctx);
    if (lane.right_neighbor) check_ref(index_, *lane.right_neighbor, ctx);
    for (const auto & s : lane.successors) check_ref(index_, s, ctx);
    // Boundaries must flank the centerline: left boundary SD < 0 < right boundary SD.
    for (const Vec2 & p : lane.centerline.points()) {
      if (!(lane.left_boundary.line.signed_distance(p) < 0.0) ||
          !(lane.right_boundary.line.signed_distance(p) > 0.0)) {
        throw std::invalid_argument(ctx + " boundaries do not flank its centerline");
      }
    }
  }
}

std::size_t LaneMap::index_of(const std::string & id) const
{
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw std::out_of_range("unknown lane '" + id + "'");
  }
  return it->second;
}

std::optional<std::size_t> LaneMap::find(const std::string & id) const
{
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool LaneMap::on_route(std::size_t lane_index) const { return route_member_.at(lane_index); }

bool LaneMap::inside_lane(std::size_t lane_index, const Vec2 & p) const
{
  const Lane & lane = lanes_[lane_index];
  const Projection c = lane.centerline.project(p);
  // Points past either end of the centerline are not in the lane.
  if (c.s <= 0.0 && c.segment == 0 && lane.centerline.segment_tangent(0).dot(
                                         p - lane.centerline.points().front()) < 0.0) {
    return false;
  }
  const Polyline & cl = lane.centerline;
  if (c.s >= cl.length() &&
      cl.segment_tangent(cl.num_segments() - 1).dot(p - cl.points().back()) > 0.0) {
    return false;
  }
  return lane.left_boundary.line.signed_distance(p) < 0.0 &&
         lane.right_boundary.line.signed_distance(p) > 0.0;
}

LaneLocation LaneMap::locate(const Vec2 & p) const
{
  LaneLocation best;
  double best_abs = std::numeric_limits<double>::infinity();
  bool best_contained = false;
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    const Projection proj = lanes_[i].centerline.project(p);
    const bool contained = inside_lane(i, p);
    const double a = std::abs(proj.d);
    // A containing lane always beats a non-containing one.
    if ((contained && !best_contained) || (contained == best_contained && a < best_abs)) {
      best = {i, proj, contained};
      best_abs = a;
      best_contained = contained;
    }
  }
  return best;
}

LaneLocation LaneMap::locate_on_route(const Vec2 & p) const
{
  LaneLocation best;
  double best_abs = std::numeric_limits<double>::infinity();
  for (const auto & id : route_) {
    const std::size_t i = index_.at(id);
    const Projection proj = lanes_[i].centerline.project(p);
    if (std::abs(proj.d) < best_abs) {
      best_abs = std::abs(proj.d);
      best = {i, proj, inside_lane(i, p)};
    }
  }
  return best;
}

Polyline LaneMap::base_path(std::size_t lane_index, double min_length) const
{
  std::vector<Polyline> parts{lanes_.at(lane_index).centerline};
  double total = parts.back().length();
  std::size_t current = lane_index;
  std::vector<bool> visited(lanes_.size(), false);
  visited[current] = true;
  while (total < min_length) {
    const Lane & lane = lanes_[current];
    std::optional<std::size_t> next;
    for (const auto & s : lane.successors) {
      const std::size_t idx = index_.at(s);
      if (visited[idx]) continue;
      if (!next || (route_member_[idx] && !route_member_[*next])) {
        next = idx;
      }
    }
    if (!next) break;
    visited[*next] = true;
    parts.push_back(lanes_[*next].centerline);
    total += parts.back().length();
    current = *next;
  }
  Polyline path = parts.size() == 1 ? parts.front() : Polyline::concatenate(parts);
  if (path.length() < min_length) {
    path = path.extended(min_length - path.length());
  }
  return path;
}

nlohmann::json LaneMap::to_json() const
{
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["lanes"] = nlohmann::json::array();
  for (const Lane & lane : lanes_) {
    nlohmann::json l;
    l["id"] = lane.id;
    l["centerline"] = points_to_json(lane.centerline);
    l["left_boundary"] = {
      {"points", points_to_json(lane.left_boundary.line)}, {"solid", lane.left_boundary.solid}};
    l["right_boundary"] = {
      {"points", points_to_json(lane.right_boundary.line)}, {"solid", lane.right_boundary.solid}};
    l["speed_limit"] = lane.speed_limit;
    l["neighbors"] = {
      {"left", lane.left_neighbor ? nlohmann::json(*lane.left_neighbor) : nlohmann::json(nullptr)},
      {"right",
       lane.right_neighbor ? nlohmann::json(*lane.right_neighbor) : nlohmann::json(nullptr)}};
    l["successors"] = lane.successors;
    doc["lanes"].push_back(std::move(l));
  }
  doc["route"] = route_;
  return doc;
}

LaneMap LaneMap::from_json(const nlohmann::json & doc)
{
  std::vector<Lane> lanes;
  for (const auto & l : doc.at("lanes")) {
    Lane lane;
    lane.id = l.at("id").get<std::string>();
    lane.centerline = Polyline(points_from_json(l.at("centerline")));
    const auto & lb = l.at("left_boundary");
    lane.left_boundary = {Polyline(points_from_json(lb.at("points"))), lb.value("solid", false)};
    const auto & rb = l.at("right_boundary");
    lane.right_boundary = {Polyline(points_from_json(rb.at("points"))), rb.value("solid", false)};
    lane.speed_limit = l.at("speed_limit").get<double>();
    if (l.contains("neighbors")) {
      const auto & n = l.at("neighbors");
      if (n.contains("left") && !n.at("left").is_null()) {
        lane.left_neighbor = n.at("left").get<std::string>();
      }
      if (n.contains("right") && !n.at("right").is_null()) {
        lane.right_neighbor = n.at("right").get<std::string>();
      }
    }
    if (l.contains("successors")) {
      lane.successors = l.at("successors").get<std::vector<std::string>>();
    }
    lanes.push_back(std::move(lane));
  }
  std::vector<std::string> route;
  if (doc.contains("route")) {
    route = doc.at("route").get<std::vector<std::string>>();
  }
  return LaneMap(std::move(lanes), std::move(route));
}

LaneMap LaneMap::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open lane map " + path.string());
  }
  return from_json(nlohmann::json::parse(in));
}

}  // namespace quad::world
