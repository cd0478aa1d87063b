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


#include "quad/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace quad::sim
{

namespace
{

using nlohmann::json;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

json points_json(const world::Polyline & pl)
{
  json arr = json::array();
  for (const world::Vec2 & p : pl.points()) arr.push_back({p.x, p.y});
  return arr;
}

world::Polyline points_from(const json & arr)
{
  std::vector<world::Vec2> pts;
  for (const auto & p : arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return world::Polyline(std::move(pts));
}

json ego_json(const world::EgoState & s)
{
  return {{"x", s.pose.x},   {"y", s.pose.y},         {"heading", s.pose.heading},
          {"speed", s.speed}, {"accel", s.accel}, {"curvature", s.curvature}};
}

world::EgoState ego_from(const json & j)
{
  world::EgoState s;
  s.pose = {j.at("x").get<double>(), j.at("y").get<double>(), j.value("heading", 0.0)};
  s.speed = j.value("speed", 0.0);
  s.accel = j.value("accel", 0.0);
  s.curvature = j.value("curvature", 0.0);
  return s;
}

json actor_json(const ActorSpec & a)
{
  json j{{"id", a.id},
         {"behavior", a.behavior == Behavior::idm ? "idm" : "scripted"},
         {"length", a.length},
         {"width", a.width}};
  if (a.behavior == Behavior::idm) {
    j["s"] = a.s;
    j["d"] = a.d;
    j["speed"] = a.speed;
    j["idm"] = {{"desired_speed", a.idm.desired_speed}, {"min_gap", a.idm.min_gap},
                {"time_headway", a.idm.time_headway},   {"max_accel", a.idm.max_accel},
                {"comfort_decel", a.idm.comfort_decel}, {"max_decel", a.idm.max_decel}};
    if (a.lane_change) {
      j["lane_change"] = {{"time", a.lane_change->time},
                          {"target_d", a.lane_change->target_d},
                          {"duration", a.lane_change->duration}};
    }
    if (a.brake) j["brake"] = {{"time", a.brake->time}, {"decel", a.brake->decel}};
  } else {
    j["waypoints"] = json::array();
    for (const Waypoint & w : a.waypoints) {
      j["waypoints"].push_back({w.t, w.pose.x, w.pose.y, w.pose.heading});
    }
  }
  return j;
}

ActorSpec actor_from(const json & j)
{
  ActorSpec a;
  a.id = j.at("id").get<std::string>();
  const std::string behavior = j.value("behavior", "idm");
  if (behavior == "idm") {
    a.behavior = Behavior::idm;
  } else if (behavior == "scripted") {
    a.behavior = Behavior::scripted;
  } else {
    throw std::invalid_argument("unknown actor behavior '" + behavior + "'");
  }
  a.length = j.value("length", a.length);
  a.width = j.value("width", a.width);
  a.s = j.value("s", 0.0);
  a.d = j.value("d", 0.0);
  a.speed = j.value("speed", 0.0);
  if (j.contains("idm")) {
    const json & p = j.at("idm");
    a.idm.desired_speed = p.value("desired_speed", a.idm.desired_speed);
    a.idm.min_gap = p.value("min_gap", a.idm.min_gap);
    a.idm.time_headway = p.value("time_headway", a.idm.time_headway);
    a.idm.max_accel = p.value("max_accel", a.idm.max_accel);
    a.idm.comfort_decel = p.value("comfort_decel", a.idm.comfort_decel);
    a.idm.max_decel = p.value("max_decel", a.idm.max_decel);
  }
  if (j.contains("lane_change")) {
    const json & l = j.at("lane_change");
    a.lane_change = LaneChangeTrigger{
      l.at("time").get<double>(), l.at("target_d").get<double>(), l.value("duration", 3.0)};
  }
  if (j.contains("brake")) {
    a.brake = BrakeEvent{j.at("brake").at("time").get<double>(), j.at("brake").value("decel", 6.0)};
  }
  if (j.contains("waypoints")) {
    for (const auto & w : j.at("waypoints")) {
      a.waypoints.push_back(
        {w.at(0).get<double>(), {w.at(1).get<double>(), w.at(2).get<double>(), w.at(3).get<double>()}});
    }
  }
  return a;
}

}  // namespace

void IdmParams::validate() const
{
  if (!positive(desired_speed) || !positive(min_gap) || !positive(time_headway) ||
      !positive(max_accel) || !positive(comfort_decel) || !positive(max_decel)) {
    throw std::invalid_argument("car-following parameters must be positive");
  }
}

void ActorSpec::validate() const
{
  if (!positive(length) || !positive(width)) {
    throw std::invalid_argument("actor '" + id + "' needs a positive footprint");
  }
  if (behavior == Behavior::idm) {
    idm.validate();
    if (!(speed >= 0.0)) throw std::invalid_argument("actor '" + id + "' has negative speed");
    if (lane_change && !positive(lane_change->duration)) {
      throw std::invalid_argument("actor '" + id + "' lane change needs a positive duration");
    }
    if (brake && !positive(brake->decel)) {
      throw std::invalid_argument("actor '" + id + "' brake needs a positive decel");
    }
  } else {
    if (waypoints.empty()) throw std::invalid_argument("scripted actor '" + id + "' has no waypoints");
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
      if (!(waypoints[i].t > waypoints[i - 1].t)) {
        throw std::invalid_argument("scripted actor '" + id + "' waypoints must be time-sorted");
      }
    }
  }
}

std::string_view to_string(Family f)
{
  switch (f) {
    case Family::lane_change:
      return "lane_change";
    case Family::lane_follow:
      return "lane_follow";
    case Family::lane_merge:
      return "lane_merge";
    case Family::canonical:
      return "canonical";
  }
  return "canonical";
}

Family family_from_string(std::string_view s)
{
  for (Family f : {Family::lane_change, Family::lane_follow, Family::lane_merge, Family::canonical}) {
    if (to_string(f) == s) return f;
  }
  throw std::invalid_argument("unknown scenario family '" + std::string(s) + "'");
}

void Scenario::validate() const
{
  if (map.lanes().empty()) throw std::invalid_argument("scenario '" + name + "' has an empty map");
  if (reference.empty()) throw std::invalid_argument("scenario '" + name + "' has no reference line");
  if (!positive(duration) || duration > 20.0 + 1e-9) {
    throw std::invalid_argument("scenario '" + name + "' duration must be in (0, 20] s");
  }
  if (!(ego.speed >= 0.0)) throw std::invalid_argument("ego speed must be non-negative");
  if (goal) {
    const auto lane = map.find(goal->lane);
    if (!lane || !map.on_route(*lane)) {
      throw std::invalid_argument("scenario '" + name + "' goal lane is not on the route");
    }
    if (!(goal->s_max > goal->s_min)) throw std::invalid_argument("empty goal window");
  }
  std::vector<std::string> ids;
  for (const ActorSpec & a : actors) {
    a.validate();
    ids.push_back(a.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("scenario '" + name + "' has duplicate actor ids");
  }
}

json Scenario::to_json() const
{
  json doc{{"schema_version", kScenarioSchemaVersion},
           {"name", name},
           {"family", std::string(to_string(family))},
           {"map", map.to_json()},
           {"reference", points_json(reference)},
           {"ego", ego_json(ego)},
           {"duration", duration},
           {"seed", seed},
           {"actors", json::array()}};
  if (goal) doc["goal"] = {{"lane", goal->lane}, {"s_min", goal->s_min}, {"s_max", goal->s_max}};
  for (const ActorSpec & a : actors) doc["actors"].push_back(actor_json(a));
  return doc;
}

Scenario Scenario::from_json(const json & doc)
{
  if (doc.value("schema_version", 0) != kScenarioSchemaVersion) {
    throw std::invalid_argument("unsupported scenario schema version");
  }
  Scenario scn;
  scn.name = doc.at("name").get<std::string>();
  scn.family = family_from_string(doc.value("family", "canonical"));
  scn.map = world::LaneMap::from_json(doc.at("map"));
  scn.reference = points_from(doc.at("reference"));
  scn.ego = ego_from(doc.at("ego"));
  scn.duration = doc.value("duration", 20.0);
  scn.seed = doc.value("seed", std::uint64_t{0});
  if (doc.contains("goal") && !doc.at("goal").is_null()) {
    const json & g = doc.at("goal");
    scn.goal = Goal{g.at("lane").get<std::string>(), g.at("s_min").get<double>(), g.at("s_max").get<double>()};
  }
  for (const auto & a : doc.value("actors", json::array())) scn.actors.push_back(actor_from(a));
  scn.validate();
  return scn;
}

Scenario Scenario::load(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path.string());
  return from_json(json::parse(in));
}

void Scenario::save(const std::filesystem::path & path) const
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(1) << '\n';
}

std::vector<Scenario> load_scenario_dir(const std::filesystem::path & dir)
{
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("scenario directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto & f : files) out.push_back(Scenario::load(f));
  return out;
}

}  // namespace quad::sim
