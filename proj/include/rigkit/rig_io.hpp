/*
 * Copyright 2026 rigkit contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "rigkit/rig.hpp"

namespace rigkit {

/// Raised for malformed rig documents: syntax errors (with stream position),
/// unknown or missing fields, wrong types, and unit violations such as a
/// negative range. `path` points at the offending element.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        code_(std::move(code)),
        path_(std::move(path)) {}

  const std::string& code() const { return code_; }
  const std::string& path() const { return path_; }

 private:
  std::string code_;
  std::string path_;
};

namespace io_detail {

using nlohmann::json;

inline void check_object(const json& j, const std::string& path) {
  if (!j.is_object())
    throw ParseError("TYPE", path, "expected an object");
}

inline void check_keys(const json& j, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) { known = true; break; }
    if (!known)
      throw ParseError("UNKNOWN_FIELD", path + "." + item.key(),
                       "unknown field");
  }
}

inline const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline const json& require(const json& j, const char* key,
                           const std::string& path) {
  const json* p = find(j, key);
  if (!p)
    throw ParseError("MISSING_FIELD", path + "." + key,
                     "required field missing");
  return *p;
}

inline double as_number(const json& j, const std::string& path) {
  if (!j.is_number())
    throw ParseError("TYPE", path, "expected a number");
  return j.get<double>();
}

inline double as_nonnegative(const json& j, const std::string& path) {
  const double v = as_number(j, path);
  if (!(v >= 0.0))
    throw ParseError("UNIT", path, "value must be non-negative");
  return v;
}

inline int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ParseError("TYPE", path, "expected an integer");
  return j.get<int>();
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean())
    throw ParseError("TYPE", path, "expected a boolean");
  return j.get<bool>();
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string())
    throw ParseError("TYPE", path, "expected a string");
  return j.get<std::string>();
}

inline Vec3 as_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError("TYPE", path, "expected an array of 3 numbers");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"),
          as_number(j[2], path + "[2]")};
}

inline double opt_number(const json& j, const char* key, double dflt,
                         const std::string& path) {
  const json* p = find(j, key);
  return p ? as_number(*p, path + "." + key) : dflt;
}

inline double opt_nonnegative(const json& j, const char* key, double dflt,
                              const std::string& path) {
  const json* p = find(j, key);
  return p ? as_nonnegative(*p, path + "." + key) : dflt;
}

inline bool opt_bool(const json& j, const char* key, bool dflt,
                     const std::string& path) {
  const json* p = find(j, key);
  return p ? as_bool(*p, path + "." + key) : dflt;
}

inline OrientedBox parse_occluder(const json& j, const std::string& path) {
  check_object(j, path);
  check_keys(j, path, {"center_m", "half_extents_m", "yaw_deg"});
  OrientedBox box;
  box.center = as_vec3(require(j, "center_m", path), path + ".center_m");
  box.half_extents =
      as_vec3(require(j, "half_extents_m", path), path + ".half_extents_m");
  box.yaw_deg = opt_number(j, "yaw_deg", 0.0, path);
  return box;
}

inline Resolution parse_resolution(const json& j, const std::string& path) {
  check_object(j, path);
  Resolution r;
  if (find(j, "lines")) {
    check_keys(j, path, {"lines"});
    r.kind = Resolution::Kind::lines;
    r.lines = as_int(require(j, "lines", path), path + ".lines");
    if (r.lines <= 0)
      throw ParseError("UNIT", path + ".lines", "line count must be positive");
  } else {
    check_keys(j, path, {"width", "height"});
    r.kind = Resolution::Kind::pixels;
    r.width = as_int(require(j, "width", path), path + ".width");
    r.height = as_int(require(j, "height", path), path + ".height");
    if (r.width <= 0 || r.height <= 0)
      throw ParseError("UNIT", path, "pixel dimensions must be positive");
  }
  return r;
}

inline Sensor parse_sensor(const json& j, const std::string& path,
                           const NetworkConfig& net) {
  check_object(j, path);
  check_keys(j, path,
             {"id", "modality", "position_m", "yaw_deg", "pitch_deg",
              "roll_deg", "azimuth_fov_deg", "elevation_fov_deg",
              "max_range_m", "resolution", "frame_rate_hz", "net_demand_bps",
              "port", "unconnected", "poe", "poe_draw_w",
              "automotive_ethernet", "time_sensitive", "provenance"});
  Sensor s;
  s.id = as_string(require(j, "id", path), path + ".id");
  try {
    s.modality =
        modality_from_string(as_string(require(j, "modality", path), path));
  } catch (const std::invalid_argument& e) {
    throw ParseError("UNKNOWN_MODALITY", path + ".modality", e.what());
  }
  s.position = as_vec3(require(j, "position_m", path), path + ".position_m");
  s.yaw_deg = opt_number(j, "yaw_deg", 0.0, path);
  s.pitch_deg = opt_number(j, "pitch_deg", 0.0, path);
  s.roll_deg = opt_number(j, "roll_deg", 0.0, path);

  const bool network_only = s.modality == Modality::v2x;
  if (!network_only) {
    Frustum f;
    f.azimuth_fov_deg = as_number(require(j, "azimuth_fov_deg", path),
                                  path + ".azimuth_fov_deg");
    f.elevation_fov_deg = as_number(require(j, "elevation_fov_deg", path),
                                    path + ".elevation_fov_deg");
    f.max_range_m =
        as_nonnegative(require(j, "max_range_m", path), path + ".max_range_m");
    s.frustum = f;
    s.frame_rate_hz = as_nonnegative(require(j, "frame_rate_hz", path),
                                     path + ".frame_rate_hz");
  } else {
    for (const char* k :
         {"azimuth_fov_deg", "elevation_fov_deg", "max_range_m"})
      if (find(j, k))
        throw ParseError("UNKNOWN_FIELD", path + "." + k,
                         "network-only nodes carry no frustum");
    if (find(j, "frame_rate_hz"))
      s.frame_rate_hz =
          as_nonnegative(*find(j, "frame_rate_hz"), path + ".frame_rate_hz");
  }

  if (const json* p = find(j, "resolution"))
    s.resolution = parse_resolution(*p, path + ".resolution");
  s.unconnected = opt_bool(j, "unconnected", false, path);
  if (const json* p = find(j, "port")) {
    if (s.unconnected)
      throw ParseError("UNKNOWN_FIELD", path + ".port",
                       "unconnected sensors cannot name a port");
    s.port = as_int(*p, path + ".port");
  }
  // Conservative default: a connected device can saturate its link.
  s.net_demand_bps = opt_nonnegative(
      j, "net_demand_bps", s.unconnected ? 0.0 : net.device_link_bps, path);
  s.poe = opt_bool(j, "poe", false, path);
  s.poe_draw_w = opt_nonnegative(j, "poe_draw_w", 0.0, path);
  s.automotive_ethernet = opt_bool(j, "automotive_ethernet", false, path);
  s.time_sensitive = opt_bool(j, "time_sensitive", true, path);
  if (const json* p = find(j, "provenance"))
    s.provenance = as_string(*p, path + ".provenance");
  return s;
}

inline NetworkConfig parse_network(const json* j, const std::string& path) {
  NetworkConfig net;
  if (!j) return net;
  check_object(*j, path);
  check_keys(*j, path,
             {"switch", "server_bond", "router", "disk_write_bps",
              "device_link_bps"});
  if (const json* p = find(*j, "switch")) {
    const std::string sp = path + ".switch";
    check_object(*p, sp);
    check_keys(*p, sp, {"ports", "poe_budget_w"});
    if (const json* q = find(*p, "ports"))
      net.switch_.ports = as_int(*q, sp + ".ports");
    net.switch_.poe_budget_w = opt_nonnegative(*p, "poe_budget_w", 740.0, sp);
  }
  if (const json* p = find(*j, "server_bond")) {
    const std::string sp = path + ".server_bond";
    check_object(*p, sp);
    check_keys(*p, sp, {"members", "member_bps"});
    if (const json* q = find(*p, "members"))
      net.server_bond.members = as_int(*q, sp + ".members");
    net.server_bond.member_bps = opt_nonnegative(*p, "member_bps", 10e9, sp);
    if (net.server_bond.members <= 0)
      throw ParseError("UNIT", sp + ".members",
                       "bond needs at least one member");
  }
  if (const json* p = find(*j, "router")) {
    const std::string sp = path + ".router";
    check_object(*p, sp);
    check_keys(*p, sp, {"uplink_bps", "available", "port"});
    net.router.uplink_bps = opt_nonnegative(*p, "uplink_bps", 1e9, sp);
    net.router.available = opt_bool(*p, "available", true, sp);
    if (const json* q = find(*p, "port"))
      net.router.port = as_int(*q, sp + ".port");
  }
  net.disk_write_bps = opt_nonnegative(*j, "disk_write_bps", 33.4e9, path);
  net.device_link_bps = opt_nonnegative(*j, "device_link_bps", 1e9, path);
  return net;
}

inline PowerConfig parse_power(const json* j, const std::string& path) {
  PowerConfig power;
  power.rails = default_rails();
  if (!j) return power;
  check_object(*j, path);
  check_keys(*j, path,
             {"battery", "rails", "loads", "switch_groups", "sources"});
  if (const json* p = find(*j, "battery")) {
    const std::string sp = path + ".battery";
    check_object(*p, sp);
    check_keys(*p, sp, {"capacity_wh", "voltage_v"});
    power.battery.capacity_wh = opt_nonnegative(*p, "capacity_wh", 10000.0, sp);
    power.battery.voltage_v = opt_nonnegative(*p, "voltage_v", 24.0, sp);
  }
  if (const json* p = find(*j, "rails")) {
    const std::string sp = path + ".rails";
    check_object(*p, sp);
    power.rails.clear();
    for (const auto& item : p->items()) {
      const std::string rp = sp + "." + item.key();
      check_object(item.value(), rp);
      check_keys(item.value(), rp, {"efficiency"});
      power.rails[item.key()] =
          as_number(require(item.value(), "efficiency", rp), rp + ".efficiency");
    }
  }
  if (const json* p = find(*j, "loads")) {
    const std::string sp = path + ".loads";
    if (!p->is_array()) throw ParseError("TYPE", sp, "expected an array");
    for (std::size_t i = 0; i < p->size(); ++i) {
      const std::string lp = sp + "[" + std::to_string(i) + "]";
      const json& lj = (*p)[i];
      check_object(lj, lp);
      check_keys(lj, lp, {"name", "rail", "draw_w", "group"});
      Load load;
      load.name = as_string(require(lj, "name", lp), lp + ".name");
      load.rail = as_string(require(lj, "rail", lp), lp + ".rail");
      load.draw_w = as_nonnegative(require(lj, "draw_w", lp), lp + ".draw_w");
      load.group = as_string(require(lj, "group", lp), lp + ".group");
      power.loads.push_back(load);
    }
  }
  if (const json* p = find(*j, "switch_groups")) {
    const std::string sp = path + ".switch_groups";
    if (!p->is_array()) throw ParseError("TYPE", sp, "expected an array");
    for (std::size_t i = 0; i < p->size(); ++i) {
      const std::string gp = sp + "[" + std::to_string(i) + "]";
      const json& gj = (*p)[i];
      check_object(gj, gp);
      check_keys(gj, gp, {"id", "default_on"});
      SwitchGroup g;
      g.id = as_string(require(gj, "id", gp), gp + ".id");
      g.default_on = opt_bool(gj, "default_on", true, gp);
      power.switch_groups.push_back(g);
    }
  }
  if (const json* p = find(*j, "sources")) {
    const std::string sp = path + ".sources";
    check_object(*p, sp);
    check_keys(*p, sp,
               {"boosters", "shore_charger_max_w", "shore_ac_passthrough_max_w"});
    if (const json* q = find(*p, "boosters")) {
      const std::string bp = sp + ".boosters";
      check_object(*q, bp);
      check_keys(*q, bp, {"count", "unit_w", "available"});
      if (const json* c = find(*q, "count"))
        power.sources.boosters.count = as_int(*c, bp + ".count");
      power.sources.boosters.unit_w = opt_nonnegative(*q, "unit_w", 600.0, bp);
      power.sources.boosters.available = opt_bool(*q, "available", false, bp);
      if (power.sources.boosters.count < 0)
        throw ParseError("UNIT", bp + ".count", "count must be non-negative");
    }
    power.sources.shore_charger_max_w =
        opt_nonnegative(*p, "shore_charger_max_w", 3000.0, sp);
    power.sources.shore_ac_passthrough_max_w =
        opt_nonnegative(*p, "shore_ac_passthrough_max_w", 3600.0, sp);
  }
  return power;
}

}  // namespace io_detail

/// Parses a rig document. All defaults are resolved; the result is ready for
/// validation and analysis. Throws ParseError.
inline RigSpec parse_rig(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte offset in what(); keep it.
    throw ParseError("SYNTAX", "", e.what());
  }
  using namespace io_detail;
  check_object(doc, "$");
  check_keys(doc, "$", {"name", "vehicle", "sensors", "network", "power"});

  RigSpec rig;
  rig.name = as_string(require(doc, "name", "$"), "$.name");

  const json& vehicle = require(doc, "vehicle", "$");
  check_object(vehicle, "$.vehicle");
  check_keys(vehicle, "$.vehicle", {"occluders"});
  const json& occs = require(vehicle, "occluders", "$.vehicle");
  if (!occs.is_array())
    throw ParseError("TYPE", "$.vehicle.occluders", "expected an array");
  for (std::size_t i = 0; i < occs.size(); ++i)
    rig.vehicle.occluders.push_back(parse_occluder(
        occs[i], "$.vehicle.occluders[" + std::to_string(i) + "]"));

  rig.network = parse_network(find(doc, "network"), "$.network");
  rig.power = parse_power(find(doc, "power"), "$.power");

  const json& sensors = require(doc, "sensors", "$");
  if (!sensors.is_array())
    throw ParseError("TYPE", "$.sensors", "expected an array");
  for (std::size_t i = 0; i < sensors.size(); ++i)
    rig.sensors.push_back(parse_sensor(
        sensors[i], "$.sensors[" + std::to_string(i) + "]", rig.network));
  return rig;
}

/// Serializes a RigSpec back to document form with every default written out.
/// parse_rig(serialize_rig(r)) == r for any parsed rig.
inline std::string serialize_rig(const RigSpec& rig) {
  using nlohmann::json;
  json doc;
  doc["name"] = rig.name;

  json occs = json::array();
  for (const auto& box : rig.vehicle.occluders) {
    json o;
    o["center_m"] = {box.center.x, box.center.y, box.center.z};
    o["half_extents_m"] = {box.half_extents.x, box.half_extents.y,
                           box.half_extents.z};
    o["yaw_deg"] = box.yaw_deg;
    occs.push_back(o);
  }
  doc["vehicle"]["occluders"] = occs;

  json sensors = json::array();
  for (const auto& s : rig.sensors) {
    json sj;
    sj["id"] = s.id;
    sj["modality"] = to_string(s.modality);
    sj["position_m"] = {s.position.x, s.position.y, s.position.z};
    sj["yaw_deg"] = s.yaw_deg;
    sj["pitch_deg"] = s.pitch_deg;
    sj["roll_deg"] = s.roll_deg;
    if (s.frustum) {
      sj["azimuth_fov_deg"] = s.frustum->azimuth_fov_deg;
      sj["elevation_fov_deg"] = s.frustum->elevation_fov_deg;
      sj["max_range_m"] = s.frustum->max_range_m;
    }
    if (s.frame_rate_hz) sj["frame_rate_hz"] = *s.frame_rate_hz;
    if (s.resolution) {
      if (s.resolution->kind == Resolution::Kind::lines)
        sj["resolution"]["lines"] = s.resolution->lines;
      else {
        sj["resolution"]["width"] = s.resolution->width;
        sj["resolution"]["height"] = s.resolution->height;
      }
    }
    if (s.net_demand_bps) sj["net_demand_bps"] = *s.net_demand_bps;
    if (s.port) sj["port"] = *s.port;
    if (s.unconnected) sj["unconnected"] = true;
    sj["poe"] = s.poe;
    if (s.poe_draw_w != 0.0) sj["poe_draw_w"] = s.poe_draw_w;
    sj["automotive_ethernet"] = s.automotive_ethernet;
    sj["time_sensitive"] = s.time_sensitive;
    if (!s.provenance.empty()) sj["provenance"] = s.provenance;
    sensors.push_back(sj);
  }
  doc["sensors"] = sensors;

  json& net = doc["network"];
  net["switch"]["ports"] = rig.network.switch_.ports;
  net["switch"]["poe_budget_w"] = rig.network.switch_.poe_budget_w;
  net["server_bond"]["members"] = rig.network.server_bond.members;
  net["server_bond"]["member_bps"] = rig.network.server_bond.member_bps;
  net["router"]["uplink_bps"] = rig.network.router.uplink_bps;
  net["router"]["available"] = rig.network.router.available;
  if (rig.network.router.port) net["router"]["port"] = *rig.network.router.port;
  net["disk_write_bps"] = rig.network.disk_write_bps;
  net["device_link_bps"] = rig.network.device_link_bps;

  json& pw = doc["power"];
  pw["battery"]["capacity_wh"] = rig.power.battery.capacity_wh;
  pw["battery"]["voltage_v"] = rig.power.battery.voltage_v;
  for (const auto& [rail, eff] : rig.power.rails)
    pw["rails"][rail]["efficiency"] = eff;
  json loads = json::array();
  for (const auto& l : rig.power.loads) {
    json lj;
    lj["name"] = l.name;
    lj["rail"] = l.rail;
    lj["draw_w"] = l.draw_w;
    lj["group"] = l.group;
    loads.push_back(lj);
  }
  pw["loads"] = loads;
  json groups = json::array();
  for (const auto& g : rig.power.switch_groups) {
    json gj;
    gj["id"] = g.id;
    gj["default_on"] = g.default_on;
    groups.push_back(gj);
  }
  pw["switch_groups"] = groups;
  pw["sources"]["boosters"]["count"] = rig.power.sources.boosters.count;
  pw["sources"]["boosters"]["unit_w"] = rig.power.sources.boosters.unit_w;
  pw["sources"]["boosters"]["available"] = rig.power.sources.boosters.available;
  pw["sources"]["shore_charger_max_w"] = rig.power.sources.shore_charger_max_w;
  pw["sources"]["shore_ac_passthrough_max_w"] =
      rig.power.sources.shore_ac_passthrough_max_w;

  return doc.dump(2) + "\n";
}

}  // namespace rigkit
