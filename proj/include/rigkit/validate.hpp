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

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rigkit/rig.hpp"

namespace rigkit {

struct Finding {
  std::string code;
  std::string message;
  std::string path;

  bool operator==(const Finding&) const = default;
};

/// Findings are data, not failures: an empty error list means the rig is
/// accepted. Ordering follows document order and is stable across runs.
struct ValidationReport {
  std::vector<Finding> errors;
  std::vector<Finding> warnings;

  bool accepted() const { return errors.empty(); }

  std::string to_text() const {
    std::ostringstream os;
    os << "validation: " << errors.size() << " error(s), " << warnings.size()
       << " warning(s)\n";
    for (const auto& f : errors)
      os << "  error " << f.code << " at " << f.path << ": " << f.message
         << "\n";
    for (const auto& f : warnings)
      os << "  warning " << f.code << " at " << f.path << ": " << f.message
         << "\n";
    return os.str();
  }
};

inline ValidationReport validate_rig(const RigSpec& rig) {
  ValidationReport report;
  auto error = [&](std::string code, std::string path, std::string msg) {
    report.errors.push_back({std::move(code), std::move(msg), std::move(path)});
  };
  auto warn = [&](std::string code, std::string path, std::string msg) {
    report.warnings.push_back(
        {std::move(code), std::move(msg), std::move(path)});
  };

  if (rig.vehicle.occluders.empty())
    error("VEHICLE_NO_OCCLUDER", "$.vehicle.occluders",
          "at least one occluder (the body shell) is required");
  for (std::size_t i = 0; i < rig.vehicle.occluders.size(); ++i) {
    const auto& box = rig.vehicle.occluders[i];
    if (!(box.half_extents.x > 0 && box.half_extents.y > 0 &&
          box.half_extents.z > 0))
      error("OCCLUDER_EXTENT_NONPOSITIVE",
            "$.vehicle.occluders[" + std::to_string(i) + "].half_extents_m",
            "half extents must be strictly positive");
  }

  std::set<std::string> seen_ids;
  std::map<int, std::string> ports_in_use;
  bool has_gnss = false;
  for (std::size_t i = 0; i < rig.sensors.size(); ++i) {
    const Sensor& s = rig.sensors[i];
    const std::string path = "$.sensors[" + std::to_string(i) + "]";
    if (!seen_ids.insert(s.id).second)
      error("DUPLICATE_ID", path + ".id", "sensor id '" + s.id + "' reused");
    if (s.modality == Modality::gnss) has_gnss = true;

    if (s.frustum) {
      const Frustum& f = *s.frustum;
      if (!(f.max_range_m > 0))
        error("RANGE_NONPOSITIVE", path + ".max_range_m",
              "max range must be positive");
      if (!(f.azimuth_fov_deg > 0 && f.azimuth_fov_deg <= 360.0))
        error("FOV_AZIMUTH_RANGE", path + ".azimuth_fov_deg",
              "azimuth FOV must be in (0, 360]");
      if (!(f.elevation_fov_deg > 0 && f.elevation_fov_deg < 180.0))
        error("FOV_ELEVATION_RANGE", path + ".elevation_fov_deg",
              "elevation FOV must be in (0, 180)");
    }
    if (s.frame_rate_hz && !(*s.frame_rate_hz > 0))
      error("FRAME_RATE_NONPOSITIVE", path + ".frame_rate_hz",
            "frame rate must be positive");
    if (s.modality == Modality::camera &&
        (!s.resolution || s.resolution->kind != Resolution::Kind::pixels))
      error("CAMERA_RESOLUTION_MISSING", path + ".resolution",
            "cameras need a pixel resolution");

    if (s.port) {
      if (*s.port < 1 || *s.port > rig.network.switch_.ports)
        error("PORT_RANGE", path + ".port",
              "port must be within 1.." +
                  std::to_string(rig.network.switch_.ports));
      else if (auto [it, inserted] = ports_in_use.emplace(*s.port, s.id);
               !inserted)
        error("PORT_DUPLICATE", path + ".port",
              "port " + std::to_string(*s.port) + " already used by '" +
                  it->second + "'");
    }
    if (s.net_demand_bps && *s.net_demand_bps > rig.network.device_link_bps)
      warn("DEMAND_EXCEEDS_LINK", path + ".net_demand_bps",
           "demand exceeds the device link capacity");
  }

  if (rig.network.router.port) {
    const int p = *rig.network.router.port;
    if (p < 1 || p > rig.network.switch_.ports)
      error("PORT_RANGE", "$.network.router.port",
            "port must be within 1.." +
                std::to_string(rig.network.switch_.ports));
    else if (auto [it, inserted] = ports_in_use.emplace(p, "router");
             !inserted)
      error("PORT_DUPLICATE", "$.network.router.port",
            "port " + std::to_string(p) + " already used by '" + it->second +
                "'");
  }

  if (!(rig.power.battery.capacity_wh > 0))
    error("BATTERY_CAPACITY_NONPOSITIVE", "$.power.battery.capacity_wh",
          "battery capacity must be positive");
  for (const auto& [rail, eff] : rig.power.rails) {
    if (!(eff > 0.0 && eff <= 1.0))
      error("EFFICIENCY_RANGE", "$.power.rails." + rail + ".efficiency",
            "efficiency must be in (0, 1]");
  }
  std::set<std::string> group_ids;
  for (const auto& g : rig.power.switch_groups) group_ids.insert(g.id);
  for (std::size_t i = 0; i < rig.power.loads.size(); ++i) {
    const Load& l = rig.power.loads[i];
    const std::string path = "$.power.loads[" + std::to_string(i) + "]";
    if (!rig.power.rails.count(l.rail))
      error("RAIL_UNKNOWN", path + ".rail",
            "load '" + l.name + "' references undefined rail '" + l.rail +
                "'");
    if (!group_ids.empty() && !group_ids.count(l.group))
      error("GROUP_UNKNOWN", path + ".group",
            "load '" + l.name + "' references undeclared switch group '" +
                l.group + "'");
  }

  if (!has_gnss)
    warn("GNSS_MISSING", "$.sensors",
         "no GNSS sensor; the network plan will lack a grandmaster clock");

  return report;
}

}  // namespace rigkit
