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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rigkit/geometry.hpp"

namespace rigkit {

// Platform description for a multi-sensor vehicle rig: body proxy geometry,
// sensors, network plan inputs and power plan inputs. Values are immutable
// once parsed; all angle fields keep the authored degrees (configs are
// written in degrees) and expose radian accessors for the math.

enum class Modality {
  lidar_mid_range,
  lidar_long_range,
  lidar_4d,
  camera,
  radar,
  gnss,
  v2x,  // network-only communication node, no frustum
};

inline const char* to_string(Modality m) {
  switch (m) {
    case Modality::lidar_mid_range: return "lidar_mid_range";
    case Modality::lidar_long_range: return "lidar_long_range";
    case Modality::lidar_4d: return "lidar_4d";
    case Modality::camera: return "camera";
    case Modality::radar: return "radar";
    case Modality::gnss: return "gnss";
    case Modality::v2x: return "v2x";
  }
  return "?";
}

inline Modality modality_from_string(const std::string& s) {
  if (s == "lidar_mid_range") return Modality::lidar_mid_range;
  if (s == "lidar_long_range") return Modality::lidar_long_range;
  if (s == "lidar_4d") return Modality::lidar_4d;
  if (s == "camera") return Modality::camera;
  if (s == "radar") return Modality::radar;
  if (s == "gnss") return Modality::gnss;
  if (s == "v2x") return Modality::v2x;
  throw std::invalid_argument("unknown modality: " + s);
}

inline const std::vector<Modality>& all_modalities() {
  static const std::vector<Modality> kAll = {
      Modality::lidar_mid_range, Modality::lidar_long_range,
      Modality::lidar_4d,        Modality::camera,
      Modality::radar,           Modality::gnss,
      Modality::v2x};
  return kAll;
}

/// Either a LiDAR line count or a camera pixel raster.
struct Resolution {
  enum class Kind { lines, pixels };
  Kind kind = Kind::lines;
  int lines = 0;
  int width = 0;
  int height = 0;

  bool operator==(const Resolution&) const = default;
};

/// Angular viewing volume. Spinning sensors use azimuth_fov_deg == 360.
struct Frustum {
  double azimuth_fov_deg = 0.0;
  double elevation_fov_deg = 0.0;
  double max_range_m = 0.0;

  double azimuth_fov_rad() const { return deg2rad(azimuth_fov_deg); }
  double elevation_fov_rad() const { return deg2rad(elevation_fov_deg); }
  bool full_circle() const { return azimuth_fov_deg >= 360.0; }

  bool operator==(const Frustum&) const = default;
};

struct Sensor {
  std::string id;
  Modality modality = Modality::camera;
  Vec3 position;  // meters, vehicle frame (rear-axle ground projection)
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  std::optional<Frustum> frustum;  // absent for network-only nodes
  std::optional<Resolution> resolution;
  std::optional<double> frame_rate_hz;
  std::optional<double> net_demand_bps;  // default resolved at parse time
  std::optional<int> port;  // explicit switch port; absent = auto-assigned
  bool unconnected = false;  // declared off-network
  bool poe = false;
  double poe_draw_w = 0.0;
  bool automotive_ethernet = false;
  bool time_sensitive = true;
  std::string provenance;  // e.g. "nominal" for unsurveyed placements

  double yaw_rad() const { return deg2rad(yaw_deg); }
  double pitch_rad() const { return deg2rad(pitch_deg); }
  double roll_rad() const { return deg2rad(roll_deg); }
  Mat3 orientation() const {
    return rotation_zyx(yaw_rad(), pitch_rad(), roll_rad());
  }
  bool has_frustum() const { return frustum.has_value(); }

  bool operator==(const Sensor&) const = default;
};

struct VehicleBody {
  std::vector<OrientedBox> occluders;  // body proxy; at least the shell

  bool operator==(const VehicleBody&) const = default;
};

struct SwitchConfig {
  int ports = 52;
  double poe_budget_w = 740.0;

  bool operator==(const SwitchConfig&) const = default;
};

struct BondConfig {
  int members = 4;
  double member_bps = 10e9;

  double total_bps() const { return members * member_bps; }
  bool operator==(const BondConfig&) const = default;
};

struct RouterConfig {
  double uplink_bps = 1e9;
  bool available = true;
  std::optional<int> port;

  bool operator==(const RouterConfig&) const = default;
};

struct NetworkConfig {
  SwitchConfig switch_;
  BondConfig server_bond;
  RouterConfig router;
  double disk_write_bps = 33.4e9;
  double device_link_bps = 1e9;

  bool operator==(const NetworkConfig&) const = default;
};

struct BatteryConfig {
  double capacity_wh = 10000.0;
  double voltage_v = 24.0;

  bool operator==(const BatteryConfig&) const = default;
};

struct Load {
  std::string name;
  std::string rail;  // one of the configured rails (dc24, dc12, ac230)
  double draw_w = 0.0;
  std::string group;

  bool operator==(const Load&) const = default;
};

struct SwitchGroup {
  std::string id;
  bool default_on = true;

  bool operator==(const SwitchGroup&) const = default;
};

struct BoosterConfig {
  int count = 2;
  double unit_w = 600.0;
  bool available = false;

  bool operator==(const BoosterConfig&) const = default;
};

struct PowerSources {
  BoosterConfig boosters;
  double shore_charger_max_w = 3000.0;
  double shore_ac_passthrough_max_w = 3600.0;

  bool operator==(const PowerSources&) const = default;
};

struct PowerConfig {
  BatteryConfig battery;
  std::map<std::string, double> rails;  // rail name -> conversion efficiency
  std::vector<Load> loads;
  std::vector<SwitchGroup> switch_groups;
  PowerSources sources;

  bool operator==(const PowerConfig&) const = default;
};

struct RigSpec {
  std::string name;
  VehicleBody vehicle;
  std::vector<Sensor> sensors;
  NetworkConfig network;
  PowerConfig power;

  const Sensor* find_sensor(const std::string& id) const {
    for (const auto& s : sensors)
      if (s.id == id) return &s;
    return nullptr;
  }

  bool operator==(const RigSpec&) const = default;
};

inline std::map<std::string, double> default_rails() {
  return {{"dc24", 1.0}, {"dc12", 0.95}, {"ac230", 0.92}};
}

}  // namespace rigkit
