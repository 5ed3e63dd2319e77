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

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigkit/rig_io.hpp"
#include "rigkit/validate.hpp"

namespace rigkit {

// Simulator-ready bundle: per-sensor rigid extrinsics (4x4 homogeneous,
// row-major) and intrinsics, flat and framework-agnostic. Network-only nodes
// carry no frustum and are not exported.

struct TwinSensor {
  std::string id;
  std::string modality;
  std::array<double, 16> extrinsic{};  // sensor -> vehicle frame
  double azimuth_fov_deg = 0.0;
  double elevation_fov_deg = 0.0;
  double max_range_m = 0.0;
  double frame_rate_hz = 0.0;
  std::optional<Resolution> resolution;
};

struct TwinDoc {
  std::string name;
  std::vector<OrientedBox> occluders;
  std::vector<TwinSensor> sensors;
};

inline std::array<double, 16> sensor_extrinsic(const Sensor& s) {
  const Mat3 r = s.orientation();
  return {r(0, 0), r(0, 1), r(0, 2), s.position.x,
          r(1, 0), r(1, 1), r(1, 2), s.position.y,
          r(2, 0), r(2, 1), r(2, 2), s.position.z,
          0.0,     0.0,     0.0,     1.0};
}

inline TwinDoc make_twin(const RigSpec& rig) {
  const ValidationReport report = validate_rig(rig);
  if (!report.accepted())
    throw std::invalid_argument(
        "export refused: rig has " + std::to_string(report.errors.size()) +
        " validation error(s); first: " + report.errors.front().code);

  TwinDoc twin;
  twin.name = rig.name;
  twin.occluders = rig.vehicle.occluders;
  for (const auto& s : rig.sensors) {
    if (!s.frustum) continue;  // nothing to simulate
    TwinSensor t;
    t.id = s.id;
    t.modality = to_string(s.modality);
    t.extrinsic = sensor_extrinsic(s);
    t.azimuth_fov_deg = s.frustum->azimuth_fov_deg;
    t.elevation_fov_deg = s.frustum->elevation_fov_deg;
    t.max_range_m = s.frustum->max_range_m;
    t.frame_rate_hz = s.frame_rate_hz.value_or(0.0);
    t.resolution = s.resolution;
    twin.sensors.push_back(t);
  }
  return twin;
}

inline std::string serialize_twin(const TwinDoc& twin) {
  using nlohmann::json;
  json doc;
  doc["name"] = twin.name;
  json occs = json::array();
  for (const auto& box : twin.occluders) {
    json o;
    o["center_m"] = {box.center.x, box.center.y, box.center.z};
    o["half_extents_m"] = {box.half_extents.x, box.half_extents.y,
                           box.half_extents.z};
    o["yaw_deg"] = box.yaw_deg;
    occs.push_back(o);
  }
  doc["vehicle"]["occluders"] = occs;
  json sensors = json::array();
  for (const auto& t : twin.sensors) {
    json sj;
    sj["id"] = t.id;
    sj["modality"] = t.modality;
    sj["extrinsic"] = t.extrinsic;
    sj["intrinsic"]["azimuth_fov_deg"] = t.azimuth_fov_deg;
    sj["intrinsic"]["elevation_fov_deg"] = t.elevation_fov_deg;
    sj["intrinsic"]["max_range_m"] = t.max_range_m;
    sj["intrinsic"]["frame_rate_hz"] = t.frame_rate_hz;
    if (t.resolution) {
      if (t.resolution->kind == Resolution::Kind::lines)
        sj["intrinsic"]["resolution"]["lines"] = t.resolution->lines;
      else {
        sj["intrinsic"]["resolution"]["width"] = t.resolution->width;
        sj["intrinsic"]["resolution"]["height"] = t.resolution->height;
      }
    }
    sensors.push_back(sj);
  }
  doc["sensors"] = sensors;
  return doc.dump(2) + "\n";
}

/// Validates and exports; the output re-serializes byte-identically after
/// parse_twin.
inline std::string export_twin(const RigSpec& rig) {
  return serialize_twin(make_twin(rig));
}

inline TwinDoc parse_twin(const std::string& text) {
  using nlohmann::json;
  using namespace io_detail;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("SYNTAX", "", e.what());
  }
  check_object(doc, "$");
  check_keys(doc, "$", {"name", "vehicle", "sensors"});
  TwinDoc twin;
  twin.name = as_string(require(doc, "name", "$"), "$.name");
  const json& vehicle = require(doc, "vehicle", "$");
  check_object(vehicle, "$.vehicle");
  check_keys(vehicle, "$.vehicle", {"occluders"});
  const json& occs = require(vehicle, "occluders", "$.vehicle");
  for (std::size_t i = 0; i < occs.size(); ++i) {
    const std::string path = "$.vehicle.occluders[" + std::to_string(i) + "]";
    const json& o = occs[i];
    check_object(o, path);
    check_keys(o, path, {"center_m", "half_extents_m", "yaw_deg"});
    OrientedBox box;
    box.center = as_vec3(require(o, "center_m", path), path + ".center_m");
    box.half_extents =
        as_vec3(require(o, "half_extents_m", path), path + ".half_extents_m");
    box.yaw_deg = as_number(require(o, "yaw_deg", path), path + ".yaw_deg");
    twin.occluders.push_back(box);
  }
  const json& sensors = require(doc, "sensors", "$");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const std::string path = "$.sensors[" + std::to_string(i) + "]";
    const json& sj = sensors[i];
    check_object(sj, path);
    check_keys(sj, path, {"id", "modality", "extrinsic", "intrinsic"});
    TwinSensor t;
    t.id = as_string(require(sj, "id", path), path + ".id");
    t.modality = as_string(require(sj, "modality", path), path + ".modality");
    const json& ex = require(sj, "extrinsic", path);
    if (!ex.is_array() || ex.size() != 16)
      throw ParseError("TYPE", path + ".extrinsic",
                       "expected 16 row-major numbers");
    for (std::size_t k = 0; k < 16; ++k)
      t.extrinsic[k] = as_number(ex[k], path + ".extrinsic");
    const json& in = require(sj, "intrinsic", path);
    check_object(in, path + ".intrinsic");
    check_keys(in, path + ".intrinsic",
               {"azimuth_fov_deg", "elevation_fov_deg", "max_range_m",
                "frame_rate_hz", "resolution"});
    const std::string ip = path + ".intrinsic";
    t.azimuth_fov_deg =
        as_number(require(in, "azimuth_fov_deg", ip), ip + ".azimuth_fov_deg");
    t.elevation_fov_deg = as_number(require(in, "elevation_fov_deg", ip),
                                    ip + ".elevation_fov_deg");
    t.max_range_m =
        as_number(require(in, "max_range_m", ip), ip + ".max_range_m");
    t.frame_rate_hz =
        as_number(require(in, "frame_rate_hz", ip), ip + ".frame_rate_hz");
    if (const json* p = find(in, "resolution"))
      t.resolution = parse_resolution(*p, ip + ".resolution");
    twin.sensors.push_back(t);
  }
  return twin;
}

}  // namespace rigkit
