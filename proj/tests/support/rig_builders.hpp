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

// Shared fixtures for tests: hand-built sensors and randomized small rigs.

#include <random>
#include <string>

#include "rigkit/rig.hpp"

namespace testsup {

inline rigkit::Sensor make_sensor(std::string id, rigkit::Modality modality,
                                  rigkit::Vec3 position, double yaw_deg,
                                  double az_fov_deg, double el_fov_deg,
                                  double range_m) {
  rigkit::Sensor s;
  s.id = std::move(id);
  s.modality = modality;
  s.position = position;
  s.yaw_deg = yaw_deg;
  s.frustum = rigkit::Frustum{az_fov_deg, el_fov_deg, range_m};
  s.frame_rate_hz = 10.0;
  s.net_demand_bps = 1e9;
  return s;
}

inline rigkit::Sensor make_camera(std::string id, rigkit::Vec3 position,
                                  double yaw_deg, double az_fov_deg,
                                  double el_fov_deg, int width, int height,
                                  double range_m = 100.0) {
  rigkit::Sensor s = make_sensor(std::move(id), rigkit::Modality::camera,
                                 position, yaw_deg, az_fov_deg, el_fov_deg,
                                 range_m);
  rigkit::Resolution r;
  r.kind = rigkit::Resolution::Kind::pixels;
  r.width = width;
  r.height = height;
  s.resolution = r;
  s.frame_rate_hz = 20.0;
  return s;
}

inline rigkit::RigSpec minimal_rig() {
  rigkit::RigSpec rig;
  rig.name = "test";
  rig.vehicle.occluders.push_back(
      {{0.0, 0.0, 0.5}, {1.0, 0.5, 0.5}, 0.0});
  rig.power.rails = rigkit::default_rails();
  return rig;
}

/// Small random rig: up to `max_sensors` frustum sensors with continuous
/// random poses/FOVs (about a quarter of them spinning) and up to
/// `max_occluders` boxes. Geometry scaled for a 32x32 grid of 0.1 m cells.
inline rigkit::RigSpec random_rig(std::mt19937_64& rng, int max_sensors = 4,
                                  int max_occluders = 3) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };

  rigkit::RigSpec rig;
  rig.name = "random";
  rig.power.rails = rigkit::default_rails();

  const int n_occ = static_cast<int>(rng() % (max_occluders + 1));
  for (int i = 0; i < n_occ; ++i) {
    rigkit::OrientedBox box;
    box.center = {uni(-1.5, 1.5), uni(-1.5, 1.5), uni(0.0, 1.2)};
    box.half_extents = {uni(0.05, 0.8), uni(0.05, 0.8), uni(0.05, 0.8)};
    box.yaw_deg = uni(-180.0, 180.0);
    rig.vehicle.occluders.push_back(box);
  }
  if (rig.vehicle.occluders.empty())
    rig.vehicle.occluders.push_back({{0, 0, -5.0}, {0.01, 0.01, 0.01}, 0.0});

  static const rigkit::Modality kMods[] = {
      rigkit::Modality::lidar_mid_range, rigkit::Modality::lidar_long_range,
      rigkit::Modality::lidar_4d, rigkit::Modality::camera,
      rigkit::Modality::radar};
  const int n_sensors = 1 + static_cast<int>(rng() % max_sensors);
  for (int i = 0; i < n_sensors; ++i) {
    rigkit::Sensor s;
    s.id = "s" + std::to_string(i);
    s.modality = kMods[rng() % 5];
    s.position = {uni(-2.0, 2.0), uni(-2.0, 2.0), uni(0.0, 2.0)};
    s.yaw_deg = uni(-180.0, 180.0);
    s.pitch_deg = uni(-25.0, 25.0);
    s.roll_deg = uni(-15.0, 15.0);
    rigkit::Frustum f;
    f.azimuth_fov_deg = u01(rng) < 0.25 ? 360.0 : uni(20.0, 355.0);
    f.elevation_fov_deg = uni(5.0, 170.0);
    f.max_range_m = uni(0.3, 5.0);
    s.frustum = f;
    s.frame_rate_hz = 10.0;
    s.net_demand_bps = 1e9;
    rig.sensors.push_back(s);
  }
  return rig;
}

/// Reflection across the x-z plane: y -> -y, yaw -> -yaw, roll -> -roll.
inline rigkit::RigSpec mirror_rig(const rigkit::RigSpec& rig) {
  rigkit::RigSpec m = rig;
  for (auto& box : m.vehicle.occluders) {
    box.center.y = -box.center.y;
    box.yaw_deg = -box.yaw_deg;
  }
  for (auto& s : m.sensors) {
    s.position.y = -s.position.y;
    s.yaw_deg = -s.yaw_deg;
    s.roll_deg = -s.roll_deg;
  }
  return m;
}

}  // namespace testsup
