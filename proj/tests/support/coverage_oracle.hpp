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

// Brute-force reference for the coverage predicates. Deliberately written
// from the definitions, independent of the library's geometry code: rotations
// are applied axis by axis, the slab test is re-derived, and the grid loop is
// naive. Test code only.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rigkit/rig.hpp"

namespace oracle {

struct V3 {
  double x, y, z;
};

inline V3 rot_z(double a, V3 v) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}
inline V3 rot_y(double a, V3 v) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * v.x + s * v.z, v.y, -s * v.x + c * v.z};
}
inline V3 rot_x(double a, V3 v) {
  const double c = std::cos(a), s = std::sin(a);
  return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
}

/// World -> sensor frame: undo yaw, then pitch, then roll.
inline V3 world_to_sensor(const rigkit::Sensor& s, V3 d) {
  const double k = 3.14159265358979323846 / 180.0;
  return rot_x(-s.roll_deg * k, rot_y(-s.pitch_deg * k, rot_z(-s.yaw_deg * k, d)));
}

inline bool frustum_contains(const rigkit::Sensor& s, double px, double py,
                             double pz) {
  if (!s.frustum) return false;
  const double k = 3.14159265358979323846 / 180.0;
  const V3 d{px - s.position.x, py - s.position.y, pz - s.position.z};
  if (std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z) > s.frustum->max_range_m)
    return false;
  const V3 v = world_to_sensor(s, d);
  const double horiz = std::sqrt(v.x * v.x + v.y * v.y);
  if (std::abs(std::atan2(v.z, horiz)) > 0.5 * s.frustum->elevation_fov_deg * k)
    return false;
  if (s.frustum->azimuth_fov_deg < 360.0) {
    if (std::abs(std::atan2(v.y, v.x)) > 0.5 * s.frustum->azimuth_fov_deg * k)
      return false;
  }
  return true;
}

inline V3 box_local(const rigkit::OrientedBox& box, double px, double py,
                    double pz) {
  const double k = 3.14159265358979323846 / 180.0;
  const double a = box.yaw_deg * k;
  const double c = std::cos(a), s = std::sin(a);
  const double dx = px - box.center.x, dy = py - box.center.y,
               dz = pz - box.center.z;
  return {c * dx + s * dy, -s * dx + c * dy, dz};
}

/// Closed box, open segment: endpoints sitting exactly on a face do not
/// count, a segment grazing along a face does.
inline bool segment_hits_box(const rigkit::OrientedBox& box, double ax,
                             double ay, double az, double bx, double by,
                             double bz) {
  const V3 a = box_local(box, ax, ay, az);
  const V3 b = box_local(box, bx, by, bz);
  const double p0[3] = {a.x, a.y, a.z};
  const double p1[3] = {b.x, b.y, b.z};
  const double h[3] = {box.half_extents.x, box.half_extents.y,
                       box.half_extents.z};
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 3; ++i) {
    const double d = p1[i] - p0[i];
    if (d == 0.0) {
      if (std::abs(p0[i]) > h[i]) return false;
      continue;
    }
    double t0 = (-h[i] - p0[i]) / d;
    double t1 = (h[i] - p0[i]) / d;
    if (t0 > t1) {
      const double tmp = t0;
      t0 = t1;
      t1 = tmp;
    }
    if (t0 > lo) lo = t0;
    if (t1 < hi) hi = t1;
    if (lo > hi) return false;
  }
  return hi > 0.0 && lo < 1.0;
}

inline bool sensor_sees(const rigkit::Sensor& s,
                        const std::vector<rigkit::OrientedBox>& occluders,
                        double px, double py, double pz) {
  if (!frustum_contains(s, px, py, pz)) return false;
  for (const auto& box : occluders) {
    // Self-exemption: a box holding the sensor origin within 1 cm never
    // occludes that sensor.
    const V3 o = box_local(box, s.position.x, s.position.y, s.position.z);
    if (std::abs(o.x) <= box.half_extents.x + 0.01 &&
        std::abs(o.y) <= box.half_extents.y + 0.01 &&
        std::abs(o.z) <= box.half_extents.z + 0.01)
      continue;
    if (segment_hits_box(box, s.position.x, s.position.y, s.position.z, px, py,
                         pz))
      return false;
  }
  return true;
}

struct GridResult {
  int n = 0;
  std::vector<std::vector<uint16_t>> cells;
  std::vector<uint8_t> interior;
};

inline GridResult coverage_grid(const rigkit::RigSpec& rig,
                                std::optional<rigkit::Modality> group,
                                double query_height, double extent,
                                double cell) {
  GridResult g;
  g.n = static_cast<int>(std::llround(2.0 * extent / cell));
  if (g.n < 1) g.n = 1;
  g.cells.assign(static_cast<std::size_t>(g.n) * g.n, {});
  g.interior.assign(static_cast<std::size_t>(g.n) * g.n, 0);

  std::vector<const rigkit::Sensor*> sensors;
  for (const auto& s : rig.sensors) {
    if (!s.frustum) continue;
    if (group && s.modality != *group) continue;
    sensors.push_back(&s);
  }

  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      const double x = (ix - (g.n - 1) / 2.0) * cell;
      const double y = (iy - (g.n - 1) / 2.0) * cell;
      const std::size_t idx = static_cast<std::size_t>(iy) * g.n + ix;
      for (const auto& box : rig.vehicle.occluders) {
        const V3 q = box_local(box, x, y, box.center.z);
        if (std::abs(q.x) <= box.half_extents.x &&
            std::abs(q.y) <= box.half_extents.y) {
          g.interior[idx] = 1;
          break;
        }
      }
      for (std::size_t k = 0; k < sensors.size(); ++k) {
        const rigkit::Sensor& s = *sensors[k];
        if (!frustum_contains(s, x, y, query_height)) continue;
        bool blocked = false;
        for (const auto& box : rig.vehicle.occluders) {
          const V3 o = box_local(box, s.position.x, s.position.y, s.position.z);
          if (std::abs(o.x) <= box.half_extents.x + 0.01 &&
              std::abs(o.y) <= box.half_extents.y + 0.01 &&
              std::abs(o.z) <= box.half_extents.z + 0.01)
            continue;
          if (segment_hits_box(box, s.position.x, s.position.y, s.position.z,
                               x, y, query_height)) {
            blocked = true;
            break;
          }
        }
        if (!blocked) g.cells[idx].push_back(static_cast<uint16_t>(k));
      }
    }
  }
  return g;
}

}  // namespace oracle
