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
#include <cmath>

namespace rigkit {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3& o) const = default;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// 3x3 row-major matrix. Enough linear algebra for rigid sensor poses;
/// anything heavier does not belong in this library.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  /// Applies the transpose, i.e. the inverse for rotation matrices.
  Vec3 apply_transposed(const Vec3& v) const {
    return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
            m[1] * v.x + m[4] * v.y + m[7] * v.z,
            m[2] * v.x + m[5] * v.y + m[8] * v.z};
  }
};

/// Rotation from intrinsic yaw (about z), pitch (about y), roll (about x),
/// composed as Rz(yaw) * Ry(pitch) * Rx(roll). Frame convention everywhere:
/// x forward, y left, z up.
inline Mat3 rotation_zyx(double yaw_rad, double pitch_rad, double roll_rad) {
  const double cy = std::cos(yaw_rad), sy = std::sin(yaw_rad);
  const double cp = std::cos(pitch_rad), sp = std::sin(pitch_rad);
  const double cr = std::cos(roll_rad), sr = std::sin(roll_rad);
  Mat3 r;
  r.m = {cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,
         sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,
         -sp,     cp * sr,                cp * cr};
  return r;
}

/// Box with arbitrary center and yaw about the vertical axis. The yaw is kept
/// in degrees as authored in configuration files so that serialization
/// round-trips bit-exactly; use yaw_rad() for math.
struct OrientedBox {
  Vec3 center;
  Vec3 half_extents;
  double yaw_deg = 0.0;

  double yaw_rad() const { return deg2rad(yaw_deg); }

  /// World point into the box-local frame.
  Vec3 to_local(const Vec3& p) const {
    const double c = std::cos(yaw_rad()), s = std::sin(yaw_rad());
    const Vec3 d = p - center;
    return {c * d.x + s * d.y, -s * d.x + c * d.y, d.z};
  }

  bool operator==(const OrientedBox& o) const = default;
};

/// Closed-box containment, optionally inflated by `margin` on every axis.
inline bool box_contains(const OrientedBox& box, const Vec3& p,
                         double margin = 0.0) {
  const Vec3 q = box.to_local(p);
  return std::abs(q.x) <= box.half_extents.x + margin &&
         std::abs(q.y) <= box.half_extents.y + margin &&
         std::abs(q.z) <= box.half_extents.z + margin;
}

/// 2-D footprint containment of a ground-plane position (ignores z).
inline bool box_footprint_contains(const OrientedBox& box, double x, double y) {
  const Vec3 q = box.to_local({x, y, box.center.z});
  return std::abs(q.x) <= box.half_extents.x &&
         std::abs(q.y) <= box.half_extents.y;
}

/// True iff the open segment (p0, p1) meets the closed box: slab test in the
/// box frame. Endpoints exactly on a face do not count as hits (the segment
/// parameter interval is open), while a segment sliding along a face does.
inline bool segment_intersects_box(const Vec3& p0, const Vec3& p1,
                                   const OrientedBox& box) {
  const Vec3 a = box.to_local(p0);
  const Vec3 b = box.to_local(p1);
  const double start[3] = {a.x, a.y, a.z};
  const double delta[3] = {b.x - a.x, b.y - a.y, b.z - a.z};
  const double half[3] = {box.half_extents.x, box.half_extents.y,
                          box.half_extents.z};

  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (delta[k] == 0.0) {
      if (std::abs(start[k]) > half[k]) return false;
      continue;
    }
    double t0 = (-half[k] - start[k]) / delta[k];
    double t1 = (half[k] - start[k]) / delta[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    if (lo > hi) return false;
  }
  // [lo, hi] is the in-box parameter range clipped to [0, 1]; the open
  // segment excludes bare endpoint contact.
  return hi > 0.0 && lo < 1.0;
}

}  // namespace rigkit
