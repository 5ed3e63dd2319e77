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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rigkit/rig.hpp"

namespace rigkit {

// Ground-level coverage analysis: which sensors of a modality group see which
// points, where the blind spots are, and how redundant the coverage is.
// Sensors are ideal point apertures; beams and per-line sampling are not
// modeled, matching binary field-of-view maps.

/// True iff `point` lies within the sensor's range and angular spans.
/// Boundaries are closed; spinning sensors (360 deg azimuth) skip the azimuth
/// test entirely.
inline bool frustum_contains(const Sensor& sensor, const Vec3& point) {
  if (!sensor.frustum) return false;
  const Frustum& f = *sensor.frustum;
  const Vec3 d = point - sensor.position;
  if (dot(d, d) > f.max_range_m * f.max_range_m) return false;
  const Vec3 v = sensor.orientation().apply_transposed(d);
  const double elevation = std::atan2(v.z, std::hypot(v.x, v.y));
  if (std::abs(elevation) > 0.5 * f.elevation_fov_rad()) return false;
  if (!f.full_circle()) {
    const double azimuth = std::atan2(v.y, v.x);
    if (std::abs(azimuth) > 0.5 * f.azimuth_fov_rad()) return false;
  }
  return true;
}

/// True iff the open segment origin->target passes through any occluder.
inline bool occluded(const Vec3& origin, const Vec3& target,
                     const std::vector<OrientedBox>& occluders) {
  for (const auto& box : occluders)
    if (segment_intersects_box(origin, target, box)) return true;
  return false;
}

namespace coverage_detail {

/// Occluders that apply to a given sensor. A box containing the sensor origin
/// within 1 cm never occludes that sensor: flush-mounted roof sensors sit on
/// the body proxy itself.
inline std::vector<OrientedBox> applicable_occluders(
    const Sensor& sensor, const std::vector<OrientedBox>& occluders) {
  std::vector<OrientedBox> out;
  for (const auto& box : occluders)
    if (!box_contains(box, sensor.position, 0.01)) out.push_back(box);
  return out;
}

inline std::vector<const Sensor*> group_sensors(
    const RigSpec& rig, const std::optional<Modality>& group) {
  std::vector<const Sensor*> out;
  for (const auto& s : rig.sensors) {
    if (!s.has_frustum()) continue;
    if (group && s.modality != *group) continue;
    out.push_back(&s);
  }
  return out;
}

}  // namespace coverage_detail

/// Horizontal analysis grid at a fixed query height, centered on the vehicle
/// frame origin. Cell (ix, iy) has center
///   x = (ix - (width-1)/2)  * cell_size
///   y = (iy - (height-1)/2) * cell_size
/// which keeps cell centers exactly symmetric in y. Per cell it stores the
/// indices (into sensor_ids) of the group sensors that see the cell center.
struct CoverageGrid {
  double cell_size = 0.1;
  int width = 0;   // cells along x
  int height = 0;  // cells along y
  double query_height = 1.0;
  std::vector<std::string> sensor_ids;           // group members, rig order
  std::vector<std::vector<uint16_t>> cells;      // iy * width + ix
  std::vector<uint8_t> interior;                 // inside a body footprint

  double cell_x(int ix) const {
    return (ix - (width - 1) / 2.0) * cell_size;
  }
  double cell_y(int iy) const {
    return (iy - (height - 1) / 2.0) * cell_size;
  }
  double origin_x() const { return cell_x(0); }
  double origin_y() const { return cell_y(0); }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * width + ix;
  }
  int count_at(int ix, int iy) const {
    return static_cast<int>(cells[index(ix, iy)].size());
  }
};

/// Evaluates the per-cell covering sets for one modality group (or the whole
/// rig when no group is given). Cells are independent, so evaluation may be
/// split across threads; the result is identical for any thread count.
inline CoverageGrid coverage_grid(const RigSpec& rig,
                                  std::optional<Modality> group,
                                  double query_height, double extent_m,
                                  double cell_size, int threads = 1) {
  if (!(cell_size > 0.0) || !(extent_m > cell_size))
    throw std::invalid_argument("coverage_grid: need extent > cell_size > 0");

  CoverageGrid grid;
  grid.cell_size = cell_size;
  const int n = std::max<int>(1, std::llround(2.0 * extent_m / cell_size));
  grid.width = n;
  grid.height = n;
  grid.query_height = query_height;

  const auto sensors = coverage_detail::group_sensors(rig, group);
  for (const auto* s : sensors) grid.sensor_ids.push_back(s->id);
  std::vector<std::vector<OrientedBox>> occluders;
  occluders.reserve(sensors.size());
  for (const auto* s : sensors)
    occluders.push_back(
        coverage_detail::applicable_occluders(*s, rig.vehicle.occluders));

  grid.cells.assign(static_cast<std::size_t>(n) * n, {});
  grid.interior.assign(static_cast<std::size_t>(n) * n, 0);

  auto run_rows = [&](int iy_begin, int iy_end) {
    for (int iy = iy_begin; iy < iy_end; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const Vec3 c{grid.cell_x(ix), grid.cell_y(iy), query_height};
        const std::size_t idx = grid.index(ix, iy);
        for (const auto& box : rig.vehicle.occluders) {
          if (box_footprint_contains(box, c.x, c.y)) {
            grid.interior[idx] = 1;
            break;
          }
        }
        for (std::size_t k = 0; k < sensors.size(); ++k) {
          if (frustum_contains(*sensors[k], c) &&
              !occluded(sensors[k]->position, c, occluders[k]))
            grid.cells[idx].push_back(static_cast<uint16_t>(k));
        }
      }
    }
  };

  const int workers = std::max(1, threads);
  if (workers == 1) {
    run_rows(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int b = w * chunk;
      const int e = std::min(n, b + chunk);
      if (b >= e) break;
      pool.emplace_back(run_rows, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return grid;
}

struct AzimuthalCoverage {
  double fraction = 0.0;
  // Maximal uncovered arcs as [start, end) radians with start in [0, 2pi);
  // an arc crossing the 0 seam has end > 2pi.
  std::vector<std::pair<double, double>> gaps;
  int samples = 0;
  int covered = 0;
};

/// Samples the circle of `radius_m` at `query_height` and reports which
/// azimuths the group covers. Gaps are maximal uncovered arcs (merged across
/// the 0/2pi seam).
inline AzimuthalCoverage azimuthal_coverage(const RigSpec& rig,
                                            std::optional<Modality> group,
                                            double radius_m,
                                            double query_height,
                                            double step_rad) {
  if (!(radius_m > 0.0) || !(step_rad > 0.0))
    throw std::invalid_argument("azimuthal_coverage: radius and step > 0");

  const auto sensors = coverage_detail::group_sensors(rig, group);
  std::vector<std::vector<OrientedBox>> occluders;
  for (const auto* s : sensors)
    occluders.push_back(
        coverage_detail::applicable_occluders(*s, rig.vehicle.occluders));

  AzimuthalCoverage out;
  const int n = std::max<int>(1, std::ceil(2.0 * kPi / step_rad));
  out.samples = n;
  std::vector<uint8_t> hit(n, 0);
  for (int k = 0; k < n; ++k) {
    const double theta = k * step_rad;
    const Vec3 p{radius_m * std::cos(theta), radius_m * std::sin(theta),
                 query_height};
    for (std::size_t i = 0; i < sensors.size(); ++i) {
      if (frustum_contains(*sensors[i], p) &&
          !occluded(sensors[i]->position, p, occluders[i])) {
        hit[k] = 1;
        break;
      }
    }
    out.covered += hit[k];
  }
  out.fraction = static_cast<double>(out.covered) / n;

  if (out.covered == n) return out;
  if (out.covered == 0) {
    out.gaps.emplace_back(0.0, 2.0 * kPi);
    return out;
  }
  // Maximal uncovered runs; a run touching both seam ends wraps.
  std::vector<std::pair<int, int>> runs;  // [begin, end) sample indices
  int k = 0;
  while (k < n) {
    if (hit[k]) { ++k; continue; }
    int b = k;
    while (k < n && !hit[k]) ++k;
    runs.emplace_back(b, k);
  }
  bool wrapped = false;
  if (runs.size() > 1 && runs.front().first == 0 && runs.back().second == n) {
    wrapped = true;
  }
  for (std::size_t i = wrapped ? 1 : 0; i < runs.size(); ++i) {
    const auto [b, e] = runs[i];
    double end = e * step_rad;
    if (wrapped && i == runs.size() - 1)
      end = 2.0 * kPi + runs.front().second * step_rad;
    out.gaps.emplace_back(b * step_rad, end);
  }
  return out;
}

/// Covered / blind accounting over the cells whose centers lie within
/// `radius_m`. Vehicle-interior cells are excluded. k_histogram[k] counts the
/// accounted cells seen by exactly k sensors, k = 0..N.
struct CoverageSummary {
  double covered_area_m2 = 0.0;
  double blind_area_m2 = 0.0;
  std::vector<long> k_histogram;
  long in_radius_cells = 0;   // accounted (non-interior) cells
  long interior_cells = 0;    // in-radius cells skipped as vehicle interior
  double radius_m = 0.0;
};

inline CoverageSummary blind_spot_area(const CoverageGrid& grid,
                                       double radius_m) {
  const double half_x = grid.width * grid.cell_size / 2.0;
  const double half_y = grid.height * grid.cell_size / 2.0;
  // The radius may reach into the grid corners (so a disc circumscribing the
  // whole grid is fine) but not past every cell.
  if (radius_m > std::hypot(half_x, half_y) + 1e-9)
    throw std::invalid_argument("blind_spot_area: radius exceeds grid extent");

  CoverageSummary s;
  s.radius_m = radius_m;
  s.k_histogram.assign(grid.sensor_ids.size() + 1, 0);
  const double r2 = radius_m * radius_m;
  const double cell_area = grid.cell_size * grid.cell_size;
  for (int iy = 0; iy < grid.height; ++iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      const double x = grid.cell_x(ix), y = grid.cell_y(iy);
      if (x * x + y * y > r2) continue;
      const std::size_t idx = grid.index(ix, iy);
      if (grid.interior[idx]) {
        ++s.interior_cells;
        continue;
      }
      ++s.in_radius_cells;
      const int k = static_cast<int>(grid.cells[idx].size());
      ++s.k_histogram[k];
      if (k > 0)
        s.covered_area_m2 += cell_area;
      else
        s.blind_area_m2 += cell_area;
    }
  }
  return s;
}

/// Angle at `target` subtended by the two sensor origins. Small values mean
/// point clouds project into the partner image with little disparity.
inline double parallax_angle(const Sensor& a, const Sensor& b,
                             const Vec3& target) {
  const Vec3 u = a.position - target;
  const Vec3 v = b.position - target;
  const double nu = norm(u), nv = norm(v);
  if (nu == 0.0 || nv == 0.0)
    throw std::invalid_argument("parallax_angle: target coincides with origin");
  const double c = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

namespace coverage_detail {

inline void camera_focals(const Sensor& cam, double& fx, double& fy,
                          double& w, double& h) {
  if (cam.modality != Modality::camera || !cam.frustum || !cam.resolution ||
      cam.resolution->kind != Resolution::Kind::pixels)
    throw std::invalid_argument("projection needs a camera with pixel raster");
  w = cam.resolution->width;
  h = cam.resolution->height;
  fx = (w / 2.0) / std::tan(0.5 * cam.frustum->azimuth_fov_rad());
  fy = (h / 2.0) / std::tan(0.5 * cam.frustum->elevation_fov_rad());
}

}  // namespace coverage_detail

/// Distortion-free pinhole projection; (0,0) is the top-left image corner,
/// u grows to the right, v downward. Returns nothing for points behind the
/// image plane or outside the camera frustum.
inline std::optional<Pixel> project_point(const Sensor& camera,
                                          const Vec3& point) {
  double fx, fy, w, h;
  coverage_detail::camera_focals(camera, fx, fy, w, h);
  if (!frustum_contains(camera, point)) return std::nullopt;
  const Vec3 v = camera.orientation().apply_transposed(point - camera.position);
  if (v.x <= 0.0) return std::nullopt;
  return Pixel{w / 2.0 - fx * (v.y / v.x), h / 2.0 - fy * (v.z / v.x)};
}

/// Inverse of project_point at a known forward depth (sensor-frame x).
inline Vec3 unproject_pixel(const Sensor& camera, const Pixel& px,
                            double depth) {
  double fx, fy, w, h;
  coverage_detail::camera_focals(camera, fx, fy, w, h);
  const Vec3 v{depth, (w / 2.0 - px.u) * depth / fx,
               (h / 2.0 - px.v) * depth / fy};
  return camera.position + camera.orientation().apply(v);
}

// --- exports ---------------------------------------------------------------

/// Binary PGM, one byte per cell = min(k, 255). Image columns run along +x
/// (vehicle front at the right edge), rows top-to-bottom along -y (vehicle
/// left side at the top edge).
inline void write_pgm(const CoverageGrid& grid, std::ostream& os) {
  os << "P5\n" << grid.width << " " << grid.height << "\n255\n";
  for (int row = 0; row < grid.height; ++row) {
    const int iy = grid.height - 1 - row;
    for (int ix = 0; ix < grid.width; ++ix) {
      const int k = grid.count_at(ix, iy);
      os.put(static_cast<char>(std::min(k, 255)));
    }
  }
}

/// CSV of (x, y, k, sensor id list), one row per cell in storage order.
inline void write_grid_csv(const CoverageGrid& grid, std::ostream& os) {
  os << "x_m,y_m,k,sensors\n";
  std::ostringstream num;
  for (int iy = 0; iy < grid.height; ++iy) {
    for (int ix = 0; ix < grid.width; ++ix) {
      const std::size_t idx = grid.index(ix, iy);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.3f,%.3f,", grid.cell_x(ix),
                    grid.cell_y(iy));
      os << buf << grid.cells[idx].size() << ",";
      const auto& ids = grid.cells[idx];
      for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) os << ';';
        os << grid.sensor_ids[ids[k]];
      }
      os << "\n";
    }
  }
}

inline std::string summary_text(const CoverageSummary& s) {
  std::ostringstream os;
  os << "radius_m: " << s.radius_m << "\n";
  os << "covered_area_m2: " << s.covered_area_m2 << "\n";
  os << "blind_area_m2: " << s.blind_area_m2 << "\n";
  os << "in_radius_cells: " << s.in_radius_cells << "\n";
  os << "interior_cells: " << s.interior_cells << "\n";
  os << "k_histogram:";
  for (std::size_t k = 0; k < s.k_histogram.size(); ++k)
    os << " " << k << ":" << s.k_histogram[k];
  os << "\n";
  return os.str();
}

}  // namespace rigkit
