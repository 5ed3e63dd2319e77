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

#include <sstream>
#include <string>
#include <vector>

#include "rigkit/coverage.hpp"
#include "rigkit/netplan.hpp"
#include "rigkit/powerplan.hpp"
#include "rigkit/validate.hpp"

namespace rigkit {

// One document answering the design-review questions: does every modality
// still see all around, does the network carry the data, does the battery
// last. Machine output (csv) is byte-stable across runs and thread counts.

struct ReportOptions {
  double radius_m = 10.0;
  double height_m = 1.0;
  double step_deg = 0.5;
  double extent_m = 30.0;
  double cell_m = 0.1;
  int threads = 1;
};

struct GroupCoverageResult {
  Modality modality = Modality::camera;
  int sensor_count = 0;
  AzimuthalCoverage azimuthal;
  CoverageSummary summary;

  bool full_circle() const { return azimuthal.covered == azimuthal.samples; }
};

struct PowerResult {
  double nominal_net_w = 0.0;
  double peak_net_w = 0.0;
  double nominal_runtime_h = kIndefinite;
  double peak_runtime_h = kIndefinite;
  bool shore_indefinite_at_peak = true;
};

struct RigReport {
  std::string rig_name;
  std::size_t sensor_count = 0;
  ValidationReport validation;
  std::vector<GroupCoverageResult> groups;
  bool net_run = false;
  NetCheck net;
  PowerResult power;

  bool coverage_ok() const {
    for (const auto& g : groups)
      if (!g.full_circle()) return false;
    return true;
  }
  bool ok() const {
    return validation.accepted() && coverage_ok() && net_run && net.ok() &&
           power.shore_indefinite_at_peak;
  }
};

namespace report_detail {

inline const std::vector<Modality>& surround_groups() {
  static const std::vector<Modality> kGroups = {
      Modality::lidar_mid_range, Modality::lidar_long_range,
      Modality::lidar_4d, Modality::camera};
  return kGroups;
}

inline PowerResult power_result(const PowerSystem& sys) {
  PowerResult out;
  SwitchStates nominal, peak;
  if (!sys.switch_groups.empty()) {
    for (const auto& g : sys.switch_groups) {
      if (g.default_on) nominal[g.id] = true;
      peak[g.id] = true;
    }
  } else {
    for (const auto& l : sys.loads) {
      nominal[l.group] = true;
      peak[l.group] = true;
    }
  }
  out.nominal_net_w = net_battery_power(sys, nominal);
  out.peak_net_w = net_battery_power(sys, peak);
  out.nominal_runtime_h = out.nominal_net_w > 0
                              ? sys.battery.capacity_wh / out.nominal_net_w
                              : kIndefinite;
  out.peak_runtime_h =
      out.peak_net_w > 0 ? sys.battery.capacity_wh / out.peak_net_w
                         : kIndefinite;
  out.shore_indefinite_at_peak = indefinite_operation(
      sys, peak, SourceStates{false, sys.sources.shore_charger_max_w, 0.0});
  return out;
}

}  // namespace report_detail

inline RigReport build_report(const RigSpec& rig, const ReportOptions& opt) {
  RigReport report;
  report.rig_name = rig.name;
  report.sensor_count = rig.sensors.size();
  report.validation = validate_rig(rig);
  if (!report.validation.accepted()) return report;  // nothing else is sound

  for (Modality m : report_detail::surround_groups()) {
    GroupCoverageResult g;
    g.modality = m;
    for (const auto& s : rig.sensors)
      if (s.modality == m && s.has_frustum()) ++g.sensor_count;
    if (g.sensor_count == 0) continue;
    g.azimuthal = azimuthal_coverage(rig, m, opt.radius_m, opt.height_m,
                                     deg2rad(opt.step_deg));
    const CoverageGrid grid = coverage_grid(rig, m, opt.height_m, opt.extent_m,
                                            opt.cell_m, opt.threads);
    g.summary = blind_spot_area(grid, opt.extent_m);
    report.groups.push_back(std::move(g));
  }

  report.net = run_netcheck(rig);
  report.net_run = true;
  report.power = report_detail::power_result(rig.power);
  return report;
}

inline std::string format_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string report_text(const RigReport& r, const ReportOptions& opt,
                               const std::string& timestamp = "") {
  std::ostringstream os;
  os << "rig report: " << r.rig_name << "\n";
  if (!timestamp.empty()) os << "generated: " << timestamp << "\n";
  os << "sensors: " << r.sensor_count << "\n\n";

  os << "[validation] " << (r.validation.accepted() ? "PASS" : "FAIL") << "\n";
  os << r.validation.to_text();
  if (!r.validation.accepted()) {
    os << "\nreport: FAIL (validation errors; checks skipped)\n";
    return os.str();
  }
  os << "\n[coverage] radius " << format_g(opt.radius_m) << " m, height "
     << format_g(opt.height_m) << " m\n";
  for (const auto& g : r.groups) {
    os << "  " << to_string(g.modality) << " (" << g.sensor_count
       << " sensors): fraction " << format_g(g.azimuthal.fraction) << " "
       << (g.full_circle() ? "PASS" : "FAIL");
    if (!g.azimuthal.gaps.empty()) {
      os << " gaps:";
      for (const auto& [a, b] : g.azimuthal.gaps)
        os << " [" << format_g(rad2deg(a)) << ", " << format_g(rad2deg(b))
           << ")deg";
    }
    os << "\n";
    os << "    blind " << format_g(g.summary.blind_area_m2) << " m2 / covered "
       << format_g(g.summary.covered_area_m2) << " m2 within "
       << format_g(opt.extent_m) << " m\n";
  }

  os << "\n[network] " << (r.net.ok() ? "PASS" : "FAIL") << "\n";
  os << netcheck_text(r.net);

  os << "\n[power] "
     << (r.power.shore_indefinite_at_peak ? "PASS" : "FAIL") << "\n";
  os << "  nominal net " << format_g(r.power.nominal_net_w) << " W, runtime ";
  if (r.power.nominal_runtime_h == kIndefinite)
    os << "indefinite\n";
  else
    os << format_g(r.power.nominal_runtime_h) << " h\n";
  os << "  peak net " << format_g(r.power.peak_net_w) << " W, runtime ";
  if (r.power.peak_runtime_h == kIndefinite)
    os << "indefinite\n";
  else
    os << format_g(r.power.peak_runtime_h) << " h\n";
  os << "  indefinite on shore power at peak: "
     << (r.power.shore_indefinite_at_peak ? "yes" : "no") << "\n";

  os << "\nreport: " << (r.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

/// Machine-readable variant: section,key,value rows. Never carries a
/// timestamp; identical inputs produce identical bytes.
inline std::string report_csv(const RigReport& r) {
  std::ostringstream os;
  os << "section,key,value\n";
  os << "rig,name," << r.rig_name << "\n";
  os << "rig,sensors," << r.sensor_count << "\n";
  os << "validation,errors," << r.validation.errors.size() << "\n";
  os << "validation,warnings," << r.validation.warnings.size() << "\n";
  for (const auto& g : r.groups) {
    const std::string p = std::string("coverage,") + to_string(g.modality);
    os << p << ".sensors," << g.sensor_count << "\n";
    os << p << ".fraction," << format_g(g.azimuthal.fraction) << "\n";
    os << p << ".gaps," << g.azimuthal.gaps.size() << "\n";
    os << p << ".covered_area_m2," << format_g(g.summary.covered_area_m2)
       << "\n";
    os << p << ".blind_area_m2," << format_g(g.summary.blind_area_m2) << "\n";
  }
  if (r.net_run) {
    os << "network,total_demand_bps," << format_g(r.net.total_demand_bps)
       << "\n";
    os << "network,bond_capacity_bps,"
       << format_g(r.net.capacity.bond_capacity_bps) << "\n";
    os << "network,bond_utilization," << format_g(r.net.capacity.bond_utilization)
       << "\n";
    os << "network,overloaded_links," << r.net.capacity.overloaded.size()
       << "\n";
    os << "network,disk_headroom," << format_g(r.net.headroom.disk_headroom)
       << "\n";
    os << "network,uplink_headroom,"
       << format_g(r.net.headroom.uplink_headroom) << "\n";
    os << "network,ptp_grandmaster," << r.net.ptp.grandmaster << "\n";
    os << "network,ptp_findings," << r.net.ptp.findings.size() << "\n";
    os << "network,poe_draw_w," << format_g(r.net.poe_draw_w) << "\n";
  }
  os << "power,nominal_net_w," << format_g(r.power.nominal_net_w) << "\n";
  os << "power,nominal_runtime_h,"
     << (r.power.nominal_runtime_h == kIndefinite
             ? "indefinite"
             : format_g(r.power.nominal_runtime_h))
     << "\n";
  os << "power,peak_net_w," << format_g(r.power.peak_net_w) << "\n";
  os << "power,peak_runtime_h,"
     << (r.power.peak_runtime_h == kIndefinite
             ? "indefinite"
             : format_g(r.power.peak_runtime_h))
     << "\n";
  os << "power,shore_indefinite_at_peak,"
     << (r.power.shore_indefinite_at_peak ? 1 : 0) << "\n";
  os << "report,ok," << (r.ok() ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace rigkit
