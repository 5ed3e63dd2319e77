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

// rigkit command line front end.
//
// Exit codes: 0 = all checks pass, 1 = a domain check failed (coverage gap,
// link overload, PTP finding, battery depletion, validation error), 2 = usage
// or parse error. Machine-readable outputs carry no timestamps.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rigkit/coverage.hpp"
#include "rigkit/netplan.hpp"
#include "rigkit/powerplan.hpp"
#include "rigkit/report.hpp"
#include "rigkit/rig_io.hpp"
#include "rigkit/twin.hpp"
#include "rigkit/validate.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

#ifndef RIGKIT_BUNDLED_CONFIG
#define RIGKIT_BUNDLED_CONFIG ""
#endif

std::string default_rig_path() {
  if (const char* env = std::getenv("RIGKIT_RIG"); env && *env) return env;
  const std::string local = "configs/cocar-nextgen.json";
  if (std::filesystem::exists(local)) return local;
  return RIGKIT_BUNDLED_CONFIG;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw rigkit::ParseError("IO", path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

rigkit::RigSpec load_rig(const std::string& rig_arg) {
  std::string path = rig_arg.empty() ? default_rig_path() : rig_arg;
  if (path.empty())
    throw rigkit::ParseError("IO", "",
                             "no rig file given and no bundled config found");
  return rigkit::parse_rig(read_file(path));
}

std::optional<rigkit::Modality> parse_group(const std::string& group) {
  if (group == "all") return std::nullopt;
  return rigkit::modality_from_string(group);  // throws on unknown
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_validate(const std::string& rig_file) {
  const rigkit::RigSpec rig = load_rig(rig_file);
  const rigkit::ValidationReport report = rigkit::validate_rig(rig);
  std::cout << report.to_text();
  return report.accepted() ? kExitPass : kExitCheckFailed;
}

int cmd_coverage(const std::string& rig_file, const std::string& group,
                 double height_m, double extent_m, double cell_m,
                 double radius_m, double step_deg, int threads,
                 const std::string& out_prefix) {
  if (!(cell_m > 0.0) || !(extent_m > cell_m) || !(radius_m > 0.0) ||
      !(step_deg > 0.0))
    throw rigkit::ParseError("USAGE", "",
                             "need extent_m > cell_m > 0, radius_m > 0, "
                             "step_deg > 0");
  const rigkit::RigSpec rig = load_rig(rig_file);
  const auto modality = parse_group(group);

  const rigkit::CoverageGrid grid = rigkit::coverage_grid(
      rig, modality, height_m, extent_m, cell_m, threads);
  const rigkit::AzimuthalCoverage az = rigkit::azimuthal_coverage(
      rig, modality, radius_m, height_m, rigkit::deg2rad(step_deg));
  const rigkit::CoverageSummary summary =
      rigkit::blind_spot_area(grid, std::min(radius_m, extent_m));

  {
    std::ofstream pgm(out_prefix + ".pgm", std::ios::binary);
    rigkit::write_pgm(grid, pgm);
    std::ofstream csv(out_prefix + ".csv");
    rigkit::write_grid_csv(grid, csv);
    std::ofstream txt(out_prefix + ".txt");
    txt << rigkit::summary_text(summary);
  }

  std::cout << "group: " << group << "\n";
  std::cout << rigkit::summary_text(summary);
  std::cout << "azimuthal_fraction: " << rigkit::format_g(az.fraction)
            << " at radius " << rigkit::format_g(radius_m) << " m\n";
  for (const auto& [a, b] : az.gaps)
    std::cout << "gap: [" << rigkit::format_g(rigkit::rad2deg(a)) << ", "
              << rigkit::format_g(rigkit::rad2deg(b)) << ") deg\n";
  std::cout << "wrote " << out_prefix << ".pgm/.csv/.txt\n";
  return az.covered == az.samples ? kExitPass : kExitCheckFailed;
}

int cmd_netcheck(const std::string& rig_file) {
  const rigkit::RigSpec rig = load_rig(rig_file);
  const rigkit::ValidationReport validation = rigkit::validate_rig(rig);
  if (!validation.accepted()) {
    std::cout << validation.to_text();
    return kExitCheckFailed;
  }
  const rigkit::NetCheck check = rigkit::run_netcheck(rig);
  std::cout << rigkit::netcheck_text(check);
  return check.ok() ? kExitPass : kExitCheckFailed;
}

rigkit::LoadProfile default_profile(const rigkit::RigSpec& rig) {
  rigkit::ProfileSegment seg;
  seg.duration_s = 3600.0;
  if (!rig.power.switch_groups.empty()) {
    for (const auto& g : rig.power.switch_groups)
      if (g.default_on) seg.groups_on.push_back(g.id);
  } else {
    for (const auto& l : rig.power.loads) seg.groups_on.push_back(l.group);
  }
  return {{seg}};
}

int cmd_powersim(const std::string& rig_file, const std::string& profile_file,
                 double dt_s, const std::string& out_csv) {
  if (!(dt_s > 0.0))
    throw rigkit::ParseError("USAGE", "", "dt_s must be > 0");
  const rigkit::RigSpec rig = load_rig(rig_file);
  const rigkit::LoadProfile profile =
      profile_file.empty() ? default_profile(rig)
                           : rigkit::parse_profile(read_file(profile_file));

  rigkit::SocTrace trace;
  try {
    trace = rigkit::simulate_soc(rig.power, profile, dt_s);
  } catch (const std::invalid_argument& e) {
    // e.g. a profile segment referencing an unknown switch group
    std::cerr << "powersim: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!out_csv.empty()) {
    std::ofstream csv(out_csv);
    csv << rigkit::trace_csv(trace);
    std::cout << "wrote " << out_csv << "\n";
  }
  std::cout << rigkit::soc_summary_text(rig.power, trace);
  return trace.depleted ? kExitCheckFailed : kExitPass;
}

int cmd_report(const std::string& rig_file, const std::string& format,
               bool no_timestamp, const rigkit::ReportOptions& opt) {
  const rigkit::RigSpec rig = load_rig(rig_file);
  const rigkit::RigReport report = rigkit::build_report(rig, opt);
  if (format == "csv")
    std::cout << rigkit::report_csv(report);
  else
    std::cout << rigkit::report_text(report, opt,
                                     no_timestamp ? "" : utc_timestamp());
  return report.ok() ? kExitPass : kExitCheckFailed;
}

int cmd_export_twin(const std::string& rig_file, const std::string& out) {
  const rigkit::RigSpec rig = load_rig(rig_file);
  std::string twin;
  try {
    twin = rigkit::export_twin(rig);
  } catch (const std::invalid_argument& e) {
    std::cerr << "export-twin: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  if (out.empty()) {
    std::cout << twin;
  } else {
    std::ofstream f(out, std::ios::binary);
    f << twin;
    std::cout << "wrote " << out << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-sensor rig design checks: coverage, network, power"};
  app.require_subcommand(1);

  std::string rig_file;
  app.add_option("--rig", rig_file, "rig document (default: bundled config)");

  auto* validate = app.add_subcommand("validate", "parse and validate a rig");
  validate->add_option("rig", rig_file, "rig document");

  auto* coverage =
      app.add_subcommand("coverage", "ground-level coverage and blind spots");
  std::string group = "all";
  double height_m = 1.0, extent_m = 30.0, cell_m = 0.1, radius_m = 10.0,
         step_deg = 0.5;
  int threads = 1;
  std::string out_prefix = "coverage";
  coverage->add_option("rig", rig_file, "rig document");
  coverage->add_option("--group", group,
                       "modality group or 'all' (default all)");
  coverage->add_option("--height_m", height_m, "query plane height");
  coverage->add_option("--extent_m", extent_m, "grid half-extent");
  coverage->add_option("--cell_m", cell_m, "grid cell size");
  coverage->add_option("--radius_m", radius_m, "azimuthal test radius");
  coverage->add_option("--step_deg", step_deg, "azimuthal sample step");
  coverage->add_option("--threads", threads, "worker threads for the grid");
  coverage->add_option("--out", out_prefix, "output file prefix");

  auto* netcheck =
      app.add_subcommand("netcheck", "bandwidth, VLAN and PTP checks");
  netcheck->add_option("rig", rig_file, "rig document");

  auto* powersim =
      app.add_subcommand("powersim", "battery state-of-charge simulation");
  std::string profile_file, out_csv;
  double dt_s = 1.0;
  powersim->add_option("rig", rig_file, "rig document");
  powersim->add_option("--profile", profile_file,
                       "load profile (default: nominal groups, 1 h)");
  powersim->add_option("--dt_s", dt_s, "integration step");
  powersim->add_option("--out", out_csv, "trace CSV path");

  auto* report = app.add_subcommand("report", "consolidated design report");
  std::string format = "text";
  bool no_timestamp = false;
  rigkit::ReportOptions opt;
  report->add_option("rig", rig_file, "rig document");
  report->add_option("--format", format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));
  report->add_flag("--no-timestamp", no_timestamp,
                   "omit the generated-at header line");
  report->add_option("--radius_m", opt.radius_m, "azimuthal test radius");
  report->add_option("--height_m", opt.height_m, "query plane height");
  report->add_option("--step_deg", opt.step_deg, "azimuthal sample step");
  report->add_option("--extent_m", opt.extent_m, "grid half-extent");
  report->add_option("--cell_m", opt.cell_m, "grid cell size");
  report->add_option("--threads", opt.threads, "worker threads");

  auto* export_twin =
      app.add_subcommand("export-twin", "emit the digital twin bundle");
  std::string twin_out;
  export_twin->add_option("rig", rig_file, "rig document");
  export_twin->add_option("--out", twin_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(rig_file);
    if (coverage->parsed())
      return cmd_coverage(rig_file, group, height_m, extent_m, cell_m,
                          radius_m, step_deg, threads, out_prefix);
    if (netcheck->parsed()) return cmd_netcheck(rig_file);
    if (powersim->parsed())
      return cmd_powersim(rig_file, profile_file, dt_s, out_csv);
    if (report->parsed()) return cmd_report(rig_file, format, no_timestamp, opt);
    if (export_twin->parsed()) return cmd_export_twin(rig_file, twin_out);
  } catch (const rigkit::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const rigkit::ConfigError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
