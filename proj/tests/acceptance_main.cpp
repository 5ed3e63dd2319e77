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

// Acceptance suite. Each criterion prints exactly one PASS/FAIL line; the
// process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rigkit/coverage.hpp"
#include "rigkit/netplan.hpp"
#include "rigkit/powerplan.hpp"
#include "rigkit/report.hpp"
#include "rigkit/rig_io.hpp"
#include "support/coverage_oracle.hpp"
#include "support/rig_builders.hpp"

using namespace rigkit;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RigSpec load_bundled() { return parse_rig(read_file(RIGKIT_BUNDLED_CONFIG)); }

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

// ---------------------------------------------------------------------------
// 1. every modality group keeps a full 360 degree ring at 10 m

Check criterion_surround_coverage() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const RigSpec rig = load_bundled();
  const Modality groups[] = {Modality::lidar_mid_range,
                             Modality::lidar_long_range, Modality::lidar_4d,
                             Modality::camera};
  for (Modality m : groups) {
    const AzimuthalCoverage az =
        azimuthal_coverage(rig, m, 10.0, 1.0, deg2rad(0.5));
    c.expect(az.fraction == 1.0,
             std::string(to_string(m)) + " fraction " +
                 std::to_string(az.fraction));
    c.expect(az.gaps.empty(), std::string(to_string(m)) + " has gaps");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(secs < 5.0, "took " + std::to_string(secs) + " s (limit 5)");
  return c;
}

// ---------------------------------------------------------------------------
// 2. network budget: 40 Gbit/s bond, 20 Gbit/s demand, 1.67 disk headroom

Check criterion_network_budget() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  const RigSpec rig = load_bundled();
  const NetCheck check = run_netcheck(rig);
  c.expect(check.capacity.bond_capacity_bps == 40e9,
           "bond capacity " + std::to_string(check.capacity.bond_capacity_bps));
  c.expect(check.total_demand_bps == 20e9,
           "aggregate demand " + std::to_string(check.total_demand_bps));
  c.expect(std::abs(check.headroom.disk_headroom - 1.67) <= 0.01,
           "disk headroom " + std::to_string(check.headroom.disk_headroom));
  c.expect(check.capacity.overloaded.empty(), "overloaded links present");
  c.expect(check.ptp.ok(), "ptp findings present");
  c.expect(check.ptp.grandmaster == "gnss_ins",
           "grandmaster is '" + check.ptp.grandmaster + "'");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(secs < 1.0, "took " + std::to_string(secs) + " s (limit 1)");
  return c;
}

// ---------------------------------------------------------------------------
// 3. power runtimes from the published figures

Check criterion_power_runtimes() {
  Check c;
  PowerSystem sys;
  sys.battery.capacity_wh = 10000.0;
  sys.rails = default_rails();
  sys.sources.shore_charger_max_w = 3000.0;

  const double regular = runtime_to_empty(sys, 1300.0);
  c.expect(std::abs(regular - 7.692) <= 0.001,
           "runtime(1.3 kW) = " + std::to_string(regular));
  const double stress = runtime_to_empty(sys, 2300.0);
  c.expect(std::abs(stress - 4.348) <= 0.001,
           "runtime(2.3 kW) = " + std::to_string(stress));

  sys.loads.push_back({"full", "dc24", 2300.0, "all"});
  c.expect(indefinite_operation(sys, {{"all", true}}, {false, 3000.0, 0.0}),
           "not indefinite with 3 kW shore at 2.3 kW");
  return c;
}

// ---------------------------------------------------------------------------
// 4. randomized rigs match the brute-force oracle exactly

Check criterion_oracle_equivalence() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260809);
  std::uniform_real_distribution<double> uh(0.0, 1.5);
  int mismatches = 0;
  const int kRigs = 1000;
  for (int i = 0; i < kRigs; ++i) {
    const RigSpec rig = testsup::random_rig(rng, 4, 3);
    const double h = uh(rng);
    const CoverageGrid got = coverage_grid(rig, std::nullopt, h, 1.6, 0.1);
    const oracle::GridResult want =
        oracle::coverage_grid(rig, std::nullopt, h, 1.6, 0.1);
    bool same = got.width == want.n && got.height == want.n;
    if (same) {
      for (std::size_t k = 0; k < got.cells.size(); ++k) {
        if (got.cells[k] != want.cells[k] ||
            (got.interior[k] != 0) != (want.interior[k] != 0)) {
          same = false;
          break;
        }
      }
    }
    if (!same) ++mismatches;
  }
  c.expect(mismatches == 0,
           std::to_string(mismatches) + "/" + std::to_string(kRigs) +
               " grids differ from the oracle");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(secs < 30.0, "took " + std::to_string(secs) + " s (limit 30)");
  return c;
}

// ---------------------------------------------------------------------------
// 5. property suites

Check criterion_properties() {
  Check c;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  // coverage monotonicity: adding a sensor never shrinks any covering set
  for (int i = 0; i < 500; ++i) {
    RigSpec rig = testsup::random_rig(rng, 4, 2);
    const double h = 1.5 * u01(rng);
    const CoverageGrid full = coverage_grid(rig, std::nullopt, h, 0.8, 0.1);
    RigSpec fewer = rig;
    fewer.sensors.pop_back();
    const CoverageGrid part = coverage_grid(fewer, std::nullopt, h, 0.8, 0.1);
    for (std::size_t idx = 0; idx < full.cells.size() && c.ok; ++idx) {
      std::set<std::string> big;
      for (auto k : full.cells[idx]) big.insert(full.sensor_ids[k]);
      for (auto k : part.cells[idx])
        if (!big.count(part.sensor_ids[k]))
          c.expect(false, "monotonicity violated at case " + std::to_string(i));
    }
    if (!c.ok) break;
  }

  // mirror symmetry, exact
  for (int i = 0; i < 500 && c.ok; ++i) {
    const RigSpec rig = testsup::random_rig(rng, 3, 2);
    const RigSpec mir = testsup::mirror_rig(rig);
    const double h = 1.5 * u01(rng);
    const CoverageGrid a = coverage_grid(rig, std::nullopt, h, 0.8, 0.1);
    const CoverageGrid b = coverage_grid(mir, std::nullopt, h, 0.8, 0.1);
    for (int iy = 0; iy < a.height && c.ok; ++iy)
      for (int ix = 0; ix < a.width; ++ix)
        if (a.cells[a.index(ix, iy)] !=
            b.cells[b.index(ix, a.height - 1 - iy)]) {
          c.expect(false, "mirror symmetry broken at case " + std::to_string(i));
          break;
        }
  }

  // flow conservation and hash stability
  {
    RigSpec rig = testsup::minimal_rig();
    for (int i = 0; i < 24; ++i) {
      auto s = testsup::make_sensor("dev" + std::to_string(i),
                                    Modality::camera, {0, 0, 1}, 0, 120, 90, 50);
      s.resolution = Resolution{Resolution::Kind::pixels, 0, 640, 480};
      s.net_demand_bps = 1e8 + 1e7 * i;
      rig.sensors.push_back(s);
    }
    const NetTopology topo = build_topology(rig);
    std::map<std::string, double> demands, reversed;
    const auto ids = topo.device_ids();
    for (const auto& id : ids) demands[id] = 2e8;
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) reversed[*it] = 2e8;
    const FlowAssignment a = assign_flows(topo, demands);
    const FlowAssignment b = assign_flows(topo, reversed);
    c.expect(a.link_loads == b.link_loads, "hash not order-stable");

    double in = 0, out = 0;
    for (const auto& l : topo.links) {
      if (l.a != "switch" && l.b != "switch") continue;
      const std::string other = l.a == "switch" ? l.b : l.a;
      auto it = a.link_loads.find(l.id);
      const double load = it == a.link_loads.end() ? 0.0 : it->second;
      (other == "server" ? out : in) += load;
    }
    c.expect(std::abs(in - out) < 1e-6, "flow not conserved at the switch");
  }

  // VLAN isolation symmetry
  {
    const NetTopology topo = build_topology(load_bundled());
    auto nodes = topo.device_ids();
    nodes.push_back("server");
    nodes.push_back("router");
    for (const auto& x : nodes)
      for (const auto& y : nodes)
        if (vlan_reachable(topo, x, y) != vlan_reachable(topo, y, x))
          c.expect(false, "vlan reachability asymmetric for " + x + "," + y);
  }

  // SoC energy balance vs the analytic piecewise-linear solution
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    PowerSystem sys;
    sys.battery.capacity_wh = 20000.0;
    sys.rails = default_rails();
    const int n_loads = 1 + static_cast<int>(rng() % 4);
    static const char* rails[] = {"dc24", "dc12", "ac230"};
    for (int i = 0; i < n_loads; ++i)
      sys.loads.push_back({"l" + std::to_string(i), rails[rng() % 3],
                           50.0 + 350.0 * u01(rng), "g" + std::to_string(i)});
    LoadProfile profile;
    const int n_segs = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n_segs; ++k) {
      ProfileSegment seg;
      seg.duration_s = 200.0 + 2500.0 * u01(rng);
      for (int i = 0; i < n_loads; ++i)
        if (u01(rng) < 0.6) seg.groups_on.push_back("g" + std::to_string(i));
      profile.segments.push_back(seg);
    }
    const SocTrace trace = simulate_soc(sys, profile, 0.5 + 2.0 * u01(rng));
    if (trace.depleted) continue;
    double expected = sys.battery.capacity_wh;
    for (const auto& seg : profile.segments) {
      SwitchStates st;
      for (const auto& g : seg.groups_on) st[g] = true;
      expected -= net_battery_power(sys, st) * seg.duration_s / 3600.0;
    }
    const double rel =
        std::abs(trace.final_soc_wh() - expected) / sys.battery.capacity_wh;
    if (rel >= 1e-9)
      c.expect(false, "soc relative error " + std::to_string(rel));
  }

  // projection round-trip
  {
    const Sensor cam = testsup::make_camera("cam", {1.2, -0.4, 1.6}, 35.0,
                                            120.0, 90.0, 2590, 2048, 200.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int tested = 0;
    while (tested < 500) {
      const Vec3 p{u(rng) * 50, u(rng) * 50, u(rng) * 20};
      const auto px = project_point(cam, p);
      if (!px) continue;
      ++tested;
      const Vec3 v = cam.orientation().apply_transposed(p - cam.position);
      const Vec3 back = unproject_pixel(cam, *px, v.x);
      if (norm(back - p) >= 1e-9) {
        c.expect(false, "projection round-trip error " +
                            std::to_string(norm(back - p)));
        break;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 6. deterministic machine-readable report

Check criterion_determinism() {
  Check c;
  auto run = [&](const std::string& extra) {
    const std::string cmd = std::string(RIGKIT_CLI) + " report " +
                            RIGKIT_BUNDLED_CONFIG +
                            " --format csv --extent_m 8 --cell_m 0.1 " + extra +
                            " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::string("<popen failed>");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
  };
  const std::string first = run("--threads 1");
  c.expect(first.find("report,ok,1") != std::string::npos,
           "bundled report does not pass");
  for (int i = 1; i < 5; ++i)
    c.expect(run("--threads 1") == first,
             "run " + std::to_string(i) + " differs");
  for (int t : {2, 4, 8})
    c.expect(run("--threads " + std::to_string(t)) == first,
             "thread count " + std::to_string(t) + " differs");
  return c;
}

struct Criterion {
  const char* name;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"per-modality 360 degree coverage at 10 m", criterion_surround_coverage},
      {"network budget: 40G bond, 20G demand, 1.67 disk headroom",
       criterion_network_budget},
      {"battery runtimes 7.692 h / 4.348 h and shore indefinite",
       criterion_power_runtimes},
      {"1000 randomized rigs equal the brute-force oracle",
       criterion_oracle_equivalence},
      {"property suites (coverage, flows, vlan, soc, projection)",
       criterion_properties},
      {"report csv byte-identical across runs and thread counts",
       criterion_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    if (!result.ok) ++failures;
    std::printf("[%s] criterion %zu: %s%s%s\n", result.ok ? "PASS" : "FAIL",
                i + 1, criteria[i].name, result.detail.empty() ? "" : " -- ",
                result.detail.c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
