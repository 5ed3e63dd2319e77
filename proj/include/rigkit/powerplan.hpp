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

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rigkit/rig.hpp"
#include "rigkit/rig_io.hpp"

namespace rigkit {

// Battery / rails / sources model. Loads are piecewise constant, switched in
// named groups; the state of charge is therefore piecewise linear and the
// integrator reproduces the analytic solution at segment boundaries.
//
// Rail names are free-form except "ac230", which is the inverter-fed AC rail
// and the only one the shore pass-through can bypass.

using PowerSystem = PowerConfig;
using SwitchStates = std::map<std::string, bool>;

struct SourceStates {
  bool boosters = false;
  double shore_charger_w = 0.0;      // requested; clamped to system max
  double shore_passthrough_w = 0.0;  // requested; clamped to system max

  bool operator==(const SourceStates&) const = default;
};

inline constexpr const char* kAcRail = "ac230";

namespace power_detail {

inline std::set<std::string> known_groups(const PowerSystem& sys) {
  std::set<std::string> groups;
  for (const auto& g : sys.switch_groups) groups.insert(g.id);
  for (const auto& l : sys.loads) groups.insert(l.group);
  return groups;
}

}  // namespace power_detail

/// Battery-side power balance in watts, positive = discharge. AC loads are
/// served by the shore pass-through first, the remainder through the inverter
/// from the battery; DC loads go through their rail converters. Boosters and
/// the shore charger subtract from the discharge (the result may be negative;
/// integration clamps the state of charge at capacity).
inline double net_battery_power(const PowerSystem& sys,
                                const SwitchStates& switch_states,
                                const SourceStates& sources = {}) {
  const auto known = power_detail::known_groups(sys);
  for (const auto& [group, _] : switch_states)
    if (!known.count(group))
      throw std::invalid_argument("unknown switch group: " + group);

  auto group_on = [&](const std::string& g) {
    auto it = switch_states.find(g);
    return it != switch_states.end() && it->second;
  };

  double ac_draw = 0.0;
  double battery_w = 0.0;
  for (const auto& load : sys.loads) {
    if (!group_on(load.group)) continue;
    if (load.rail == kAcRail) {
      ac_draw += load.draw_w;
      continue;
    }
    auto it = sys.rails.find(load.rail);
    if (it == sys.rails.end())
      throw std::invalid_argument("load '" + load.name + "' on unknown rail '" +
                                  load.rail + "'");
    battery_w += load.draw_w / it->second;
  }

  const double passthrough = std::min(
      std::max(sources.shore_passthrough_w, 0.0),
      sys.sources.shore_ac_passthrough_max_w);
  const double ac_remainder = std::max(0.0, ac_draw - passthrough);
  if (ac_remainder > 0.0) {
    auto it = sys.rails.find(kAcRail);
    if (it == sys.rails.end())
      throw std::invalid_argument("AC load but no '" + std::string(kAcRail) +
                                  "' rail configured");
    battery_w += ac_remainder / it->second;
  }

  if (sources.boosters)
    battery_w -= sys.sources.boosters.count * sys.sources.boosters.unit_w;
  battery_w -= std::min(std::max(sources.shore_charger_w, 0.0),
                        sys.sources.shore_charger_max_w);
  return battery_w;
}

inline constexpr double kIndefinite = std::numeric_limits<double>::infinity();

/// Hours until the battery empties under a constant battery-side load, exact
/// closed form. Sources active in `sources` offset the load; a non-positive
/// net discharge yields the infinite-runtime marker.
inline double runtime_to_empty(const PowerSystem& sys, double constant_load_w,
                               const SourceStates& sources = {}) {
  double net = constant_load_w;
  if (sources.boosters)
    net -= sys.sources.boosters.count * sys.sources.boosters.unit_w;
  net -= std::min(std::max(sources.shore_charger_w, 0.0),
                  sys.sources.shore_charger_max_w);
  if (net <= 0.0) return kIndefinite;
  return sys.battery.capacity_wh / net;
}

/// True iff the system holds or gains charge under the given states.
inline bool indefinite_operation(const PowerSystem& sys,
                                 const SwitchStates& switch_states,
                                 const SourceStates& sources = {}) {
  return net_battery_power(sys, switch_states, sources) <= 0.0;
}

struct ProfileSegment {
  double duration_s = 0.0;
  std::vector<std::string> groups_on;
  bool boosters = false;
  double shore_charger_w = 0.0;
  double shore_passthrough_w = 0.0;
};

struct LoadProfile {
  std::vector<ProfileSegment> segments;
};

inline LoadProfile parse_profile(const std::string& text) {
  using nlohmann::json;
  using namespace io_detail;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("SYNTAX", "", e.what());
  }
  check_object(doc, "$");
  check_keys(doc, "$", {"segments"});
  const json& segs = require(doc, "segments", "$");
  if (!segs.is_array())
    throw ParseError("TYPE", "$.segments", "expected an array");
  LoadProfile profile;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string path = "$.segments[" + std::to_string(i) + "]";
    const json& sj = segs[i];
    check_object(sj, path);
    check_keys(sj, path,
               {"duration_s", "groups_on", "boosters", "shore_charger_w",
                "shore_passthrough_w"});
    ProfileSegment seg;
    seg.duration_s =
        as_nonnegative(require(sj, "duration_s", path), path + ".duration_s");
    if (!(seg.duration_s > 0))
      throw ParseError("UNIT", path + ".duration_s",
                       "segment duration must be positive");
    if (const json* p = find(sj, "groups_on")) {
      if (!p->is_array())
        throw ParseError("TYPE", path + ".groups_on", "expected an array");
      for (std::size_t k = 0; k < p->size(); ++k)
        seg.groups_on.push_back(as_string(
            (*p)[k], path + ".groups_on[" + std::to_string(k) + "]"));
    }
    seg.boosters = opt_bool(sj, "boosters", false, path);
    seg.shore_charger_w = opt_nonnegative(sj, "shore_charger_w", 0.0, path);
    seg.shore_passthrough_w =
        opt_nonnegative(sj, "shore_passthrough_w", 0.0, path);
    profile.segments.push_back(seg);
  }
  return profile;
}

struct SocEvent {
  double t_s = 0.0;
  std::string kind;  // "depleted" | "source_toggle"
  std::string detail;
};

struct SocSample {
  double t_s = 0.0;
  double soc_wh = 0.0;
  double net_w = 0.0;
};

struct SocTrace {
  std::vector<SocSample> samples;
  std::vector<SocEvent> events;
  bool depleted = false;
  double final_net_w = 0.0;

  double final_soc_wh() const {
    return samples.empty() ? 0.0 : samples.back().soc_wh;
  }
  double end_time_s() const {
    return samples.empty() ? 0.0 : samples.back().t_s;
  }
};

/// Integrates the state of charge over a piecewise-constant profile. Within a
/// segment the SoC is evaluated from the segment anchor (not accumulated), so
/// boundary samples equal the analytic piecewise-linear solution. Depletion
/// truncates the simulation; full charge re-anchors at capacity.
inline SocTrace simulate_soc(const PowerSystem& sys, const LoadProfile& profile,
                             double dt_s,
                             std::optional<double> initial_soc_wh = {}) {
  if (!(dt_s > 0)) throw std::invalid_argument("simulate_soc: dt must be > 0");
  const double cap = sys.battery.capacity_wh;
  double soc = std::min(std::max(initial_soc_wh.value_or(cap), 0.0), cap);

  SocTrace trace;
  double t = 0.0;
  SourceStates prev_sources;
  bool first = true;
  for (const auto& seg : profile.segments) {
    SwitchStates states;
    for (const auto& g : seg.groups_on) states[g] = true;
    const SourceStates sources{seg.boosters, seg.shore_charger_w,
                               seg.shore_passthrough_w};
    const double net = net_battery_power(sys, states, sources);
    trace.final_net_w = net;
    if (first) {
      trace.samples.push_back({t, soc, net});
      first = false;
    } else if (!(sources == prev_sources)) {
      trace.events.push_back({t, "source_toggle", ""});
    }
    prev_sources = sources;

    double anchor_t = t;
    double anchor_soc = soc;
    const long steps = static_cast<long>(std::ceil(seg.duration_s / dt_s));
    for (long k = 1; k <= steps; ++k) {
      const double offset = std::min(k * dt_s, seg.duration_s);
      const double tk = t + offset;
      double sk = anchor_soc - net * (tk - anchor_t) / 3600.0;
      if (net > 0.0 && sk <= 0.0) {
        const double t_empty = anchor_t + anchor_soc * 3600.0 / net;
        trace.samples.push_back({t_empty, 0.0, net});
        trace.events.push_back({t_empty, "depleted", ""});
        trace.depleted = true;
        return trace;
      }
      if (net < 0.0 && sk >= cap) {
        anchor_t = anchor_t - (cap - anchor_soc) * 3600.0 / net;
        anchor_soc = cap;
        sk = cap;
      }
      trace.samples.push_back({tk, sk, net});
      soc = sk;
    }
    t += seg.duration_s;
  }
  return trace;
}

inline std::string trace_csv(const SocTrace& trace) {
  std::ostringstream os;
  os << "t_s,soc_wh,net_w\n";
  char buf[96];
  for (const auto& s : trace.samples) {
    std::snprintf(buf, sizeof(buf), "%.3f,%.6f,%.6f\n", s.t_s, s.soc_wh,
                  s.net_w);
    os << buf;
  }
  return os.str();
}

inline std::string soc_summary_text(const PowerSystem& sys,
                                    const SocTrace& trace) {
  std::ostringstream os;
  char buf[96];
  os << "final_soc_wh: " << trace.final_soc_wh() << "\n";
  os << "final_net_w: " << trace.final_net_w << "\n";
  if (trace.depleted) {
    std::snprintf(buf, sizeof(buf), "depleted_at_s: %.3f\n",
                  trace.end_time_s());
    os << buf;
  }
  if (trace.final_net_w > 0.0) {
    std::snprintf(buf, sizeof(buf), "runtime_from_full_h: %.3f\n",
                  sys.battery.capacity_wh / trace.final_net_w);
    os << buf;
    std::snprintf(buf, sizeof(buf), "time_to_empty_from_final_h: %.3f\n",
                  trace.final_soc_wh() / trace.final_net_w);
    os << buf;
  } else {
    os << "runtime_from_full_h: indefinite\n";
    os << "time_to_empty_from_final_h: indefinite\n";
  }
  return os.str();
}

}  // namespace rigkit
