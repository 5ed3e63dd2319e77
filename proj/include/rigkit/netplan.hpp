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
#include <cstdio>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rigkit/rig.hpp"
#include "rigkit/validate.hpp"

namespace rigkit {

// On-board network model: a single managed switch, devices fanning in over
// 1 Gbit/s links (media converters where the device speaks automotive
// ethernet), the compute server on a tagged LACP bond, one VLAN per
// modality, and a GNSS-disciplined grandmaster clock.

enum class NodeRole { device, switch_, server, router, converter };

inline const char* to_string(NodeRole r) {
  switch (r) {
    case NodeRole::device: return "device";
    case NodeRole::switch_: return "switch";
    case NodeRole::server: return "server";
    case NodeRole::router: return "router";
    case NodeRole::converter: return "converter";
  }
  return "?";
}

struct NetNode {
  std::string id;
  NodeRole role = NodeRole::device;
  std::string vlan;     // empty when the node has no VLAN membership
  bool trunk = false;   // attaches via tagged port(s), sees every VLAN
  bool time_sensitive = false;
  double poe_draw_w = 0.0;
};

struct NetLink {
  std::string id;
  std::string a;
  std::string b;
  double capacity_bps = 1e9;
  bool poe = false;
};

struct BondGroup {
  std::string owner;                    // node terminating the aggregate
  std::vector<std::string> member_ids;  // link ids
};

struct NetTopology {
  std::vector<NetNode> nodes;
  std::vector<NetLink> links;
  std::vector<BondGroup> bonds;
  std::map<std::string, std::vector<std::string>> vlans;  // vlan -> devices
  std::vector<std::string> grandmasters;
  std::map<std::string, int> device_ports;

  const NetNode* find_node(const std::string& id) const {
    for (const auto& n : nodes)
      if (n.id == id) return &n;
    return nullptr;
  }
  const NetLink* find_link(const std::string& id) const {
    for (const auto& l : links)
      if (l.id == id) return &l;
    return nullptr;
  }
  std::vector<std::string> device_ids() const {
    std::vector<std::string> out;
    for (const auto& n : nodes)
      if (n.role == NodeRole::device) out.push_back(n.id);
    return out;
  }
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Expands a rig into the concrete device/switch/server graph. Explicit port
/// assignments are honored; remaining connected devices and the router take
/// the lowest free ports. Throws ConfigError{CONFIG_PORTS_EXCEEDED} when the
/// switch runs out.
inline NetTopology build_topology(const RigSpec& rig) {
  NetTopology topo;
  topo.nodes.push_back({"switch", NodeRole::switch_, "", true, false, 0.0});
  topo.nodes.push_back({"server", NodeRole::server, "", true, false, 0.0});
  topo.nodes.push_back({"router", NodeRole::router, "uplink", false, false, 0.0});

  std::vector<const Sensor*> devices;
  for (const auto& s : rig.sensors)
    if (!s.unconnected) devices.push_back(&s);

  const int ports_needed = static_cast<int>(devices.size()) + 1;  // + router
  if (ports_needed > rig.network.switch_.ports)
    throw ConfigError("CONFIG_PORTS_EXCEEDED",
                      std::to_string(devices.size()) +
                          " devices plus router exceed the " +
                          std::to_string(rig.network.switch_.ports) +
                          "-port switch");

  std::set<int> taken;
  for (const auto* s : devices)
    if (s->port) taken.insert(*s->port);
  if (rig.network.router.port) taken.insert(*rig.network.router.port);
  int next_free = 1;
  auto take_free = [&]() {
    while (taken.count(next_free)) ++next_free;
    taken.insert(next_free);
    return next_free;
  };

  for (const auto* s : devices) {
    NetNode node{s->id, NodeRole::device, to_string(s->modality), false,
                 s->time_sensitive, s->poe_draw_w};
    topo.nodes.push_back(node);
    topo.device_ports[s->id] = s->port ? *s->port : take_free();
    topo.vlans[to_string(s->modality)].push_back(s->id);

    if (s->automotive_ethernet) {
      const std::string conv = "conv:" + s->id;
      topo.nodes.push_back(
          {conv, NodeRole::converter, to_string(s->modality), false, false, 0.0});
      topo.links.push_back({"link:" + s->id + "--" + conv, s->id, conv,
                            rig.network.device_link_bps, false});
      topo.links.push_back({"link:" + conv + "--switch", conv, "switch",
                            rig.network.device_link_bps, false});
    } else {
      topo.links.push_back({"link:" + s->id + "--switch", s->id, "switch",
                            rig.network.device_link_bps, s->poe});
    }
    if (s->modality == Modality::gnss) topo.grandmasters.push_back(s->id);
  }
  for (auto& [vlan, members] : topo.vlans) std::sort(members.begin(), members.end());

  BondGroup bond;
  bond.owner = "server";
  for (int k = 0; k < rig.network.server_bond.members; ++k) {
    const std::string id = "bond:m" + std::to_string(k);
    topo.links.push_back(
        {id, "switch", "server", rig.network.server_bond.member_bps, false});
    bond.member_ids.push_back(id);
  }
  topo.bonds.push_back(bond);

  topo.links.push_back({"link:router--switch", "router", "switch",
                        rig.network.device_link_bps, false});
  topo.device_ports["router"] =
      rig.network.router.port ? *rig.network.router.port : take_free();
  return topo;
}

struct Flow {
  std::string device;
  double demand_bps = 0.0;
  std::vector<std::string> path;  // link ids, device side first
  std::string bond_member;
};

struct FlowAssignment {
  std::vector<Flow> flows;                  // sorted by device id
  std::map<std::string, double> link_loads;  // link id -> bit/s
};

/// Routes every demanded device's flow device -> switch -> server. The bond
/// member is picked by the device id's lexicographic rank among all devices,
/// modulo the member count: deterministic, order-independent, and honest
/// about the LACP property that one flow never spans members.
inline FlowAssignment assign_flows(const NetTopology& topo,
                                   const std::map<std::string, double>& demands) {
  if (topo.bonds.empty() || topo.bonds[0].member_ids.empty())
    throw std::invalid_argument("assign_flows: topology lacks a server bond");
  const auto& members = topo.bonds[0].member_ids;

  std::vector<std::string> all_devices = topo.device_ids();
  std::sort(all_devices.begin(), all_devices.end());
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < all_devices.size(); ++i) rank[all_devices[i]] = i;

  // device -> links toward the switch (1 hop, or 2 through a converter)
  auto uplinks = [&](const std::string& dev) {
    std::vector<std::string> path;
    std::set<std::string> visited{dev};
    std::string cur = dev;
    while (cur != "switch") {
      const NetLink* next = nullptr;
      const std::string* ahead = nullptr;
      for (const auto& l : topo.links) {
        const std::string* other =
            l.a == cur ? &l.b : (l.b == cur ? &l.a : nullptr);
        if (other && !visited.count(*other)) {
          next = &l;
          ahead = other;
          break;
        }
      }
      if (!next) throw std::invalid_argument("assign_flows: no path for " + dev);
      path.push_back(next->id);
      cur = *ahead;
      visited.insert(cur);
    }
    return path;
  };

  FlowAssignment out;
  for (const auto& [dev, demand] : demands) {
    auto it = rank.find(dev);
    if (it == rank.end())
      throw std::invalid_argument("assign_flows: unknown device " + dev);
    Flow f;
    f.device = dev;
    f.demand_bps = demand;
    f.path = uplinks(dev);
    f.bond_member = members[it->second % members.size()];
    f.path.push_back(f.bond_member);
    for (const auto& link : f.path) out.link_loads[link] += demand;
    out.flows.push_back(std::move(f));
  }
  return out;
}

struct LinkUtilization {
  std::string link;
  double load_bps = 0.0;
  double capacity_bps = 0.0;
  double utilization = 0.0;
};

struct CapacityReport {
  std::vector<LinkUtilization> links;     // topology order
  std::vector<std::string> overloaded;    // utilization > 1
  double bond_load_bps = 0.0;
  double bond_capacity_bps = 0.0;
  double bond_utilization = 0.0;
};

inline CapacityReport check_capacity(const FlowAssignment& assignment,
                                     const NetTopology& topo) {
  CapacityReport report;
  for (const auto& link : topo.links) {
    LinkUtilization u;
    u.link = link.id;
    u.capacity_bps = link.capacity_bps;
    auto it = assignment.link_loads.find(link.id);
    u.load_bps = it == assignment.link_loads.end() ? 0.0 : it->second;
    u.utilization = u.capacity_bps > 0 ? u.load_bps / u.capacity_bps : 0.0;
    if (u.utilization > 1.0) report.overloaded.push_back(link.id);
    report.links.push_back(u);
  }
  if (!topo.bonds.empty()) {
    for (const auto& m : topo.bonds[0].member_ids) {
      if (const NetLink* l = topo.find_link(m))
        report.bond_capacity_bps += l->capacity_bps;
      auto it = assignment.link_loads.find(m);
      if (it != assignment.link_loads.end()) report.bond_load_bps += it->second;
    }
    if (report.bond_capacity_bps > 0)
      report.bond_utilization = report.bond_load_bps / report.bond_capacity_bps;
  }
  return report;
}

/// Two nodes can talk iff they share a VLAN or either side attaches via a
/// tagged trunk (the server, and the switch itself).
inline bool vlan_reachable(const NetTopology& topo, const std::string& a,
                           const std::string& b) {
  const NetNode* na = topo.find_node(a);
  const NetNode* nb = topo.find_node(b);
  if (!na || !nb)
    throw std::invalid_argument("vlan_reachable: unknown node");
  if (a == b) return true;
  if (na->trunk || nb->trunk) return true;
  return !na->vlan.empty() && na->vlan == nb->vlan;
}

struct PtpReport {
  std::vector<Finding> findings;
  std::map<std::string, int> depths;  // device -> sync hops beyond the server
  std::string grandmaster;

  bool ok() const { return findings.empty(); }
};

/// Structural checks on the time-sync hierarchy: one grandmaster, the server
/// can reach it, and every time-sensitive device can be served. Media
/// converters are physical-layer devices and add no sync depth.
inline PtpReport validate_ptp(const NetTopology& topo) {
  PtpReport report;
  if (topo.grandmasters.empty())
    report.findings.push_back(
        {"PTP_NO_GM", "no grandmaster clock in the topology", "$"});
  else if (topo.grandmasters.size() > 1)
    report.findings.push_back(
        {"PTP_MULTIPLE_GM",
         "expected exactly one grandmaster, found " +
             std::to_string(topo.grandmasters.size()),
         "$"});
  if (!topo.grandmasters.empty()) report.grandmaster = topo.grandmasters[0];

  // Physical adjacency.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& l : topo.links) {
    adj[l.a].push_back(l.b);
    adj[l.b].push_back(l.a);
  }
  std::map<std::string, int> depth;
  std::deque<std::string> queue;
  depth["server"] = 0;
  queue.push_back("server");
  while (!queue.empty()) {
    const std::string cur = queue.front();
    queue.pop_front();
    for (const auto& next : adj[cur]) {
      if (depth.count(next)) continue;
      const NetNode* n = topo.find_node(next);
      const bool transparent = n && n->role == NodeRole::converter;
      depth[next] = depth[cur] + (transparent ? 0 : 1);
      queue.push_back(next);
    }
  }

  if (!report.grandmaster.empty()) {
    const bool physically = depth.count(report.grandmaster) > 0;
    if (!physically || !vlan_reachable(topo, report.grandmaster, "server"))
      report.findings.push_back(
          {"PTP_GM_UNREACHABLE",
           "server cannot reach grandmaster '" + report.grandmaster + "'",
           report.grandmaster});
  }

  for (const auto& node : topo.nodes) {
    if (node.role != NodeRole::device) continue;
    if (depth.count(node.id)) report.depths[node.id] = depth[node.id];
    if (!node.time_sensitive) continue;
    if (!depth.count(node.id) || !vlan_reachable(topo, node.id, "server"))
      report.findings.push_back(
          {"PTP_UNREACHABLE",
           "time-sensitive device '" + node.id +
               "' has no synchronizable path to the server",
           node.id});
  }
  return report;
}

struct HeadroomReport {
  double disk_headroom = 0.0;
  double uplink_headroom = 0.0;

  bool pass() const { return disk_headroom >= 1.0 && uplink_headroom >= 1.0; }
};

/// Recording feasibility: measured disk write bandwidth and bond capacity
/// against the aggregate sensor demand.
inline HeadroomReport recording_headroom(double total_demand_bps,
                                         double disk_bw_bps,
                                         double uplink_capacity_bps) {
  if (!(total_demand_bps > 0) || !(disk_bw_bps > 0) ||
      !(uplink_capacity_bps > 0))
    throw std::invalid_argument("recording_headroom: arguments must be > 0");
  return {disk_bw_bps / total_demand_bps,
          uplink_capacity_bps / total_demand_bps};
}

// --- consolidated check ------------------------------------------------------

struct NetCheck {
  NetTopology topology;
  FlowAssignment assignment;
  CapacityReport capacity;
  PtpReport ptp;
  HeadroomReport headroom;
  double total_demand_bps = 0.0;
  double poe_draw_w = 0.0;
  double poe_budget_w = 0.0;

  bool poe_ok() const { return poe_draw_w <= poe_budget_w; }
  bool ok() const {
    return capacity.overloaded.empty() && ptp.ok() && headroom.pass() &&
           poe_ok();
  }
};

inline NetCheck run_netcheck(const RigSpec& rig) {
  NetCheck check;
  check.topology = build_topology(rig);
  std::map<std::string, double> demands;
  for (const auto& s : rig.sensors) {
    if (s.unconnected) continue;
    demands[s.id] = s.net_demand_bps.value_or(0.0);
    check.total_demand_bps += demands[s.id];
    check.poe_draw_w += s.poe ? s.poe_draw_w : 0.0;
  }
  check.assignment = assign_flows(check.topology, demands);
  check.capacity = check_capacity(check.assignment, check.topology);
  check.ptp = validate_ptp(check.topology);
  check.headroom = recording_headroom(
      std::max(check.total_demand_bps, 1.0), rig.network.disk_write_bps,
      check.capacity.bond_capacity_bps);
  check.poe_budget_w = rig.network.switch_.poe_budget_w;
  return check;
}

inline std::string netcheck_text(const NetCheck& c) {
  std::ostringstream os;
  char buf[160];
  os << "link utilization\n";
  for (const auto& u : c.capacity.links) {
    std::snprintf(buf, sizeof(buf), "  %-42s %12.0f / %12.0f  %6.3f%s\n",
                  u.link.c_str(), u.load_bps, u.capacity_bps, u.utilization,
                  u.utilization > 1.0 ? "  OVERLOAD" : "");
    os << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "bond aggregate: %.0f / %.0f bit/s (utilization %.3f)\n",
                c.capacity.bond_load_bps, c.capacity.bond_capacity_bps,
                c.capacity.bond_utilization);
  os << buf;

  os << "vlans\n";
  for (const auto& [vlan, members] : c.topology.vlans)
    os << "  " << vlan << ": " << members.size() << " device(s)\n";
  os << "vlan reachability (x = can talk)\n   ";
  for (const auto& [vlan, _] : c.topology.vlans)
    os << " " << vlan.substr(0, 9);
  os << " server\n";
  for (const auto& [va, ma] : c.topology.vlans) {
    os << "  " << va << ":";
    for (const auto& [vb, mb] : c.topology.vlans)
      os << (va == vb ? " x" : " .");
    os << " x\n";  // every VLAN reaches the trunked server
  }

  os << "ptp\n";
  if (!c.ptp.grandmaster.empty())
    os << "  grandmaster: " << c.ptp.grandmaster << "\n";
  int max_depth = 0;
  for (const auto& [dev, d] : c.ptp.depths) max_depth = std::max(max_depth, d);
  os << "  max sync depth beyond server: " << max_depth << "\n";
  for (const auto& f : c.ptp.findings)
    os << "  finding " << f.code << ": " << f.message << "\n";

  std::snprintf(buf, sizeof(buf), "poe: %.1f / %.1f W%s\n", c.poe_draw_w,
                c.poe_budget_w, c.poe_ok() ? "" : "  EXCEEDED");
  os << buf;
  std::snprintf(buf, sizeof(buf),
                "recording: demand %.0f bit/s, disk headroom %.3f, uplink "
                "headroom %.3f\n",
                c.total_demand_bps, c.headroom.disk_headroom,
                c.headroom.uplink_headroom);
  os << buf;
  os << "netcheck: " << (c.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace rigkit
