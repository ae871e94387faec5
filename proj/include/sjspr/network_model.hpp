#pragma once

// The space-air-ground graph: ground topology, DA2G base stations, a single
// LEO relay abstraction, and per-time-slot snapshots that add one node per
// active flight and wire its uplinks.
//
// A snapshot is immutable after construction. Bidirectional links are
// realized as two directed arcs carrying the full link bandwidth each.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/geo.hpp"
#include "sjspr/log.hpp"

namespace sjspr {

enum class NodeKind {
    Ground,
    Datacenter,
    Da2gStation,
    SatelliteRelay,
    SatelliteGateway,
    FlightPosition,
};

inline const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Ground: return "ground";
        case NodeKind::Datacenter: return "dc";
        case NodeKind::Da2gStation: return "station";
        case NodeKind::SatelliteRelay: return "relay";
        case NodeKind::SatelliteGateway: return "gateway";
        case NodeKind::FlightPosition: return "flight";
    }
    return "?";
}

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Ground;
    std::optional<GeoPoint> position;  // absent only for the abstract relay
    double dc_capacity_cores = 0.0;    // only meaningful for Datacenter

    bool is_ground_side() const {
        return kind == NodeKind::Ground || kind == NodeKind::Datacenter ||
               kind == NodeKind::SatelliteGateway;
    }
};

struct LinkAttrs {
    double cost = 0.0;            // per-slot usage cost of the link
    double delay_ms = 0.0;        // propagation delay
    double bandwidth_mbps = 0.0;  // capacity per direction

    void validate(const std::string& where) const {
        if (!std::isfinite(cost) || cost < 0.0)
            throw InputError(where + ": link cost must be finite and >= 0");
        if (!std::isfinite(delay_ms) || delay_ms < 0.0)
            throw InputError(where + ": link delay must be finite and >= 0");
        if (!std::isfinite(bandwidth_mbps) || bandwidth_mbps <= 0.0)
            throw InputError(where + ": link bandwidth must be finite and > 0");
    }
};

struct GroundLink {
    std::string u, v;
    LinkAttrs attrs;
    bool delay_from_length = false;  // delay computed from node distance
};

// Static terrestrial part of the graph: ground/DC/gateway nodes plus fiber
// links. Loaded from a "node ... / link ..." structured text file.
struct GroundTopology {
    std::vector<Node> nodes;       // sorted by id
    std::vector<GroundLink> links;

    const Node* find(const std::string& id) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const Node& n, const std::string& key) { return n.id < key; });
        if (it == nodes.end() || it->id != id) return nullptr;
        return &*it;
    }

    std::vector<std::string> dc_ids() const {
        std::vector<std::string> out;
        for (const auto& n : nodes)
            if (n.kind == NodeKind::Datacenter) out.push_back(n.id);
        return out;
    }

    std::vector<std::string> gateway_ids() const {
        std::vector<std::string> out;
        for (const auto& n : nodes)
            if (n.kind == NodeKind::SatelliteGateway) out.push_back(n.id);
        return out;
    }
};

struct Station {
    std::string id;
    GeoPoint position;
};

using StationList = std::vector<Station>;

// Attribute defaults for the LEO abstraction. The end-to-end satellite
// figures are carried entirely by the flight->relay arc; relay->gateway
// arcs are free and instantaneous by default (both splits configurable).
struct SatelliteConfig {
    std::string relay_id = "sat-relay";
    double bandwidth_mbps = 50.0;
    double uplink_delay_ms = 50.0;
    double downlink_delay_ms = 0.0;
    double uplink_cost = 130.0;
    double downlink_cost = 0.0;
};

struct Da2gConfig {
    double bandwidth_mbps = 75.0;
    double delay_ms = 10.0;
    double cost = 83.0;
    double visibility_km = 350.0;
};

// Station->ground attachment arcs: free, instantaneous, effectively
// uncapacitated (default sized by the scenario builder at 10x peak demand).
struct AttachConfig {
    double bandwidth_mbps = 10000.0;
    double delay_ms = 0.0;
    double cost = 0.0;
};

struct Arc {
    int u = -1, v = -1;  // node indices within the snapshot
    LinkAttrs attrs;
};

class SaginSnapshot {
  public:
    int slot = 0;
    std::vector<Node> nodes;  // sorted by id
    std::vector<Arc> arcs;    // sorted by (u,v); each arc has its reverse

    int node_index(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw InputError("unknown node id: " + id);
        return it->second;
    }

    bool has_node(const std::string& id) const { return index_.count(id) > 0; }

    const std::vector<int>& out_arc_ids(int node) const { return out_[check(node)]; }
    const std::vector<int>& in_arc_ids(int node) const { return in_[check(node)]; }

    const std::vector<int>& dc_node_indices() const { return dcs_; }

    // Adjacency as (u,v) id pairs, deterministically ordered by node id.
    std::vector<std::pair<std::string, std::string>> out_arcs(const std::string& id) const {
        std::vector<std::pair<std::string, std::string>> res;
        for (int a : out_[node_index(id)]) res.emplace_back(nodes[arcs[a].u].id, nodes[arcs[a].v].id);
        return res;
    }

    std::vector<std::pair<std::string, std::string>> in_arcs(const std::string& id) const {
        std::vector<std::pair<std::string, std::string>> res;
        for (int a : in_[node_index(id)]) res.emplace_back(nodes[arcs[a].u].id, nodes[arcs[a].v].id);
        return res;
    }

    // Builds index structures; nodes must already be unique. Arcs are given
    // as undirected links and materialized as two directed arcs each.
    static SaginSnapshot from_links(int slot, std::vector<Node> nodes,
                                    const std::vector<std::tuple<std::string, std::string, LinkAttrs>>& links) {
        SaginSnapshot s;
        s.slot = slot;
        std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
        for (size_t i = 0; i + 1 < nodes.size(); ++i)
            if (nodes[i].id == nodes[i + 1].id)
                throw InputError("duplicate node id in snapshot: " + nodes[i].id);
        s.nodes = std::move(nodes);
        for (size_t i = 0; i < s.nodes.size(); ++i) s.index_[s.nodes[i].id] = static_cast<int>(i);

        for (const auto& [uid, vid, attrs] : links) {
            attrs.validate("link " + uid + "-" + vid);
            const int u = s.node_index(uid), v = s.node_index(vid);
            if (u == v) throw InputError("self-loop link at node " + uid);
            s.arcs.push_back(Arc{u, v, attrs});
            s.arcs.push_back(Arc{v, u, attrs});
        }
        std::sort(s.arcs.begin(), s.arcs.end(), [](const Arc& a, const Arc& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (size_t i = 0; i + 1 < s.arcs.size(); ++i)
            if (s.arcs[i].u == s.arcs[i + 1].u && s.arcs[i].v == s.arcs[i + 1].v)
                throw InputError("duplicate link between " + s.nodes[s.arcs[i].u].id + " and " +
                                 s.nodes[s.arcs[i].v].id);

        s.out_.assign(s.nodes.size(), {});
        s.in_.assign(s.nodes.size(), {});
        for (size_t a = 0; a < s.arcs.size(); ++a) {
            s.out_[s.arcs[a].u].push_back(static_cast<int>(a));
            s.in_[s.arcs[a].v].push_back(static_cast<int>(a));
        }
        // out_ is already sorted by peer id because arcs are sorted by (u,v)
        // and node index order equals id order; sort in_ by source id.
        for (auto& lst : s.in_)
            std::sort(lst.begin(), lst.end(),
                      [&s](int a, int b) { return s.arcs[a].u < s.arcs[b].u; });
        for (size_t i = 0; i < s.nodes.size(); ++i)
            if (s.nodes[i].kind == NodeKind::Datacenter) s.dcs_.push_back(static_cast<int>(i));
        return s;
    }

  private:
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> dcs_;

    int check(int node) const {
        if (node < 0 || node >= static_cast<int>(nodes.size()))
            throw InputError("node index out of range");
        return node;
    }
};

inline std::vector<std::pair<std::string, std::string>> out_arcs(const SaginSnapshot& s,
                                                                 const std::string& id) {
    return s.out_arcs(id);
}

inline std::vector<std::pair<std::string, std::string>> in_arcs(const SaginSnapshot& s,
                                                                const std::string& id) {
    return s.in_arcs(id);
}

namespace detail {

inline void check_connected(const std::vector<Node>& nodes, const std::vector<GroundLink>& links) {
    if (nodes.empty()) throw InputError("topology has no nodes");
    std::map<std::string, int> idx;
    for (size_t i = 0; i < nodes.size(); ++i) idx[nodes[i].id] = static_cast<int>(i);
    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& l : links) {
        adj[idx.at(l.u)].push_back(idx.at(l.v));
        adj[idx.at(l.v)].push_back(idx.at(l.u));
    }
    std::vector<char> seen(nodes.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
    }
    if (reached != nodes.size()) {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (!seen[i]) throw InputError("topology is disconnected: node " + nodes[i].id +
                                           " is unreachable");
    }
}

}  // namespace detail

// Parses the ground topology structured text format:
//   node <id> <lat> <lon> [dc <capacity_cores>] [gateway]
//   link <u> <v> <bandwidth_mbps> <cost> [<delay_ms>]
// Missing link delay is computed from the great-circle distance between the
// endpoints at fiber propagation speed. '#' starts a comment.
inline GroundTopology parse_ground_topology(const std::string& text) {
    GroundTopology topo;
    std::set<std::string> ids;
    std::vector<std::string> lines = split(text, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string where = "topology line " + std::to_string(ln + 1);
        if (toks[0] == "node") {
            if (toks.size() < 4) throw InputError(where + ": node needs <id> <lat> <lon>");
            Node n;
            n.id = toks[1];
            const double lat = parse_double(toks[2], where + " lat");
            const double lon = parse_double(toks[3], where + " lon");
            if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0)
                throw InputError(where + ": coordinates out of range");
            n.position = GeoPoint(lat, lon);
            size_t i = 4;
            while (i < toks.size()) {
                if (toks[i] == "dc") {
                    if (i + 1 >= toks.size()) throw InputError(where + ": dc needs a capacity");
                    n.kind = NodeKind::Datacenter;
                    n.dc_capacity_cores = parse_double(toks[i + 1], where + " dc capacity");
                    if (n.dc_capacity_cores <= 0.0)
                        throw InputError(where + ": dc capacity must be > 0");
                    i += 2;
                } else if (toks[i] == "gateway") {
                    if (n.kind == NodeKind::Datacenter)
                        throw InputError(where + ": a node cannot be both dc and gateway");
                    n.kind = NodeKind::SatelliteGateway;
                    i += 1;
                } else {
                    throw InputError(where + ": unknown token '" + toks[i] + "'");
                }
            }
            if (!ids.insert(n.id).second) throw InputError(where + ": duplicate node id " + n.id);
            topo.nodes.push_back(std::move(n));
        } else if (toks[0] == "link") {
            if (toks.size() < 5 || toks.size() > 6)
                throw InputError(where + ": link needs <u> <v> <bandwidth> <cost> [delay_ms]");
            GroundLink l;
            l.u = toks[1];
            l.v = toks[2];
            l.attrs.bandwidth_mbps = parse_double(toks[3], where + " bandwidth");
            l.attrs.cost = parse_double(toks[4], where + " cost");
            if (toks.size() == 6) {
                l.attrs.delay_ms = parse_double(toks[5], where + " delay");
            } else {
                l.delay_from_length = true;
            }
            topo.links.push_back(std::move(l));
        } else {
            throw InputError(where + ": unknown record '" + toks[0] + "'");
        }
    }
    if (topo.nodes.empty()) throw InputError("topology has no nodes");
    std::sort(topo.nodes.begin(), topo.nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (auto& l : topo.links) {
        const Node* u = topo.find(l.u);
        const Node* v = topo.find(l.v);
        if (!u) throw InputError("link references unknown node " + l.u);
        if (!v) throw InputError("link references unknown node " + l.v);
        if (l.delay_from_length)
            l.attrs.delay_ms = fiber_delay_ms(great_circle_km(*u->position, *v->position));
        l.attrs.validate("link " + l.u + "-" + l.v);
    }
    detail::check_connected(topo.nodes, topo.links);
    return topo;
}

inline GroundTopology load_ground_topology(const std::string& path) {
    try {
        return parse_ground_topology(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// Station list CSV: header "station_id,lat,lon".
inline StationList parse_stations(const std::string& text) {
    StationList out;
    auto lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]) != "station_id,lat,lon")
        throw InputError("station list must start with header 'station_id,lat,lon'");
    std::set<std::string> ids;
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        const std::string line = trim(lines[ln]);
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 3)
            throw InputError("station list line " + std::to_string(ln + 1) + ": need 3 fields");
        const double lat = parse_double(trim(f[1]), "station lat");
        const double lon = parse_double(trim(f[2]), "station lon");
        if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0)
            throw InputError("station list line " + std::to_string(ln + 1) +
                             ": coordinates out of range");
        Station s{trim(f[0]), GeoPoint(lat, lon)};
        if (s.id.empty()) throw InputError("station list: empty station id");
        if (!ids.insert(s.id).second) throw InputError("duplicate station id " + s.id);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Station& a, const Station& b) { return a.id < b.id; });
    return out;
}

inline StationList load_stations(const std::string& path) {
    try {
        return parse_stations(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// Builds the slot-t snapshot: ground topology + every station attached to
// its nearest ground node + the single satellite relay wired to all
// gateways + one node per active flight. Each flight gets a satellite
// uplink unconditionally and a DA2G arc to the nearest non-congested
// station within visibility range, if any.
//
// congestion_mask is indexed like `stations` (true = congested at t).
inline SaginSnapshot build_snapshot(const GroundTopology& topology, const StationList& stations,
                                    const SatelliteConfig& satellite, const Da2gConfig& da2g,
                                    const std::vector<std::pair<std::string, GeoPoint>>& flights_at_t,
                                    const std::vector<uint8_t>& congestion_mask, int slot = 0,
                                    const AttachConfig& attach = {}) {
    if (topology.nodes.empty()) throw InputError("build_snapshot: empty topology");
    if (!congestion_mask.empty() && congestion_mask.size() != stations.size())
        throw InputError("build_snapshot: congestion mask size differs from station count");
    const auto gateways = topology.gateway_ids();
    if (gateways.empty()) throw InputError("build_snapshot: no satellite gateway defined");

    std::vector<Node> nodes = topology.nodes;
    std::vector<std::tuple<std::string, std::string, LinkAttrs>> links;
    for (const auto& l : topology.links) links.emplace_back(l.u, l.v, l.attrs);

    // stations, each attached to the nearest ground node (ties: lowest id)
    const LinkAttrs attach_attrs{attach.cost, attach.delay_ms, attach.bandwidth_mbps};
    for (const auto& st : stations) {
        if (topology.find(st.id) != nullptr)
            throw InputError("station id collides with topology node: " + st.id);
        nodes.push_back(Node{st.id, NodeKind::Da2gStation, st.position, 0.0});
        const Node* best = nullptr;
        double best_km = 0.0;
        for (const auto& n : topology.nodes) {
            const double km = great_circle_km(st.position, *n.position);
            if (!best || km < best_km) {
                best = &n;
                best_km = km;
            }
        }
        links.emplace_back(st.id, best->id, attach_attrs);
    }

    // the single LEO relay, wired to every gateway
    nodes.push_back(Node{satellite.relay_id, NodeKind::SatelliteRelay, std::nullopt, 0.0});
    const LinkAttrs down{satellite.downlink_cost, satellite.downlink_delay_ms,
                         satellite.bandwidth_mbps};
    for (const auto& g : gateways) links.emplace_back(satellite.relay_id, g, down);

    // flight nodes with their uplinks
    const LinkAttrs up{satellite.uplink_cost, satellite.uplink_delay_ms, satellite.bandwidth_mbps};
    const LinkAttrs da2g_attrs{da2g.cost, da2g.delay_ms, da2g.bandwidth_mbps};
    for (const auto& [fid, pos] : flights_at_t) {
        nodes.push_back(Node{fid, NodeKind::FlightPosition, pos, 0.0});
        links.emplace_back(fid, satellite.relay_id, up);
        const Station* best = nullptr;
        double best_km = 0.0;
        for (size_t i = 0; i < stations.size(); ++i) {
            if (!congestion_mask.empty() && congestion_mask[i]) continue;
            const double km = great_circle_km(pos, stations[i].position);
            if (km > da2g.visibility_km) continue;
            if (!best || km < best_km) {
                best = &stations[i];
                best_km = km;
            }
        }
        if (best) links.emplace_back(fid, best->id, da2g_attrs);
    }

    SaginSnapshot snap = SaginSnapshot::from_links(slot, std::move(nodes), links);

    // every flight must reach a datacenter
    if (snap.dc_node_indices().empty()) throw InputError("build_snapshot: topology has no datacenter");
    for (const auto& [fid, pos] : flights_at_t) {
        (void)pos;
        std::vector<char> seen(snap.nodes.size(), 0);
        std::queue<int> q;
        const int start = snap.node_index(fid);
        q.push(start);
        seen[start] = 1;
        bool found = false;
        while (!q.empty() && !found) {
            const int u = q.front();
            q.pop();
            if (snap.nodes[u].kind == NodeKind::Datacenter) {
                found = true;
                break;
            }
            for (int a : snap.out_arc_ids(u)) {
                const int v = snap.arcs[a].v;
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        if (!found)
            throw InfeasibleError("flight " + fid + " cannot reach any datacenter at slot " +
                                  std::to_string(slot));
    }
    return snap;
}

}  // namespace sjspr
