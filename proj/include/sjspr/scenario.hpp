#pragma once

// Scenario assembly: flight tracks, the service catalog, per-slot request
// sets, congestion sampling, and per-slot network snapshots.
//
// A Scenario is immutable once built and fully determined by
// (config, seed); serialization is byte-stable so reruns can be diffed.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/geo.hpp"
#include "sjspr/network_model.hpp"

namespace sjspr {

struct ServiceType {
    std::string id;
    double user_bandwidth_mbps = 0.0;      // per-user demand
    double bandwidth_mbps = 0.0;           // aggregated request size (filled at build)
    double max_delay_ms = 0.0;
    double instance_cost = 0.0;            // deployment cost per instance per slot
    double instance_size_cores = 0.0;
    double instance_capacity_mbps = 0.0;   // serving capacity of one instance
    double migration_cost = 0.0;           // per migration (filled at build from delta)

    void validate() const {
        if (id.empty()) throw InputError("service type without id");
        if (user_bandwidth_mbps <= 0.0 || max_delay_ms <= 0.0 || instance_cost <= 0.0 ||
            instance_size_cores <= 0.0 || instance_capacity_mbps <= 0.0)
            throw InputError("service " + id + ": all parameters must be positive");
    }
};

struct FlightTrack {
    std::string id;
    int first_slot = 0;
    std::vector<GeoPoint> positions;  // one per active slot, size tau+1

    int tau() const { return static_cast<int>(positions.size()) - 1; }
    int last_slot() const { return first_slot + tau(); }
    bool active_at(int t) const { return t >= first_slot && t <= last_slot(); }
    const GeoPoint& position_at(int t) const { return positions.at(t - first_slot); }
    std::string node_id_at(int t) const { return id + "@t" + std::to_string(t); }
};

struct ServiceRequest {
    std::string id;
    std::string src_node;      // flight position node in the same slot's snapshot
    int service = -1;          // index into the scenario catalog
    double bandwidth_mbps = 0.0;
    double max_delay_ms = 0.0;
};

// Weighted migration cost: delta in [0,1] scales the sum of the ground
// link cost and the instance deployment cost.
inline double migration_cost_of(double delta, double ground_link_cost, double instance_cost) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw InputError("delta must lie in [0,1], got " + fmt_g10(delta));
    return delta * (ground_link_cost + instance_cost);
}

// Independent Bernoulli(probability) draw per (station, slot), slot-major,
// deterministic for a given seed. Result is mask[slot][station].
inline std::vector<std::vector<uint8_t>> sample_congestion(size_t n_stations, int horizon_slots,
                                                           double probability, std::uint64_t seed) {
    if (!(probability >= 0.0 && probability <= 1.0))
        throw InputError("congestion probability must lie in [0,1]");
    Rng rng(seed);
    std::vector<std::vector<uint8_t>> mask(static_cast<size_t>(horizon_slots),
                                           std::vector<uint8_t>(n_stations, 0));
    for (int t = 0; t < horizon_slots; ++t)
        for (size_t s = 0; s < n_stations; ++s)
            mask[t][s] = rng.bernoulli(probability) ? 1 : 0;
    return mask;
}

// Fraction of observations strictly exceeding the capacity threshold.
inline double congestion_probability_from_counts(const std::vector<long>& flight_counts,
                                                 long capacity_threshold) {
    if (flight_counts.empty()) throw InputError("empty flight count histogram");
    if (capacity_threshold < 1) throw InputError("capacity threshold must be >= 1");
    long over = 0;
    for (long c : flight_counts)
        if (c > capacity_threshold) ++over;
    return static_cast<double>(over) / static_cast<double>(flight_counts.size());
}

// flights.csv loader. Header: flight_id,slot,lat,lon. Slots must be
// contiguous per flight. Tracks come back sorted by flight id.
inline std::vector<FlightTrack> parse_flights_csv(const std::string& text) {
    auto lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]) != "flight_id,slot,lat,lon")
        throw InputError("flights csv must start with header 'flight_id,slot,lat,lon'");
    std::map<std::string, std::vector<std::pair<int, GeoPoint>>> rows;
    for (size_t ln = 1; ln < lines.size(); ++ln) {
        const std::string line = trim(lines[ln]);
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 4)
            throw InputError("flights csv line " + std::to_string(ln + 1) + ": need 4 fields");
        const std::string fid = trim(f[0]);
        if (fid.empty()) throw InputError("flights csv line " + std::to_string(ln + 1) +
                                          ": empty flight id");
        const long slot = parse_long(trim(f[1]), "flight slot");
        if (slot < 0) throw InputError("flights csv line " + std::to_string(ln + 1) +
                                       ": negative slot");
        const double lat = parse_double(trim(f[2]), "flight lat");
        const double lon = parse_double(trim(f[3]), "flight lon");
        if (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon > 180.0)
            throw InputError("flights csv line " + std::to_string(ln + 1) +
                             ": coordinates out of range");
        rows[fid].emplace_back(static_cast<int>(slot), GeoPoint(lat, lon));
    }
    std::vector<FlightTrack> tracks;
    for (auto& [fid, pts] : rows) {
        std::sort(pts.begin(), pts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        FlightTrack tr;
        tr.id = fid;
        tr.first_slot = pts.front().first;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i > 0 && pts[i].first != pts[i - 1].first + 1)
                throw InputError("flight " + fid + ": non-contiguous slots " +
                                 std::to_string(pts[i - 1].first) + " -> " +
                                 std::to_string(pts[i].first));
            tr.positions.push_back(pts[i].second);
        }
        if (tr.tau() < 1)
            throw InputError("flight " + fid + ": needs at least two slot positions");
        tracks.push_back(std::move(tr));
    }
    return tracks;  // std::map iteration is already id-sorted
}

inline std::vector<FlightTrack> load_flights(const std::string& path) {
    try {
        return parse_flights_csv(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

// One aggregated request per service type per active slot of the track:
// ceil(passengers * usage_fraction / |catalog|) users per type, each at the
// type's per-user bandwidth. Returned as requests[i] for slot
// track.first_slot + i.
inline std::vector<std::vector<ServiceRequest>> generate_requests(const FlightTrack& track,
                                                                  const std::vector<ServiceType>& services,
                                                                  long passengers,
                                                                  double usage_fraction) {
    if (services.empty()) throw InputError("generate_requests: empty service catalog");
    if (passengers <= 0) throw InputError("generate_requests: passengers must be > 0");
    if (!(usage_fraction > 0.0 && usage_fraction <= 1.0))
        throw InputError("generate_requests: usage_fraction must lie in (0,1]");
    const long users = static_cast<long>(
        std::ceil(static_cast<double>(passengers) * usage_fraction / static_cast<double>(services.size())));
    if (users <= 0) throw InputError("generate_requests: degenerate workload (0 users per service)");

    std::vector<std::vector<ServiceRequest>> out(track.positions.size());
    for (size_t i = 0; i < track.positions.size(); ++i) {
        const int t = track.first_slot + static_cast<int>(i);
        for (size_t k = 0; k < services.size(); ++k) {
            ServiceRequest r;
            r.id = track.id + ":t" + std::to_string(t) + ":" + services[k].id;
            r.src_node = track.node_id_at(t);
            r.service = static_cast<int>(k);
            r.bandwidth_mbps = static_cast<double>(users) * services[k].user_bandwidth_mbps;
            r.max_delay_ms = services[k].max_delay_ms;
            out[i].push_back(std::move(r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// scenario config

struct ScenarioConfig {
    // horizon
    int horizon_slots = 0;  // 0 = cover all flight tracks
    double slot_minutes = 30.0;

    // input files (resolved relative to the config file location)
    std::string topology_path;
    std::string stations_path;
    std::string flights_path;  // empty when synthetic flights are used
    int synthetic_flights = 0;
    int synthetic_tau = 3;
    int synthetic_first_slot = 0;
    double synthetic_speed_kmh = 900.0;

    // workload
    long passengers = 150;
    double usage_fraction = 0.2;
    bool per_user_requests = false;

    // link attributes / visibility
    Da2gConfig da2g;
    SatelliteConfig satellite;
    double attach_bandwidth_mbps = 0.0;  // 0 = auto: 10x peak slot demand
    double ground_cost = 60.0;           // ground link cost used by the migration cost function

    // congestion
    double congestion_probability = 0.19714;
    long congestion_threshold_flights = 9;

    // optimization weighting
    double delta = 0.5;
    std::uint64_t seed = 42;

    std::vector<ServiceType> services;  // empty = default video + voip catalog
};

inline std::vector<ServiceType> default_service_catalog() {
    ServiceType video;
    video.id = "video";
    video.user_bandwidth_mbps = 1.5;
    video.max_delay_ms = 300.0;
    video.instance_cost = 229.0;
    video.instance_size_cores = 8.0;
    video.instance_capacity_mbps = 100.0;
    ServiceType voip;
    voip.id = "voip";
    voip.user_bandwidth_mbps = 0.064;
    voip.max_delay_ms = 100.0;
    voip.instance_cost = 229.0;
    voip.instance_size_cores = 8.0;
    voip.instance_capacity_mbps = 100.0;
    return {video, voip};
}

namespace detail {

inline std::string resolve_path(const std::string& base_dir, const std::string& p) {
    namespace fs = std::filesystem;
    if (p.empty() || fs::path(p).is_absolute() || base_dir.empty()) return p;
    return (fs::path(base_dir) / p).string();
}

}  // namespace detail

// Parses the "key = value" config text. Unknown keys are rejected.
// Service catalog entries use dotted keys: service.<id>.<field> = <value>.
inline ScenarioConfig parse_scenario_config(const std::string& text, const std::string& base_dir = "") {
    ScenarioConfig cfg;
    std::map<std::string, std::map<std::string, double>> service_fields;
    std::vector<std::string> service_order;

    auto lines = split(text, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(ln + 1) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw InputError("config line " + std::to_string(ln + 1) + ": empty key or value");

        if (key.rfind("service.", 0) == 0) {
            auto parts = split(key, '.');
            if (parts.size() != 3)
                throw InputError("config line " + std::to_string(ln + 1) +
                                 ": service keys look like service.<id>.<field>");
            if (!service_fields.count(parts[1])) service_order.push_back(parts[1]);
            service_fields[parts[1]][parts[2]] = parse_double(val, key);
            continue;
        }

        if (key == "horizon_slots") cfg.horizon_slots = static_cast<int>(parse_long(val, key));
        else if (key == "slot_minutes") cfg.slot_minutes = parse_double(val, key);
        else if (key == "topology") cfg.topology_path = detail::resolve_path(base_dir, val);
        else if (key == "stations") cfg.stations_path = detail::resolve_path(base_dir, val);
        else if (key == "flights_csv") cfg.flights_path = detail::resolve_path(base_dir, val);
        else if (key == "synthetic_flights") cfg.synthetic_flights = static_cast<int>(parse_long(val, key));
        else if (key == "synthetic_tau") cfg.synthetic_tau = static_cast<int>(parse_long(val, key));
        else if (key == "synthetic_first_slot") cfg.synthetic_first_slot = static_cast<int>(parse_long(val, key));
        else if (key == "synthetic_speed_kmh") cfg.synthetic_speed_kmh = parse_double(val, key);
        else if (key == "passengers") cfg.passengers = parse_long(val, key);
        else if (key == "usage_fraction") cfg.usage_fraction = parse_double(val, key);
        else if (key == "per_user_requests") cfg.per_user_requests = (val == "true" || val == "1");
        else if (key == "da2g_bandwidth_mbps") cfg.da2g.bandwidth_mbps = parse_double(val, key);
        else if (key == "da2g_delay_ms") cfg.da2g.delay_ms = parse_double(val, key);
        else if (key == "da2g_cost") cfg.da2g.cost = parse_double(val, key);
        else if (key == "visibility_km") cfg.da2g.visibility_km = parse_double(val, key);
        else if (key == "sat_bandwidth_mbps") cfg.satellite.bandwidth_mbps = parse_double(val, key);
        else if (key == "sat_uplink_delay_ms") cfg.satellite.uplink_delay_ms = parse_double(val, key);
        else if (key == "sat_downlink_delay_ms") cfg.satellite.downlink_delay_ms = parse_double(val, key);
        else if (key == "sat_uplink_cost") cfg.satellite.uplink_cost = parse_double(val, key);
        else if (key == "sat_downlink_cost") cfg.satellite.downlink_cost = parse_double(val, key);
        else if (key == "attach_bandwidth_mbps") cfg.attach_bandwidth_mbps = parse_double(val, key);
        else if (key == "ground_cost") cfg.ground_cost = parse_double(val, key);
        else if (key == "congestion_probability") cfg.congestion_probability = parse_double(val, key);
        else if (key == "congestion_threshold_flights") cfg.congestion_threshold_flights = parse_long(val, key);
        else if (key == "delta") cfg.delta = parse_double(val, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(val, key));
        else throw InputError("config line " + std::to_string(ln + 1) + ": unknown key '" + key + "'");
    }

    for (const auto& sid : service_order) {
        const auto& f = service_fields[sid];
        ServiceType s;
        s.id = sid;
        for (const auto& [field, value] : f) {
            if (field == "user_bandwidth_mbps") s.user_bandwidth_mbps = value;
            else if (field == "max_delay_ms") s.max_delay_ms = value;
            else if (field == "instance_cost") s.instance_cost = value;
            else if (field == "instance_size_cores") s.instance_size_cores = value;
            else if (field == "instance_capacity_mbps") s.instance_capacity_mbps = value;
            else throw InputError("unknown service field '" + field + "' for service " + sid);
        }
        s.validate();
        cfg.services.push_back(std::move(s));
    }
    return cfg;
}

inline ScenarioConfig load_scenario_config(const std::string& path) {
    namespace fs = std::filesystem;
    try {
        return parse_scenario_config(read_file(path), fs::path(path).parent_path().string());
    } catch (const InputError& e) {
        throw InputError(std::string("config ") + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// synthetic trajectories

namespace detail {

inline GeoPoint destination_point(const GeoPoint& from, double bearing_deg, double km) {
    const double ang = km / kEarthRadiusKm;
    const double br = deg2rad(bearing_deg);
    const double lat1 = deg2rad(from.lat);
    const double lon1 = deg2rad(from.lon);
    const double lat2 =
        std::asin(std::sin(lat1) * std::cos(ang) + std::cos(lat1) * std::sin(ang) * std::cos(br));
    const double lon2 = lon1 + std::atan2(std::sin(br) * std::sin(ang) * std::cos(lat1),
                                          std::cos(ang) - std::sin(lat1) * std::sin(lat2));
    return GeoPoint(lat2 * 180.0 / std::numbers::pi, lon2 * 180.0 / std::numbers::pi);
}

}  // namespace detail

struct BoundingBox {
    double lat_min = 38.0, lat_max = 58.0;
    double lon_min = -8.0, lon_max = 25.0;
};

// Constant-speed random walks: random start and heading inside the box,
// small heading jitter per slot, heading reversal at the box edge.
inline std::vector<FlightTrack> generate_synthetic_flights(int count, int tau, int first_slot,
                                                           double slot_minutes, double speed_kmh,
                                                           std::uint64_t seed,
                                                           const BoundingBox& box = {}) {
    if (count < 0) throw InputError("synthetic flight count must be >= 0");
    if (tau < 1) throw InputError("synthetic tau must be >= 1");
    Rng rng(seed);
    const double step_km = speed_kmh * slot_minutes / 60.0;
    std::vector<FlightTrack> tracks;
    for (int i = 0; i < count; ++i) {
        FlightTrack tr;
        tr.id = "SYN" + std::to_string(i);
        tr.first_slot = first_slot;
        GeoPoint pos(rng.uniform(box.lat_min + 1.0, box.lat_max - 1.0),
                     rng.uniform(box.lon_min + 1.0, box.lon_max - 1.0));
        double heading = rng.uniform(0.0, 360.0);
        tr.positions.push_back(pos);
        for (int s = 0; s < tau; ++s) {
            heading += rng.uniform(-15.0, 15.0);
            GeoPoint next = detail::destination_point(pos, heading, step_km);
            int tries = 0;
            while ((next.lat < box.lat_min || next.lat > box.lat_max || next.lon < box.lon_min ||
                    next.lon > box.lon_max) &&
                   tries < 8) {
                heading += 90.0;
                next = detail::destination_point(pos, heading, step_km);
                ++tries;
            }
            pos = next;
            tr.positions.push_back(pos);
        }
        tracks.push_back(std::move(tr));
    }
    return tracks;
}

// ---------------------------------------------------------------------------
// the scenario itself

struct Scenario {
    int horizon_slots = 0;
    double slot_minutes = 30.0;
    double delta = 0.0;
    std::uint64_t rng_seed = 0;
    double ground_cost = 60.0;

    GroundTopology topology;
    StationList stations;
    std::vector<ServiceType> services;
    std::vector<FlightTrack> flights;
    std::vector<std::vector<uint8_t>> congestion;        // [slot][station]
    std::vector<SaginSnapshot> snapshots;                // [slot]
    std::vector<std::vector<ServiceRequest>> requests;   // [slot]

    const ServiceType& service(int k) const { return services.at(static_cast<size_t>(k)); }

    int service_index(const std::string& id) const {
        for (size_t k = 0; k < services.size(); ++k)
            if (services[k].id == id) return static_cast<int>(k);
        return -1;
    }

    size_t total_requests() const {
        size_t n = 0;
        for (const auto& rs : requests) n += rs.size();
        return n;
    }
};

inline Scenario build_scenario(const ScenarioConfig& cfg) {
    Scenario sc;
    sc.slot_minutes = cfg.slot_minutes;
    sc.delta = cfg.delta;
    sc.rng_seed = cfg.seed;
    sc.ground_cost = cfg.ground_cost;
    if (cfg.slot_minutes <= 0.0) throw InputError("slot_minutes must be > 0");
    if (!(cfg.delta >= 0.0 && cfg.delta <= 1.0)) throw InputError("delta must lie in [0,1]");

    if (cfg.topology_path.empty()) throw InputError("config: missing 'topology' path");
    sc.topology = load_ground_topology(cfg.topology_path);
    sc.stations = cfg.stations_path.empty() ? StationList{} : load_stations(cfg.stations_path);

    // flights
    if (!cfg.flights_path.empty() && cfg.synthetic_flights > 0)
        throw InputError("config: flights_csv and synthetic_flights are mutually exclusive");
    if (!cfg.flights_path.empty())
        sc.flights = load_flights(cfg.flights_path);
    else if (cfg.synthetic_flights > 0)
        sc.flights = generate_synthetic_flights(cfg.synthetic_flights, cfg.synthetic_tau,
                                                cfg.synthetic_first_slot, cfg.slot_minutes,
                                                cfg.synthetic_speed_kmh, cfg.seed);

    int needed = 1;
    for (const auto& f : sc.flights) needed = std::max(needed, f.last_slot() + 1);
    if (cfg.horizon_slots == 0) {
        sc.horizon_slots = needed;
    } else {
        if (cfg.horizon_slots < needed)
            throw InputError("horizon_slots=" + std::to_string(cfg.horizon_slots) +
                             " does not cover all flight tracks (need " + std::to_string(needed) + ")");
        sc.horizon_slots = cfg.horizon_slots;
    }

    // service catalog with aggregated request sizes
    sc.services = cfg.services.empty() ? default_service_catalog() : cfg.services;
    for (auto& s : sc.services) s.validate();
    const long users = static_cast<long>(std::ceil(static_cast<double>(cfg.passengers) *
                                                   cfg.usage_fraction /
                                                   static_cast<double>(sc.services.size())));
    if (cfg.passengers <= 0) throw InputError("passengers must be > 0");
    if (!(cfg.usage_fraction > 0.0 && cfg.usage_fraction <= 1.0))
        throw InputError("usage_fraction must lie in (0,1]");
    if (users <= 0) throw InputError("degenerate workload: 0 users per service");
    double per_flight_demand = 0.0;
    for (auto& s : sc.services) {
        s.bandwidth_mbps = static_cast<double>(users) * s.user_bandwidth_mbps;
        if (s.instance_capacity_mbps < s.bandwidth_mbps)
            throw InputError("service " + s.id + ": instance capacity " +
                             fmt_g10(s.instance_capacity_mbps) + " Mbps below aggregated request " +
                             fmt_g10(s.bandwidth_mbps) + " Mbps");
        s.migration_cost = migration_cost_of(cfg.delta, cfg.ground_cost, s.instance_cost);
        per_flight_demand += s.bandwidth_mbps;
    }
    if (per_flight_demand > cfg.satellite.bandwidth_mbps)
        throw InputError("aggregated per-flight demand " + fmt_g10(per_flight_demand) +
                         " Mbps exceeds satellite uplink capacity " +
                         fmt_g10(cfg.satellite.bandwidth_mbps) + " Mbps");

    // congestion mask
    sc.congestion = sample_congestion(sc.stations.size(), sc.horizon_slots,
                                      cfg.congestion_probability, cfg.seed);

    // attachment arcs are effectively uncapacitated: 10x peak slot demand
    AttachConfig attach;
    if (cfg.attach_bandwidth_mbps > 0.0) {
        attach.bandwidth_mbps = cfg.attach_bandwidth_mbps;
    } else {
        int max_concurrent = 1;
        for (int t = 0; t < sc.horizon_slots; ++t) {
            int active = 0;
            for (const auto& f : sc.flights) active += f.active_at(t) ? 1 : 0;
            max_concurrent = std::max(max_concurrent, active);
        }
        attach.bandwidth_mbps = 10.0 * per_flight_demand * max_concurrent;
        if (attach.bandwidth_mbps <= 0.0) attach.bandwidth_mbps = 10.0 * per_flight_demand;
    }

    // snapshots and requests per slot
    sc.snapshots.reserve(static_cast<size_t>(sc.horizon_slots));
    sc.requests.assign(static_cast<size_t>(sc.horizon_slots), {});
    for (int t = 0; t < sc.horizon_slots; ++t) {
        std::vector<std::pair<std::string, GeoPoint>> active;
        for (const auto& f : sc.flights)
            if (f.active_at(t)) active.emplace_back(f.node_id_at(t), f.position_at(t));
        sc.snapshots.push_back(build_snapshot(sc.topology, sc.stations, cfg.satellite, cfg.da2g,
                                              active, sc.congestion[t], t, attach));
    }
    for (const auto& f : sc.flights) {
        auto per_slot = generate_requests(f, sc.services, cfg.passengers, cfg.usage_fraction);
        for (size_t i = 0; i < per_slot.size(); ++i) {
            const int t = f.first_slot + static_cast<int>(i);
            for (auto& r : per_slot[i]) {
                if (cfg.per_user_requests) {
                    // fan the aggregate out into per-user requests
                    const auto& svc = sc.services[static_cast<size_t>(r.service)];
                    for (long u = 0; u < users; ++u) {
                        ServiceRequest pr = r;
                        pr.id = r.id + ":u" + std::to_string(u);
                        pr.bandwidth_mbps = svc.user_bandwidth_mbps;
                        sc.requests[t].push_back(std::move(pr));
                    }
                } else {
                    sc.requests[t].push_back(std::move(r));
                }
            }
        }
    }
    for (int t = 0; t < sc.horizon_slots; ++t) {
        std::sort(sc.requests[t].begin(), sc.requests[t].end(),
                  [](const ServiceRequest& a, const ServiceRequest& b) { return a.id < b.id; });
        for (const auto& r : sc.requests[t])
            if (!sc.snapshots[t].has_node(r.src_node))
                throw ValidationError("request " + r.id + " references missing node " + r.src_node);
    }
    return sc;
}

// Deterministic structured-text serialization (byte-stable per build).
inline std::string serialize_scenario(const Scenario& sc) {
    std::string out;
    auto add = [&out](const std::string& s) {
        out += s;
        out += '\n';
    };
    add("sagin-jspr scenario v1");
    add("horizon_slots " + std::to_string(sc.horizon_slots));
    add("slot_minutes " + fmt_g17(sc.slot_minutes));
    add("delta " + fmt_g17(sc.delta));
    add("seed " + std::to_string(sc.rng_seed));
    add("ground_cost " + fmt_g17(sc.ground_cost));
    add("services " + std::to_string(sc.services.size()));
    for (const auto& s : sc.services)
        add("service " + s.id + " user_bw " + fmt_g17(s.user_bandwidth_mbps) + " agg_bw " +
            fmt_g17(s.bandwidth_mbps) + " delay " + fmt_g17(s.max_delay_ms) + " cost " +
            fmt_g17(s.instance_cost) + " cores " + fmt_g17(s.instance_size_cores) + " cap " +
            fmt_g17(s.instance_capacity_mbps) + " mig " + fmt_g17(s.migration_cost));
    add("flights " + std::to_string(sc.flights.size()));
    for (const auto& f : sc.flights) {
        add("flight " + f.id + " first_slot " + std::to_string(f.first_slot) + " positions " +
            std::to_string(f.positions.size()));
        for (const auto& p : f.positions) add("pos " + fmt_g17(p.lat) + " " + fmt_g17(p.lon));
    }
    for (int t = 0; t < sc.horizon_slots; ++t) {
        const auto& snap = sc.snapshots[static_cast<size_t>(t)];
        add("slot " + std::to_string(t));
        std::string cong = "congestion";
        for (auto c : sc.congestion[static_cast<size_t>(t)]) cong += c ? " 1" : " 0";
        add(cong);
        add("nodes " + std::to_string(snap.nodes.size()));
        for (const auto& n : snap.nodes) {
            std::string line = "node " + n.id + " " + to_string(n.kind);
            if (n.position)
                line += " " + fmt_g17(n.position->lat) + " " + fmt_g17(n.position->lon);
            if (n.kind == NodeKind::Datacenter) line += " cap " + fmt_g17(n.dc_capacity_cores);
            add(line);
        }
        add("arcs " + std::to_string(snap.arcs.size()));
        for (const auto& a : snap.arcs)
            add("arc " + snap.nodes[a.u].id + " " + snap.nodes[a.v].id + " cost " +
                fmt_g17(a.attrs.cost) + " delay " + fmt_g17(a.attrs.delay_ms) + " bw " +
                fmt_g17(a.attrs.bandwidth_mbps));
        add("requests " + std::to_string(sc.requests[static_cast<size_t>(t)].size()));
        for (const auto& r : sc.requests[static_cast<size_t>(t)])
            add("request " + r.id + " src " + r.src_node + " svc " + sc.service(r.service).id +
                " bw " + fmt_g17(r.bandwidth_mbps) + " delay " + fmt_g17(r.max_delay_ms));
    }
    return out;
}

// Human-readable one-screen description for the build command.
inline std::string scenario_summary(const Scenario& sc) {
    std::string out;
    out += "horizon: " + std::to_string(sc.horizon_slots) + " slots of " +
           fmt_g10(sc.slot_minutes) + " min\n";
    out += "datacenters: " + std::to_string(sc.topology.dc_ids().size());
    for (const auto& d : sc.topology.dc_ids()) out += " " + d;
    out += "\n";
    out += "gateways: " + std::to_string(sc.topology.gateway_ids().size());
    for (const auto& g : sc.topology.gateway_ids()) out += " " + g;
    out += "\n";
    out += "satellite relays: 1\n";
    out += "stations: " + std::to_string(sc.stations.size()) + "\n";
    out += "services: " + std::to_string(sc.services.size());
    for (const auto& s : sc.services) out += " " + s.id + "(" + fmt_g10(s.bandwidth_mbps) + " Mbps)";
    out += "\n";
    out += "flights: " + std::to_string(sc.flights.size()) + "\n";
    for (const auto& f : sc.flights)
        out += "  " + f.id + ": tau=" + std::to_string(f.tau()) + ", duration " +
               fmt_g10(f.tau() * sc.slot_minutes) + " min, slots " + std::to_string(f.first_slot) +
               ".." + std::to_string(f.last_slot()) + "\n";
    out += "requests: " + std::to_string(sc.total_requests()) + " total\n";
    out += "delta: " + fmt_g10(sc.delta) + ", seed: " + std::to_string(sc.rng_seed) + "\n";
    return out;
}

}  // namespace sjspr
