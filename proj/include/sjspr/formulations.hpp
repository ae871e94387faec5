#pragma once

// MILP builders for the static and mobility-aware joint service placement
// and routing problems, plus solution decoding into placement plans.
//
// Variable families (all indexed per slot t in the mobility-aware case):
//   x[a,j]   binary   request a assigned to datacenter j
//   l[a,j,e] binary   arc e routes the traffic of (a assigned to j)
//   n[j,k]   integer  instances of service type k deployed at j
//   y[e]     binary   arc e is active
// and the migration subsystem per service type and slot transition:
//   p[j,k,t] >= 0  per-DC instance-count increase
//   c[k,t]   >= 0  net creations (exact positive part via big-M and w)
//   w[k,t]   binary selector for the positive-part branch
//   m[k,t]   >= 0  migrations charged in the objective

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/log.hpp"
#include "sjspr/milp/branch_and_bound.hpp"
#include "sjspr/milp/model.hpp"
#include "sjspr/network_model.hpp"
#include "sjspr/scenario.hpp"

namespace sjspr {

namespace detail {

// positive-part migration arithmetic shared by the evaluation module and
// plan decoding: migrations per type = sum of per-DC increases minus net
// creations, both clipped at zero
inline std::vector<long> eq3_migrations(const std::vector<std::vector<long>>& n_prev,
                                        const std::vector<std::vector<long>>& n_curr) {
    if (n_prev.size() != n_curr.size())
        throw InputError("migration count: instance matrices differ in DC dimension");
    const size_t nj = n_prev.size();
    const size_t nk = nj == 0 ? 0 : n_prev[0].size();
    std::vector<long> out(nk, 0);
    for (size_t k = 0; k < nk; ++k) {
        long inc = 0, tot_prev = 0, tot_curr = 0;
        for (size_t j = 0; j < nj; ++j) {
            if (n_prev[j].size() != nk || n_curr[j].size() != nk)
                throw InputError("migration count: instance matrices differ in type dimension");
            if (n_prev[j][k] < 0 || n_curr[j][k] < 0)
                throw InputError("migration count: negative instance count");
            inc += std::max(0L, n_curr[j][k] - n_prev[j][k]);
            tot_prev += n_prev[j][k];
            tot_curr += n_curr[j][k];
        }
        out[k] = inc - std::max(0L, tot_curr - tot_prev);
    }
    return out;
}

}  // namespace detail

struct SlotVars {
    int slot = 0;   // scenario slot this block models
    int narcs = 0;
    std::vector<std::string> request_ids;
    std::vector<std::vector<int>> x;               // [a][j]
    std::vector<std::vector<int>> n;               // [j][k]
    std::vector<int> y;                            // [e]
    std::vector<std::vector<std::vector<int>>> l;  // [a][j][e]
};

struct VarMap {
    std::vector<std::string> dc_ids;       // sorted topology order
    std::vector<std::string> service_ids;
    std::vector<SlotVars> slots;

    // migration subsystem (mobility-aware only); index [t][...] with t = 0
    // entries present but unused for p/c/w
    std::vector<std::vector<int>> m;               // [t][k]
    std::vector<std::vector<std::vector<int>>> p;  // [t][j][k], t >= 1
    std::vector<std::vector<int>> c, w;            // [t][k],    t >= 1

    std::map<std::string, long> census;  // constraint family -> emitted count
    std::vector<std::string> prescreen_warnings;
    std::vector<double> big_m;  // per service type (mobility-aware)
};

struct SjsprBuild {
    MilpModel model;
    VarMap vm;
};

namespace detail {

inline std::vector<int> dc_indices_for(const SaginSnapshot& snap,
                                       const std::vector<std::string>& dc_ids) {
    std::vector<int> out;
    out.reserve(dc_ids.size());
    for (const auto& id : dc_ids) out.push_back(snap.node_index(id));
    return out;
}

// shortest-delay reachability screen: a request whose best possible path
// already violates the delay bound makes the model infeasible
inline void delay_prescreen(const SaginSnapshot& snap, const ServiceRequest& req,
                            std::vector<std::string>& warnings) {
    const size_t n = snap.nodes.size();
    std::vector<double> dist(n, kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    const int src = snap.node_index(req.src_node);
    dist[static_cast<size_t>(src)] = 0.0;
    pq.emplace(0.0, src);
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        for (int e : snap.out_arc_ids(u)) {
            const auto& arc = snap.arcs[static_cast<size_t>(e)];
            const double nd = d + arc.attrs.delay_ms;
            if (nd < dist[static_cast<size_t>(arc.v)]) {
                dist[static_cast<size_t>(arc.v)] = nd;
                pq.emplace(nd, arc.v);
            }
        }
    }
    double best = kInf;
    for (int j : snap.dc_node_indices()) best = std::min(best, dist[static_cast<size_t>(j)]);
    if (best > req.max_delay_ms + 1e-9) {
        warnings.push_back("request " + req.id + " cannot meet its delay bound: best achievable " +
                           fmt_g10(best) + " ms > " + fmt_g10(req.max_delay_ms) + " ms");
        logging::warn(warnings.back());
    }
}

// Emits one slot of the placement-and-routing formulation into `model`.
inline void emit_slot(MilpModel& model, VarMap& vm, const SaginSnapshot& snap,
                      const std::vector<ServiceRequest>& requests,
                      const std::vector<ServiceType>& services, double rho, const std::string& tag) {
    SlotVars sv;
    sv.slot = snap.slot;
    const int na = static_cast<int>(requests.size());
    const int nj = static_cast<int>(vm.dc_ids.size());
    const int nk = static_cast<int>(services.size());
    const int ne = static_cast<int>(snap.arcs.size());
    sv.narcs = ne;
    const std::vector<int> dc_nodes = dc_indices_for(snap, vm.dc_ids);
    // tightest valid activation factor: at any integer point each request
    // routes toward exactly one DC, so an arc carries at most |A| set l's
    if (rho <= 0.0) rho = std::max(1.0, static_cast<double>(na));

    for (const auto& r : requests) {
        sv.request_ids.push_back(r.id);
        delay_prescreen(snap, r, vm.prescreen_warnings);
    }

    auto arc_tag = [&snap](int e) {
        return snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].u)].id + ">" +
               snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].v)].id;
    };

    // variables
    sv.x.assign(static_cast<size_t>(na), std::vector<int>(static_cast<size_t>(nj)));
    for (int a = 0; a < na; ++a)
        for (int j = 0; j < nj; ++j)
            sv.x[a][j] = model.add_variable(VarKind::Binary, 0, 1,
                                            "x[" + tag + "," + requests[a].id + "," + vm.dc_ids[j] + "]");
    sv.n.assign(static_cast<size_t>(nj), std::vector<int>(static_cast<size_t>(nk)));
    for (int j = 0; j < nj; ++j) {
        const double cap = snap.nodes[static_cast<size_t>(dc_nodes[j])].dc_capacity_cores;
        for (int k = 0; k < nk; ++k) {
            const double max_inst = std::floor(cap / services[static_cast<size_t>(k)].instance_size_cores);
            sv.n[j][k] = model.add_variable(VarKind::Integer, 0, max_inst,
                                            "n[" + tag + "," + vm.dc_ids[j] + "," +
                                                services[static_cast<size_t>(k)].id + "]");
        }
    }
    sv.y.assign(static_cast<size_t>(ne), -1);
    for (int e = 0; e < ne; ++e)
        sv.y[e] = model.add_variable(VarKind::Binary, 0, 1, "y[" + tag + "," + arc_tag(e) + "]");
    sv.l.assign(static_cast<size_t>(na),
                std::vector<std::vector<int>>(static_cast<size_t>(nj),
                                              std::vector<int>(static_cast<size_t>(ne))));
    for (int a = 0; a < na; ++a)
        for (int j = 0; j < nj; ++j)
            for (int e = 0; e < ne; ++e)
                sv.l[a][j][e] = model.add_variable(
                    VarKind::Binary, 0, 1,
                    "l[" + tag + "," + requests[a].id + "," + vm.dc_ids[j] + "," + arc_tag(e) + "]");

    auto count = [&vm](const char* family) { ++vm.census[family]; };

    // each request is assigned to exactly one datacenter
    for (int a = 0; a < na; ++a) {
        LinearExpr e;
        for (int j = 0; j < nj; ++j) e.add(sv.x[a][j], 1.0);
        model.add_constraint(e, Sense::Eq, 1.0, "assign_once[" + tag + "," + requests[a].id + "]");
        count("assign_once");
    }

    // an assignment needs a deployed instance of the request's type
    for (int a = 0; a < na; ++a) {
        const int k = requests[static_cast<size_t>(a)].service;
        for (int j = 0; j < nj; ++j) {
            LinearExpr e;
            e.add(sv.x[a][j], 1.0);
            e.add(sv.n[j][k], -1.0);
            model.add_constraint(e, Sense::Le, 0.0,
                                 "instance_required[" + tag + "," + requests[a].id + "," +
                                     vm.dc_ids[j] + "]");
            count("instance_required");
        }
    }

    // datacenter core capacity
    for (int j = 0; j < nj; ++j) {
        LinearExpr e;
        for (int k = 0; k < nk; ++k)
            e.add(sv.n[j][k], services[static_cast<size_t>(k)].instance_size_cores);
        model.add_constraint(e, Sense::Le,
                             snap.nodes[static_cast<size_t>(dc_nodes[j])].dc_capacity_cores,
                             "dc_capacity[" + tag + "," + vm.dc_ids[j] + "]");
        count("dc_capacity");
    }

    // instance serving capacity per (datacenter, type)
    for (int j = 0; j < nj; ++j) {
        for (int k = 0; k < nk; ++k) {
            LinearExpr e;
            for (int a = 0; a < na; ++a)
                if (requests[static_cast<size_t>(a)].service == k)
                    e.add(sv.x[a][j], requests[static_cast<size_t>(a)].bandwidth_mbps);
            e.add(sv.n[j][k], -services[static_cast<size_t>(k)].instance_capacity_mbps);
            model.add_constraint(e, Sense::Le, 0.0,
                                 "instance_capacity[" + tag + "," + vm.dc_ids[j] + "," +
                                     services[static_cast<size_t>(k)].id + "]");
            count("instance_capacity");
        }
    }

    // arc bandwidth
    for (int e = 0; e < ne; ++e) {
        LinearExpr ex;
        for (int a = 0; a < na; ++a)
            for (int j = 0; j < nj; ++j)
                ex.add(sv.l[a][j][e], requests[static_cast<size_t>(a)].bandwidth_mbps);
        model.add_constraint(ex, Sense::Le, snap.arcs[static_cast<size_t>(e)].attrs.bandwidth_mbps,
                             "link_capacity[" + tag + "," + arc_tag(e) + "]");
        count("link_capacity");
    }

    // end-to-end delay bound per request
    for (int a = 0; a < na; ++a) {
        LinearExpr ex;
        for (int e = 0; e < ne; ++e) {
            const double d = snap.arcs[static_cast<size_t>(e)].attrs.delay_ms;
            for (int j = 0; j < nj; ++j) ex.add(sv.l[a][j][e], d);
        }
        model.add_constraint(ex, Sense::Le, requests[static_cast<size_t>(a)].max_delay_ms,
                             "delay_bound[" + tag + "," + requests[a].id + "]");
        count("delay_bound");
    }

    // traffic leaves every request source exactly once
    for (int a = 0; a < na; ++a) {
        const int src = snap.node_index(requests[static_cast<size_t>(a)].src_node);
        LinearExpr ex;
        for (int e : snap.out_arc_ids(src))
            for (int j = 0; j < nj; ++j) ex.add(sv.l[a][j][e], 1.0);
        model.add_constraint(ex, Sense::Eq, 1.0,
                             "source_emit[" + tag + "," + requests[a].id + "]");
        count("source_emit");
    }

    // flow conservation everywhere else; serving datacenters absorb x[a,j]
    std::vector<int> dc_slot_index(snap.nodes.size(), -1);
    for (int j = 0; j < nj; ++j) dc_slot_index[static_cast<size_t>(dc_nodes[j])] = j;
    for (int a = 0; a < na; ++a) {
        const int src = snap.node_index(requests[static_cast<size_t>(a)].src_node);
        for (int u = 0; u < static_cast<int>(snap.nodes.size()); ++u) {
            if (u == src) continue;
            LinearExpr ex;
            for (int e : snap.in_arc_ids(u))
                for (int j = 0; j < nj; ++j) ex.add(sv.l[a][j][e], 1.0);
            for (int e : snap.out_arc_ids(u))
                for (int j = 0; j < nj; ++j) ex.add(sv.l[a][j][e], -1.0);
            if (dc_slot_index[static_cast<size_t>(u)] >= 0)
                ex.add(sv.x[a][dc_slot_index[static_cast<size_t>(u)]], -1.0);
            model.add_constraint(ex, Sense::Eq, 0.0,
                                 "flow_conserve[" + tag + "," + requests[a].id + "," +
                                     snap.nodes[static_cast<size_t>(u)].id + "]");
            count("flow_conserve");
        }
    }

    // routing is only allowed toward the assigned datacenter
    for (int e = 0; e < ne; ++e)
        for (int a = 0; a < na; ++a)
            for (int j = 0; j < nj; ++j) {
                LinearExpr ex;
                ex.add(sv.l[a][j][e], 1.0);
                ex.add(sv.x[a][j], -1.0);
                model.add_constraint(ex, Sense::Le, 0.0,
                                     "route_if_assigned[" + tag + "," + requests[a].id + "," +
                                         vm.dc_ids[j] + "," + arc_tag(e) + "]");
                count("route_if_assigned");
            }

    // arcs are active exactly when some request routes over them
    for (int e = 0; e < ne; ++e) {
        LinearExpr lhs;
        lhs.add(sv.y[e], 1.0);
        for (int a = 0; a < na; ++a)
            for (int j = 0; j < nj; ++j) lhs.add(sv.l[a][j][e], -1.0);
        model.add_constraint(lhs, Sense::Le, 0.0, "link_active_ub[" + tag + "," + arc_tag(e) + "]");
        count("link_active_ub");

        LinearExpr rhs;
        for (int a = 0; a < na; ++a)
            for (int j = 0; j < nj; ++j) rhs.add(sv.l[a][j][e], 1.0);
        rhs.add(sv.y[e], -rho);
        model.add_constraint(rhs, Sense::Le, 0.0, "link_active_lb[" + tag + "," + arc_tag(e) + "]");
        count("link_active_lb");
    }

    vm.slots.push_back(std::move(sv));
}

inline void add_slot_objective(LinearExpr& obj, const SlotVars& sv, const SaginSnapshot& snap,
                               const std::vector<ServiceType>& services) {
    for (size_t j = 0; j < sv.n.size(); ++j)
        for (size_t k = 0; k < sv.n[j].size(); ++k)
            obj.add(sv.n[j][k], services[k].instance_cost);
    for (size_t e = 0; e < sv.y.size(); ++e)
        obj.add(sv.y[e], snap.arcs[e].attrs.cost);
}

}  // namespace detail

// Static (single-slot) model over one snapshot and its request set.
// rho <= 0 selects the default |A|*|DCs| + 1.
inline SjsprBuild build_sjspr(const SaginSnapshot& snapshot,
                              const std::vector<ServiceRequest>& requests,
                              const std::vector<ServiceType>& services, double rho = 0.0) {
    SjsprBuild b;
    for (const auto& idx : snapshot.dc_node_indices())
        b.vm.dc_ids.push_back(snapshot.nodes[static_cast<size_t>(idx)].id);
    if (b.vm.dc_ids.empty()) throw InputError("build_sjspr: snapshot has no datacenter");
    for (const auto& s : services) b.vm.service_ids.push_back(s.id);
    for (const auto& r : requests)
        if (r.service < 0 || r.service >= static_cast<int>(services.size()))
            throw InputError("request " + r.id + " references an unknown service type");

    detail::emit_slot(b.model, b.vm, snapshot, requests, services, rho,
                      "t" + std::to_string(snapshot.slot));
    LinearExpr obj;
    detail::add_slot_objective(obj, b.vm.slots[0], snapshot, services);
    b.model.set_objective(obj);
    return b;
}

// Mobility-aware model over the full scenario horizon: per-slot copies of
// the static families plus the migration-count subsystem. bigM <= 0 selects
// the per-type default: the maximum total instance count of that type.
inline SjsprBuild build_majspr(const Scenario& scenario, double rho = 0.0, double bigM = 0.0,
                               bool integer_migrations = false) {
    SjsprBuild b;
    for (const auto& id : scenario.topology.dc_ids()) b.vm.dc_ids.push_back(id);
    if (b.vm.dc_ids.empty()) throw InputError("build_majspr: scenario has no datacenter");
    for (const auto& s : scenario.services) b.vm.service_ids.push_back(s.id);
    const int T = scenario.horizon_slots;
    const int nj = static_cast<int>(b.vm.dc_ids.size());
    const int nk = static_cast<int>(scenario.services.size());

    // big-M per type: largest possible slot-to-slot change of the total
    // instance count
    b.vm.big_m.assign(static_cast<size_t>(nk), bigM);
    if (bigM <= 0.0) {
        for (int k = 0; k < nk; ++k) {
            double cap_total = 0.0;
            for (const auto& id : b.vm.dc_ids) {
                const Node* node = scenario.topology.find(id);
                cap_total += std::floor(node->dc_capacity_cores /
                                        scenario.services[static_cast<size_t>(k)].instance_size_cores);
            }
            b.vm.big_m[static_cast<size_t>(k)] = cap_total;
        }
    }

    for (int t = 0; t < T; ++t)
        detail::emit_slot(b.model, b.vm, scenario.snapshots[static_cast<size_t>(t)],
                          scenario.requests[static_cast<size_t>(t)], scenario.services, rho,
                          "t" + std::to_string(t));

    // migration variables; m is fixed to zero at the first slot
    const VarKind mig_kind = integer_migrations ? VarKind::Integer : VarKind::Continuous;
    b.vm.m.assign(static_cast<size_t>(T), std::vector<int>(static_cast<size_t>(nk), -1));
    b.vm.c.assign(static_cast<size_t>(T), {});
    b.vm.w.assign(static_cast<size_t>(T), {});
    b.vm.p.assign(static_cast<size_t>(T), {});
    for (int t = 0; t < T; ++t) {
        const std::string tag = "t" + std::to_string(t);
        for (int k = 0; k < nk; ++k) {
            const std::string& sid = b.vm.service_ids[static_cast<size_t>(k)];
            const double ub = integer_migrations ? b.vm.big_m[static_cast<size_t>(k)] : kInf;
            b.vm.m[t][k] = b.model.add_variable(mig_kind, 0.0, t == 0 ? 0.0 : ub,
                                                "m[" + tag + "," + sid + "]");
        }
        if (t == 0) continue;
        b.vm.c[t].assign(static_cast<size_t>(nk), -1);
        b.vm.w[t].assign(static_cast<size_t>(nk), -1);
        b.vm.p[t].assign(static_cast<size_t>(nj), std::vector<int>(static_cast<size_t>(nk), -1));
        for (int k = 0; k < nk; ++k) {
            const std::string& sid = b.vm.service_ids[static_cast<size_t>(k)];
            const double ub = integer_migrations ? b.vm.big_m[static_cast<size_t>(k)] : kInf;
            b.vm.c[t][k] = b.model.add_variable(mig_kind, 0.0, ub, "cnet[" + tag + "," + sid + "]");
            b.vm.w[t][k] = b.model.add_variable(VarKind::Binary, 0, 1, "w[" + tag + "," + sid + "]");
            for (int j = 0; j < nj; ++j)
                b.vm.p[t][j][k] = b.model.add_variable(
                    mig_kind, 0.0, ub,
                    "pinc[" + tag + "," + b.vm.dc_ids[static_cast<size_t>(j)] + "," + sid + "]");
        }
    }

    auto count = [&b](const char* family) { ++b.vm.census[family]; };
    for (int t = 1; t < T; ++t) {
        const std::string tag = "t" + std::to_string(t);
        const auto& cur = b.vm.slots[static_cast<size_t>(t)].n;
        const auto& prev = b.vm.slots[static_cast<size_t>(t - 1)].n;
        for (int k = 0; k < nk; ++k) {
            const std::string& sid = b.vm.service_ids[static_cast<size_t>(k)];
            const double M = b.vm.big_m[static_cast<size_t>(k)];

            for (int j = 0; j < nj; ++j) {
                LinearExpr e;  // p >= n_t - n_{t-1}
                e.add(b.vm.p[t][j][k], 1.0);
                e.add(cur[static_cast<size_t>(j)][static_cast<size_t>(k)], -1.0);
                e.add(prev[static_cast<size_t>(j)][static_cast<size_t>(k)], 1.0);
                b.model.add_constraint(e, Sense::Ge, 0.0,
                                       "mig_dc_increase[" + tag + "," +
                                           b.vm.dc_ids[static_cast<size_t>(j)] + "," + sid + "]");
                count("mig_dc_increase");
            }

            LinearExpr lb;  // c >= sum n_t - sum n_{t-1}
            lb.add(b.vm.c[t][k], 1.0);
            for (int j = 0; j < nj; ++j) {
                lb.add(cur[static_cast<size_t>(j)][static_cast<size_t>(k)], -1.0);
                lb.add(prev[static_cast<size_t>(j)][static_cast<size_t>(k)], 1.0);
            }
            b.model.add_constraint(lb, Sense::Ge, 0.0, "mig_net_lb[" + tag + "," + sid + "]");
            count("mig_net_lb");

            LinearExpr ub1;  // c <= sum n_t - sum n_{t-1} + M w
            ub1.add(b.vm.c[t][k], 1.0);
            for (int j = 0; j < nj; ++j) {
                ub1.add(cur[static_cast<size_t>(j)][static_cast<size_t>(k)], -1.0);
                ub1.add(prev[static_cast<size_t>(j)][static_cast<size_t>(k)], 1.0);
            }
            ub1.add(b.vm.w[t][k], -M);
            b.model.add_constraint(ub1, Sense::Le, 0.0, "mig_net_ub_on[" + tag + "," + sid + "]");
            count("mig_net_ub_on");

            LinearExpr ub2;  // c <= M (1 - w)
            ub2.add(b.vm.c[t][k], 1.0);
            ub2.add(b.vm.w[t][k], M);
            b.model.add_constraint(ub2, Sense::Le, M, "mig_net_ub_off[" + tag + "," + sid + "]");
            count("mig_net_ub_off");

            LinearExpr mc;  // m >= sum_j p - c
            mc.add(b.vm.m[t][k], 1.0);
            for (int j = 0; j < nj; ++j) mc.add(b.vm.p[t][j][k], -1.0);
            mc.add(b.vm.c[t][k], 1.0);
            b.model.add_constraint(mc, Sense::Ge, 0.0, "mig_count_lb[" + tag + "," + sid + "]");
            count("mig_count_lb");
        }
    }

    LinearExpr obj;
    for (int t = 0; t < T; ++t)
        detail::add_slot_objective(obj, b.vm.slots[static_cast<size_t>(t)],
                                   scenario.snapshots[static_cast<size_t>(t)], scenario.services);
    for (int t = 1; t < T; ++t)
        for (int k = 0; k < nk; ++k)
            obj.add(b.vm.m[t][k], scenario.services[static_cast<size_t>(k)].migration_cost);
    b.model.set_objective(obj);
    return b;
}

// ---------------------------------------------------------------------------
// plan decoding

struct RequestRoute {
    std::string request_id;
    int service = -1;
    std::string dc;
    std::vector<std::pair<std::string, std::string>> path;  // arc (u,v) id pairs
    double delay_ms = 0.0;
    double bandwidth_mbps = 0.0;
    double max_delay_ms = 0.0;
};

struct SlotPlan {
    int slot = 0;
    std::vector<std::vector<long>> instances;  // [j][k]
    std::vector<RequestRoute> routes;
    std::vector<std::pair<std::string, std::string>> active_links;
};

struct PlacementPlan {
    std::string mode;  // "static", "rollout", or "ma"
    std::vector<std::string> dc_ids, service_ids;
    std::vector<SlotPlan> slots;
    std::vector<std::vector<long>> migrations;  // [t][k], slot 0 all zero
    std::vector<std::vector<double>> solver_migration_values;  // [t][k], ma only
    std::vector<std::string> warnings;
};

namespace detail {

inline SlotPlan decode_slot(const VarMap& vm, size_t slot_pos, const std::vector<double>& values,
                            const SaginSnapshot& snap, const std::vector<ServiceRequest>& requests,
                            std::vector<std::string>& warnings) {
    const SlotVars& sv = vm.slots.at(slot_pos);
    SlotPlan plan;
    plan.slot = sv.slot;
    const int nj = static_cast<int>(vm.dc_ids.size());
    const int ne = sv.narcs;

    plan.instances.assign(static_cast<size_t>(nj),
                          std::vector<long>(vm.service_ids.size(), 0));
    for (int j = 0; j < nj; ++j)
        for (size_t k = 0; k < vm.service_ids.size(); ++k)
            plan.instances[static_cast<size_t>(j)][k] =
                std::lround(values[static_cast<size_t>(sv.n[static_cast<size_t>(j)][k])]);

    for (int e = 0; e < ne; ++e)
        if (values[static_cast<size_t>(sv.y[static_cast<size_t>(e)])] > 0.5)
            plan.active_links.emplace_back(
                snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].u)].id,
                snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].v)].id);

    for (size_t a = 0; a < requests.size(); ++a) {
        const auto& req = requests[a];
        int assigned = -1;
        for (int j = 0; j < nj; ++j) {
            if (values[static_cast<size_t>(sv.x[a][static_cast<size_t>(j)])] > 0.5) {
                if (assigned >= 0)
                    throw ValidationError("request " + req.id + " assigned to two datacenters");
                assigned = j;
            }
        }
        if (assigned < 0) throw ValidationError("request " + req.id + " has no assignment");

        // arcs carrying this request
        std::set<int> set_arcs;
        for (int e = 0; e < ne; ++e)
            if (values[static_cast<size_t>(sv.l[a][static_cast<size_t>(assigned)][static_cast<size_t>(e)])] > 0.5)
                set_arcs.insert(e);

        // walk from src following set arcs; inline loops are cut out as they
        // close, leftovers are residual cycles. Flow conservation guarantees
        // the walk ends at the assigned datacenter for any valid solution.
        const int src = snap.node_index(req.src_node);
        const int dst = snap.node_index(vm.dc_ids[static_cast<size_t>(assigned)]);
        std::set<int> unused = set_arcs;
        std::vector<int> path;                        // arc ids, src -> dst
        std::vector<int> pos(snap.nodes.size(), -1);  // node -> index on walk
        pos[static_cast<size_t>(src)] = 0;
        int u = src;
        bool cut_cycles = false;
        while (u != dst) {
            int next = -1;
            for (int e : snap.out_arc_ids(u))
                if (unused.count(e)) {
                    next = e;
                    break;  // deterministic: lowest arc id
                }
            if (next < 0)
                throw ValidationError("decoded walk for request " + req.id +
                                      " does not reach its datacenter " +
                                      vm.dc_ids[static_cast<size_t>(assigned)]);
            unused.erase(next);
            const int v = snap.arcs[static_cast<size_t>(next)].v;
            if (pos[static_cast<size_t>(v)] >= 0) {
                // closing a loop: drop everything after the first visit of v
                cut_cycles = true;
                while (static_cast<int>(path.size()) > pos[static_cast<size_t>(v)]) {
                    const int dropped = path.back();
                    path.pop_back();
                    pos[static_cast<size_t>(snap.arcs[static_cast<size_t>(dropped)].v)] = -1;
                }
            } else {
                path.push_back(next);
                pos[static_cast<size_t>(v)] = static_cast<int>(path.size());
            }
            u = v;
        }
        if (cut_cycles || !unused.empty())
            warnings.push_back("request " + req.id + ": discarded " +
                               std::to_string(set_arcs.size() - path.size()) +
                               " residual cycle arc(s)");

        RequestRoute route;
        route.request_id = req.id;
        route.service = req.service;
        route.dc = vm.dc_ids[static_cast<size_t>(assigned)];
        route.bandwidth_mbps = req.bandwidth_mbps;
        route.max_delay_ms = req.max_delay_ms;
        for (int e : path) {
            route.delay_ms += snap.arcs[static_cast<size_t>(e)].attrs.delay_ms;
            route.path.emplace_back(
                snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].u)].id,
                snap.nodes[static_cast<size_t>(snap.arcs[static_cast<size_t>(e)].v)].id);
        }
        plan.routes.push_back(std::move(route));
    }
    return plan;
}

}  // namespace detail

// Decodes a solved model into a placement plan. Works for both the static
// build (one slot) and the mobility-aware build (full horizon).
inline PlacementPlan decode_plan(const MilpModel& model, const VarMap& vm, const Solution& solution,
                                 const Scenario& scenario) {
    if (!(solution.status == SolveStatus::Optimal || solution.status == SolveStatus::GapReached))
        throw InputError(std::string("decode_plan: solution status is ") +
                         to_string(solution.status));
    if (solution.values.size() != model.num_variables())
        throw InputError("decode_plan: solution does not match the model");

    PlacementPlan plan;
    plan.mode = vm.slots.size() > 1 ? "ma" : "static";
    plan.dc_ids = vm.dc_ids;
    plan.service_ids = vm.service_ids;
    for (size_t i = 0; i < vm.slots.size(); ++i) {
        const int t = vm.slots[i].slot;
        plan.slots.push_back(detail::decode_slot(vm, i, solution.values,
                                                 scenario.snapshots.at(static_cast<size_t>(t)),
                                                 scenario.requests.at(static_cast<size_t>(t)),
                                                 plan.warnings));
    }

    plan.migrations.assign(plan.slots.size(), std::vector<long>(vm.service_ids.size(), 0));
    for (size_t t = 1; t < plan.slots.size(); ++t)
        plan.migrations[t] =
            detail::eq3_migrations(plan.slots[t - 1].instances, plan.slots[t].instances);

    if (!vm.m.empty()) {
        plan.solver_migration_values.assign(vm.m.size(),
                                            std::vector<double>(vm.service_ids.size(), 0.0));
        for (size_t t = 0; t < vm.m.size(); ++t)
            for (size_t k = 0; k < vm.service_ids.size(); ++k)
                plan.solver_migration_values[t][k] =
                    solution.values[static_cast<size_t>(vm.m[t][k])];
    }
    return plan;
}

// Plan-level feasibility checks mirroring the model constraints on the
// decoded artifact: delay bounds, arc loads, core capacity, instance loads.
inline std::vector<std::string> check_plan(const PlacementPlan& plan, const Scenario& scenario) {
    std::vector<std::string> problems;
    for (const auto& sp : plan.slots) {
        const auto& snap = scenario.snapshots.at(static_cast<size_t>(sp.slot));
        const auto& requests = scenario.requests.at(static_cast<size_t>(sp.slot));
        if (sp.routes.size() != requests.size())
            problems.push_back("slot " + std::to_string(sp.slot) + ": route count " +
                               std::to_string(sp.routes.size()) + " != request count " +
                               std::to_string(requests.size()));

        std::map<std::pair<std::string, std::string>, double> arc_load;
        std::map<std::pair<std::string, int>, double> dc_type_load;
        for (const auto& r : sp.routes) {
            if (r.delay_ms > r.max_delay_ms + 1e-6)
                problems.push_back("route " + r.request_id + ": delay " + fmt_g10(r.delay_ms) +
                                   " ms exceeds bound " + fmt_g10(r.max_delay_ms) + " ms");
            if (!r.path.empty() && r.path.back().second != r.dc)
                problems.push_back("route " + r.request_id + " does not end at " + r.dc);
            for (const auto& arc : r.path) arc_load[arc] += r.bandwidth_mbps;
            dc_type_load[{r.dc, r.service}] += r.bandwidth_mbps;
        }
        for (const auto& [arc, load] : arc_load) {
            bool found = false;
            for (const auto& a : snap.arcs) {
                if (snap.nodes[static_cast<size_t>(a.u)].id == arc.first &&
                    snap.nodes[static_cast<size_t>(a.v)].id == arc.second) {
                    found = true;
                    if (load > a.attrs.bandwidth_mbps + 1e-6)
                        problems.push_back("slot " + std::to_string(sp.slot) + ": arc " +
                                           arc.first + ">" + arc.second + " load " + fmt_g10(load) +
                                           " exceeds bandwidth " + fmt_g10(a.attrs.bandwidth_mbps));
                    break;
                }
            }
            if (!found)
                problems.push_back("slot " + std::to_string(sp.slot) + ": route uses missing arc " +
                                   arc.first + ">" + arc.second);
        }
        for (size_t j = 0; j < plan.dc_ids.size(); ++j) {
            const Node* dc = scenario.topology.find(plan.dc_ids[j]);
            double cores = 0.0;
            for (size_t k = 0; k < plan.service_ids.size(); ++k) {
                const long inst = sp.instances[j][k];
                if (inst < 0) problems.push_back("negative instance count at " + plan.dc_ids[j]);
                cores += static_cast<double>(inst) * scenario.services[k].instance_size_cores;
                const double load = [&] {
                    auto it = dc_type_load.find({plan.dc_ids[j], static_cast<int>(k)});
                    return it == dc_type_load.end() ? 0.0 : it->second;
                }();
                if (load > scenario.services[k].instance_capacity_mbps * static_cast<double>(inst) + 1e-6)
                    problems.push_back("slot " + std::to_string(sp.slot) + ": " + plan.dc_ids[j] +
                                       "/" + plan.service_ids[k] + " load " + fmt_g10(load) +
                                       " exceeds instance capacity");
            }
            if (dc && cores > dc->dc_capacity_cores + 1e-6)
                problems.push_back("slot " + std::to_string(sp.slot) + ": " + plan.dc_ids[j] +
                                   " uses " + fmt_g10(cores) + " cores of " +
                                   fmt_g10(dc->dc_capacity_cores));
        }
    }
    return problems;
}

// Sequential per-slot static solving; migrations are charged after the fact
// from the instance-count trajectory.
struct RolloutResult {
    PlacementPlan plan;
    std::vector<Solution> per_slot;
};

inline RolloutResult rollout_static(const Scenario& scenario, const SolveParams& params = {},
                                    double rho = 0.0) {
    RolloutResult out;
    out.plan.mode = "rollout";
    for (const auto& id : scenario.topology.dc_ids()) out.plan.dc_ids.push_back(id);
    for (const auto& s : scenario.services) out.plan.service_ids.push_back(s.id);

    for (int t = 0; t < scenario.horizon_slots; ++t) {
        SjsprBuild b = build_sjspr(scenario.snapshots[static_cast<size_t>(t)],
                                   scenario.requests[static_cast<size_t>(t)], scenario.services, rho);
        for (const auto& w : b.vm.prescreen_warnings) out.plan.warnings.push_back(w);
        Solution sol = solve_milp(b.model, params);
        if (!(sol.status == SolveStatus::Optimal || sol.status == SolveStatus::GapReached))
            throw InfeasibleError("rollout: slot " + std::to_string(t) + " solve ended with " +
                                  to_string(sol.status));
        out.plan.slots.push_back(detail::decode_slot(b.vm, 0, sol.values,
                                                     scenario.snapshots[static_cast<size_t>(t)],
                                                     scenario.requests[static_cast<size_t>(t)],
                                                     out.plan.warnings));
        out.per_slot.push_back(std::move(sol));
    }
    out.plan.migrations.assign(out.plan.slots.size(),
                               std::vector<long>(out.plan.service_ids.size(), 0));
    for (size_t t = 1; t < out.plan.slots.size(); ++t)
        out.plan.migrations[t] = detail::eq3_migrations(out.plan.slots[t - 1].instances,
                                                        out.plan.slots[t].instances);
    return out;
}

}  // namespace sjspr
