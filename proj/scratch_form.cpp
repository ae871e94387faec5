#include <cstdio>
#include "sjspr/evaluation.hpp"

using namespace sjspr;

int main() {
    // one flight node, one DC, single link cost 60; instance 229 -> 289
    std::vector<Node> nodes;
    nodes.push_back(Node{"dc1", NodeKind::Datacenter, GeoPoint(48, 11), 64.0});
    nodes.push_back(Node{"fl@t0", NodeKind::FlightPosition, GeoPoint(48.5, 11.5), 0.0});
    std::vector<std::tuple<std::string, std::string, LinkAttrs>> links;
    links.emplace_back("fl@t0", "dc1", LinkAttrs{60.0, 5.0, 100.0});
    auto snap = SaginSnapshot::from_links(0, nodes, links);

    auto services = default_service_catalog();
    services[0].bandwidth_mbps = 22.5;
    services[1].bandwidth_mbps = 0.96;

    std::vector<ServiceRequest> reqs;
    reqs.push_back(ServiceRequest{"a0", "fl@t0", 0, 22.5, 300.0});

    auto b = build_sjspr(snap, reqs, services);
    std::printf("model: %zu vars, %zu cons\n", b.model.num_variables(), b.model.num_constraints());
    for (const auto& [fam, cnt] : b.vm.census) std::printf("  %s: %ld\n", fam.c_str(), cnt);

    SolveParams p;
    p.rel_gap = 0.0;
    auto sol = solve_milp(b.model, p);
    std::printf("status=%s obj=%.6f nodes=%ld iters=%ld\n", to_string(sol.status), sol.objective,
                sol.nodes, sol.lp_iterations);

    // shared instance: two requests of same type, one instance suffices
    std::vector<ServiceRequest> reqs2 = reqs;
    reqs2.push_back(ServiceRequest{"a1", "fl@t0", 0, 22.5, 300.0});
    auto b2 = build_sjspr(snap, reqs2, services);
    auto sol2 = solve_milp(b2.model, p);
    double n_total = 0;
    for (int j = 0; j < 1; ++j)
        n_total += sol2.values[static_cast<size_t>(b2.vm.slots[0].n[0][0])];
    std::printf("two requests: status=%s obj=%.6f n[dc1,video]=%.1f\n", to_string(sol2.status),
                sol2.objective, n_total);

    // VoIP with 110ms-only path -> infeasible
    std::vector<std::tuple<std::string, std::string, LinkAttrs>> links3;
    links3.emplace_back("fl@t0", "dc1", LinkAttrs{60.0, 110.0, 100.0});
    auto snap3 = SaginSnapshot::from_links(0, nodes, links3);
    std::vector<ServiceRequest> reqs3;
    reqs3.push_back(ServiceRequest{"v0", "fl@t0", 1, 0.96, 100.0});
    auto b3 = build_sjspr(snap3, reqs3, services);
    auto sol3 = solve_milp(b3.model, p);
    std::printf("voip 110ms: status=%s (prescreen warnings: %zu)\n", to_string(sol3.status),
                b3.vm.prescreen_warnings.size());
    return 0;
}
