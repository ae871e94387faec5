#include <cstdio>
#include <chrono>
#include "sjspr/runner.hpp"
using namespace sjspr;
int main(int argc, char** argv) {
    auto cfg = load_scenario_config(argc > 1 ? argv[1] : "/tmp/mid.cfg");
    auto sc = build_scenario(cfg);
    auto b = build_majspr(sc);
    std::printf("MA model: %zu vars, %zu cons\n", b.model.num_variables(), b.model.num_constraints());
    SolveParams p; p.rel_gap = 0.05;
    auto t0 = std::chrono::steady_clock::now();
    auto s = solve_milp(b.model, p);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("MA: status=%s obj=%.2f bound=%.2f gap=%.4f nodes=%ld time=%.1fs\n",
                to_string(s.status), s.objective, s.best_bound, s.gap, s.nodes, dt);
    auto t1 = std::chrono::steady_clock::now();
    auto rr = rollout_static(sc, p);
    auto dt2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    double worst = 0;
    for (auto& ps : rr.per_slot) worst = std::max(worst, ps.wall_time_s);
    std::printf("rollout: %.1fs total, worst slot %.2fs\n", dt2, worst);
    return 0;
}
