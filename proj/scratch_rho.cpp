#include <cstdio>
#include <chrono>
#include "sjspr/runner.hpp"
using namespace sjspr;

int main(int argc, char** argv) {
    const double rho = argc > 1 ? std::stod(argv[1]) : 0.0;
    const double gap = argc > 2 ? std::stod(argv[2]) : 0.05;
    auto cfg = load_scenario_config("data/default.cfg");
    auto sc = build_scenario(cfg);
    auto b = build_majspr(sc, rho);
    std::printf("MA model: %zu vars, %zu cons, rho=%s\n", b.model.num_variables(),
                b.model.num_constraints(), rho > 0 ? fmt_g10(rho).c_str() : "auto");
    SolveParams p;
    p.rel_gap = gap;
    p.time_limit_s = 240;
    auto t0 = std::chrono::steady_clock::now();
    auto s = solve_milp(b.model, p);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("status=%s obj=%.4f bound=%.4f gap=%.4f nodes=%ld iters=%ld time=%.1fs\n",
                to_string(s.status), s.objective, s.best_bound, s.gap, s.nodes, s.lp_iterations,
                dt);
    return 0;
}
