#include <cstdio>
#include <chrono>
#include "sjspr/runner.hpp"
using namespace sjspr;
int main() {
    auto cfg = load_scenario_config("data/default.cfg");
    auto sc = build_scenario(cfg);
    auto b = build_majspr(sc);
    std::printf("MA model: %zu vars, %zu cons\n", b.model.num_variables(), b.model.num_constraints());
    auto t0 = std::chrono::steady_clock::now();
    auto lp = solve_lp(b.model);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("root LP: status=%s obj=%.4f iters=%ld time=%.2fs\n", to_string(lp.status),
                lp.objective, lp.lp_iterations, dt);
    return 0;
}
