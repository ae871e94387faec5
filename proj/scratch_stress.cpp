// randomized cross-check of the revised simplex against the dense oracle
#include <cstdio>
#include <cmath>

#include "sjspr/milp/branch_and_bound.hpp"
#include "../tests/support/lp_oracle.hpp"

using namespace sjspr;

int main() {
    int mismatches = 0, feas = 0, infeas = 0, unb = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Rng rng(1000 + trial);
        const int n = static_cast<int>(rng.uniform_int(1, 20));
        const int m = static_cast<int>(rng.uniform_int(1, 15));
        MilpModel model;
        std::vector<double> x0(n);
        for (int j = 0; j < n; ++j) {
            double lo = 0.0, hi = rng.uniform(0.5, 20.0);
            const int kind = static_cast<int>(rng.uniform_int(0, 3));
            if (kind == 1) lo = -rng.uniform(0.0, 10.0);
            if (kind == 2) hi = kInf;
            if (kind == 3 && trial % 3 == 0) { lo = -kInf; hi = kInf; }
            if (lo > hi) std::swap(lo, hi);
            model.add_variable(VarKind::Continuous, lo, hi, "x" + std::to_string(j));
            const double flo = (lo == -kInf) ? -5.0 : lo;
            const double fhi = (hi == kInf) ? flo + 5.0 : hi;
            x0[j] = rng.uniform(flo, fhi);
        }
        const bool make_feasible = trial % 4 != 3;
        for (int i = 0; i < m; ++i) {
            LinearExpr e;
            double lhs0 = 0.0;
            const int nz = static_cast<int>(rng.uniform_int(1, std::min(n, 6)));
            for (int t = 0; t < nz; ++t) {
                const int v = static_cast<int>(rng.uniform_int(0, n - 1));
                const double c = rng.uniform(-4.0, 4.0);
                e.add(v, c);
                lhs0 += c * x0[v];
            }
            const int s = static_cast<int>(rng.uniform_int(0, 2));
            double rhs;
            if (make_feasible) {
                if (s == 0) rhs = lhs0 + rng.uniform(0.0, 3.0);        // <=
                else if (s == 1) rhs = lhs0;                           // ==
                else rhs = lhs0 - rng.uniform(0.0, 3.0);               // >=
            } else {
                rhs = lhs0 + rng.uniform(-6.0, 6.0);
            }
            model.add_constraint(e, s == 0 ? Sense::Le : (s == 1 ? Sense::Eq : Sense::Ge), rhs);
        }
        LinearExpr obj;
        for (int j = 0; j < n; ++j) obj.add(j, rng.uniform(-3.0, 3.0));
        model.set_objective(obj);

        Solution mine;
        bool mine_threw = false;
        try {
            mine = solve_lp(model);
        } catch (const std::exception& ex) {
            std::printf("trial %d: solver threw: %s\n", trial, ex.what());
            mine_threw = true;
        }
        const auto ref = oracle::solve_lp_reference(model);
        if (mine_threw) { ++mismatches; continue; }
        const bool both_opt = mine.status == SolveStatus::Optimal && ref.status == oracle::LpStatus::Optimal;
        if (both_opt) {
            ++feas;
            const double diff = std::abs(mine.objective - ref.objective) /
                                std::max(1.0, std::abs(ref.objective));
            if (diff > 1e-6) {
                ++mismatches;
                std::printf("trial %d: objective mismatch mine=%.10f ref=%.10f\n", trial,
                            mine.objective, ref.objective);
            }
        } else if (mine.status == SolveStatus::Infeasible && ref.status == oracle::LpStatus::Infeasible) {
            ++infeas;
        } else if (mine.status == SolveStatus::Unbounded && ref.status == oracle::LpStatus::Unbounded) {
            ++unb;
        } else {
            ++mismatches;
            std::printf("trial %d: status mismatch mine=%s ref=%d\n", trial,
                        to_string(mine.status), static_cast<int>(ref.status));
        }
    }
    std::printf("done: feas=%d infeas=%d unbounded=%d mismatches=%d\n", feas, infeas, unb, mismatches);
    return mismatches == 0 ? 0 : 1;
}
