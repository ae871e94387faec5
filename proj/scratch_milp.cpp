// randomized cross-check of branch-and-bound against integer enumeration
#include <cstdio>
#include <cmath>
#include <vector>

#include "sjspr/milp/branch_and_bound.hpp"

using namespace sjspr;

int main() {
    int mismatches = 0, feas = 0, infeas = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Rng rng(77000 + trial);
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        const int m = static_cast<int>(rng.uniform_int(1, 6));
        MilpModel model;
        std::vector<int> lo(n), hi(n);
        for (int j = 0; j < n; ++j) {
            lo[j] = static_cast<int>(rng.uniform_int(0, 2));
            hi[j] = lo[j] + static_cast<int>(rng.uniform_int(0, 3));
            model.add_variable(VarKind::Integer, lo[j], hi[j], "z" + std::to_string(j));
        }
        std::vector<LinearExpr> rows(m);
        std::vector<Sense> senses(m);
        std::vector<double> rhs(m);
        std::vector<std::vector<double>> coef(m, std::vector<double>(n, 0.0));
        for (int i = 0; i < m; ++i) {
            const int nz = static_cast<int>(rng.uniform_int(1, n));
            for (int t = 0; t < nz; ++t) {
                const int v = static_cast<int>(rng.uniform_int(0, n - 1));
                const double c = std::round(rng.uniform(-3.0, 3.0));
                rows[i].add(v, c);
                coef[i][v] += c;
            }
            const int s = static_cast<int>(rng.uniform_int(0, 1));
            senses[i] = (s == 0) ? Sense::Le : Sense::Ge;
            { double lhs0 = 0.0; for (int v = 0; v < n; ++v) lhs0 += coef[i][v] * lo[v]; rhs[i] = std::round(lhs0 + ((senses[i]==Sense::Le) ? rng.uniform(0.0, 6.0) : -rng.uniform(0.0, 6.0))); }
            model.add_constraint(rows[i], senses[i], rhs[i]);
        }
        LinearExpr obj;
        std::vector<double> c(n);
        for (int j = 0; j < n; ++j) {
            c[j] = std::round(rng.uniform(-5.0, 5.0));
            obj.add(j, c[j]);
        }
        model.set_objective(obj);

        // enumeration oracle
        double best = kInf;
        std::vector<int> z(n);
        const auto recurse = [&](auto&& self, int j) -> void {
            if (j == n) {
                for (int i = 0; i < m; ++i) {
                    double lhs = 0.0;
                    for (int v = 0; v < n; ++v) lhs += coef[i][v] * z[v];
                    if (senses[i] == Sense::Le && lhs > rhs[i] + 1e-9) return;
                    if (senses[i] == Sense::Ge && lhs < rhs[i] - 1e-9) return;
                }
                double o = 0.0;
                for (int v = 0; v < n; ++v) o += c[v] * z[v];
                best = std::min(best, o);
                return;
            }
            for (int v = lo[j]; v <= hi[j]; ++v) {
                z[j] = v;
                self(self, j + 1);
            }
        };
        recurse(recurse, 0);

        SolveParams p;
        p.rel_gap = 0.0;
        Solution s;
        try {
            s = solve_milp(model, p);
        } catch (const std::exception& ex) {
            std::printf("trial %d threw: %s\n", trial, ex.what());
            ++mismatches;
            continue;
        }
        if (best == kInf) {
            if (s.status != SolveStatus::Infeasible) {
                std::printf("trial %d: oracle infeasible, solver %s\n", trial, to_string(s.status));
                ++mismatches;
            } else {
                ++infeas;
            }
        } else {
            if (s.status != SolveStatus::Optimal || std::abs(s.objective - best) > 1e-6) {
                std::printf("trial %d: oracle %.6f solver %s %.6f\n", trial, best,
                            to_string(s.status), s.objective);
                ++mismatches;
            } else {
                ++feas;
                // determinism: re-solve must match bit for bit
                Solution s2 = solve_milp(model, p);
                if (s2.objective != s.objective || s2.values != s.values ||
                    s2.status != s.status) {
                    std::printf("trial %d: nondeterministic resolve\n", trial);
                    ++mismatches;
                }
                // weak duality
                if (s.best_bound > s.objective + 1e-9) {
                    std::printf("trial %d: best_bound %.9f > objective %.9f\n", trial,
                                s.best_bound, s.objective);
                    ++mismatches;
                }
            }
        }
    }
    std::printf("done: feas=%d infeas=%d mismatches=%d\n", feas, infeas, mismatches);
    return mismatches == 0 ? 0 : 1;
}
