#pragma once

// Branch and bound on top of the LP engine: best-bound node selection,
// branching on the most fractional integer variable (ties: lowest variable
// id), dual-simplex warm starts from the parent basis, and a relative
// optimality gap termination matching SolveParams::rel_gap.

#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/log.hpp"
#include "sjspr/milp/model.hpp"
#include "sjspr/milp/simplex.hpp"

namespace sjspr {

// Exact LP relaxation solve (integrality dropped).
inline Solution solve_lp(const MilpModel& model, const SolveParams& params = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    LpSolver solver(model);
    const LpSolver::Result res = solver.solve();
    Solution sol;
    sol.status = res.status;
    sol.lp_iterations = res.iterations;
    if (res.status == SolveStatus::Optimal) {
        sol.values = res.x;
        sol.objective = res.objective;
        sol.best_bound = res.objective;
        sol.gap = 0.0;
        const auto viols = validate_solution(model, sol.values, params.feasibility_tol * 10.0,
                                             kInf /* integrality not required */);
        if (!viols.empty())
            throw SolverError("LP solution failed validation: " + viols.front().what);
    }
    sol.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

namespace detail {

struct BnbNode {
    double bound;
    long seq;
    std::vector<LpSolver::BoundOverride> overrides;
    std::shared_ptr<const LpSolver::Basis> warm;
};

struct NodeOrder {
    bool operator()(const BnbNode& a, const BnbNode& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.seq < b.seq;  // ties: newest first, so equal-bound runs dive
    }
};

inline double effective_bound(const MilpModel& model,
                              const std::vector<LpSolver::BoundOverride>& overrides, int var,
                              bool upper) {
    double lo = model.variables()[static_cast<size_t>(var)].lb;
    double hi = model.variables()[static_cast<size_t>(var)].ub;
    for (const auto& [v, b] : overrides)
        if (v == var) {
            lo = b.first;
            hi = b.second;
        }
    return upper ? hi : lo;
}

}  // namespace detail

// Built-in exact MILP solve. Deterministic: identical model and params give
// identical status, objective, and incumbent values.
inline Solution solve_milp(const MilpModel& model, const SolveParams& params = {}) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto elapsed = [&t0] {
        return std::chrono::duration<double>(clock::now() - t0).count();
    };

    std::vector<int> int_vars;
    for (const auto& v : model.variables())
        if (v.is_integral()) {
            if (v.lb == -kInf || v.ub == kInf)
                throw InputError("integer variable " + v.name + " must be bounded");
            int_vars.push_back(v.id);
        }
    if (params.rel_gap < 0.0) throw InputError("rel_gap must be >= 0");

    LpSolver solver(model);
    long total_lp_iters = 0;
    long nodes_solved = 0;  // beyond the root

    const LpSolver::Result root = solver.solve();
    total_lp_iters += root.iterations;
    if (root.status != SolveStatus::Optimal) {
        Solution sol;
        sol.status = root.status;  // Infeasible or Unbounded
        sol.lp_iterations = total_lp_iters;
        sol.wall_time_s = elapsed();
        return sol;
    }

    const double int_tol = params.integrality_tol;
    const auto fractional_var = [&](const std::vector<double>& x) {
        int best = -1;
        double best_score = 1.0;
        for (int v : int_vars) {
            const double val = x[static_cast<size_t>(v)];
            const double frac = val - std::floor(val);
            if (frac < int_tol || frac > 1.0 - int_tol) continue;
            const double score = std::abs(frac - 0.5);  // most fractional first
            if (score < best_score - 1e-12) {
                best_score = score;
                best = v;
            }
        }
        return best;
    };

    std::vector<double> incumbent;
    double incumbent_obj = kInf;
    bool have_incumbent = false;

    std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>, detail::NodeOrder> open;
    long seq = 0;
    open.push(detail::BnbNode{root.objective, seq++, {}, root.basis});

    // the root result doubles as the first node's LP solution
    std::shared_ptr<const LpSolver::Result> pending_root =
        std::make_shared<const LpSolver::Result>(root);

    bool hit_limit = false;
    double best_open_bound = root.objective;

    const auto rel = [](double num, double den) { return num / std::max(std::abs(den), 1e-10); };
    const auto cannot_improve = [&](double bound) {
        return have_incumbent &&
               bound >= incumbent_obj - 1e-9 * std::max(1.0, std::abs(incumbent_obj));
    };

    while (!open.empty()) {
        best_open_bound = open.top().bound;
        if (have_incumbent) {
            const double gap = rel(incumbent_obj - best_open_bound, incumbent_obj);
            if (gap <= params.rel_gap + 1e-12) break;
            if (cannot_improve(best_open_bound)) break;  // nothing left that can improve
        }
        if (params.time_limit_s > 0.0 && elapsed() > params.time_limit_s) {
            hit_limit = true;
            break;
        }
        if (params.node_limit > 0 && nodes_solved >= params.node_limit) {
            hit_limit = true;
            break;
        }

        detail::BnbNode node = open.top();
        open.pop();
        if (cannot_improve(node.bound)) continue;

        // process the node, then plunge: keep following one child so an
        // integral incumbent appears early; siblings go onto the heap
        bool node_is_root = node.overrides.empty() && pending_root != nullptr;
        while (true) {
            LpSolver::Result res;
            if (node_is_root) {
                res = *pending_root;
                pending_root.reset();
                node_is_root = false;
            } else {
                res = solver.solve(node.overrides, node.warm.get());
                total_lp_iters += res.iterations;
                ++nodes_solved;
            }
            if (res.status == SolveStatus::Infeasible) break;
            if (res.status != SolveStatus::Optimal)
                throw SolverError("node LP returned unexpected status " +
                                  std::string(to_string(res.status)));

            const double bound = std::max(res.objective, node.bound);
            if (cannot_improve(bound)) break;

            const int branch_var = fractional_var(res.x);
            if (branch_var < 0) {
                if (!have_incumbent || res.objective < incumbent_obj) {
                    incumbent = res.x;
                    incumbent_obj = res.objective;
                    have_incumbent = true;
                }
                break;
            }

            if (params.time_limit_s > 0.0 && elapsed() > params.time_limit_s) {
                hit_limit = true;
                open.push(detail::BnbNode{bound, seq++, std::move(node.overrides), res.basis});
                break;
            }
            if (params.node_limit > 0 && nodes_solved >= params.node_limit) {
                hit_limit = true;
                open.push(detail::BnbNode{bound, seq++, std::move(node.overrides), res.basis});
                break;
            }

            const double val = res.x[static_cast<size_t>(branch_var)];
            const double lo = detail::effective_bound(model, node.overrides, branch_var, false);
            const double hi = detail::effective_bound(model, node.overrides, branch_var, true);
            const bool follow_up = (val - std::floor(val)) >= 0.5;

            auto down = node.overrides;
            down.emplace_back(branch_var, std::make_pair(lo, std::floor(val)));
            auto up = node.overrides;
            up.emplace_back(branch_var, std::make_pair(std::ceil(val), hi));

            if (follow_up) {
                open.push(detail::BnbNode{bound, seq++, std::move(down), res.basis});
                node = detail::BnbNode{bound, seq++, std::move(up), res.basis};
            } else {
                open.push(detail::BnbNode{bound, seq++, std::move(up), res.basis});
                node = detail::BnbNode{bound, seq++, std::move(down), res.basis};
            }
        }
        if (hit_limit) break;
    }

    Solution sol;
    sol.nodes = nodes_solved;
    sol.lp_iterations = total_lp_iters;
    sol.wall_time_s = elapsed();

    double lb = open.empty() ? incumbent_obj : std::min(open.top().bound, incumbent_obj);
    if (!have_incumbent) {
        if (hit_limit) {
            sol.status = SolveStatus::LimitHit;  // no incumbent to report
            sol.best_bound = open.empty() ? kInf : open.top().bound;
        } else {
            sol.status = SolveStatus::Infeasible;
        }
        return sol;
    }

    sol.values = incumbent;
    sol.objective = incumbent_obj;
    sol.best_bound = lb;
    sol.gap = rel(incumbent_obj - lb, incumbent_obj);
    if (hit_limit)
        sol.status = SolveStatus::LimitHit;
    else if (sol.gap <= 1e-9)
        sol.status = SolveStatus::Optimal;
    else
        sol.status = SolveStatus::GapReached;

    const auto viols =
        validate_solution(model, sol.values, params.feasibility_tol, params.integrality_tol);
    if (!viols.empty())
        throw SolverError("incumbent failed validation: " + viols.front().what + " (and " +
                          std::to_string(viols.size() - 1) + " more)");
    return sol;
}

}  // namespace sjspr
