#pragma once

// Independent LP reference: a classic dense two-phase tableau simplex with
// Bland's rule. Bounds become explicit rows, free variables split into
// positive/negative parts. Deliberately shares no code with the production
// solver so the two can check each other.

#include <cmath>
#include <limits>
#include <vector>

#include "sjspr/milp/model.hpp"

namespace oracle {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpAnswer {
    LpStatus status = LpStatus::Infeasible;
    double objective = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

constexpr double kEps = 1e-9;

struct StdForm {
    // min c'z subject to A z (sense) b, z >= 0
    std::vector<std::vector<double>> rows;
    std::vector<int> sense;  // -1 <=, 0 ==, +1 >=
    std::vector<double> rhs;
    std::vector<double> cost;
    double cost_const = 0.0;
    int ncols = 0;
};

inline LpAnswer tableau_solve(StdForm f) {
    const int m = static_cast<int>(f.rows.size());
    // normalize rhs >= 0
    for (int i = 0; i < m; ++i) {
        if (f.rhs[i] < 0.0) {
            for (auto& a : f.rows[i]) a = -a;
            f.rhs[i] = -f.rhs[i];
            f.sense[i] = -f.sense[i];
        }
    }
    // slack / surplus / artificial columns
    int ncols = f.ncols;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i)
        if (f.sense[i] != 0) slack_col[i] = ncols++;
    for (int i = 0; i < m; ++i)
        if (f.sense[i] >= 0) art_col[i] = ncols++;  // >= and == rows

    const int width = ncols + 1;  // rhs column last
    std::vector<std::vector<double>> T(m, std::vector<double>(width, 0.0));
    std::vector<int> basis(m, -1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < f.ncols; ++j) T[i][j] = f.rows[i][j];
        if (slack_col[i] >= 0) T[i][slack_col[i]] = (f.sense[i] < 0) ? 1.0 : -1.0;
        if (art_col[i] >= 0) {
            T[i][art_col[i]] = 1.0;
            basis[i] = art_col[i];
        } else {
            basis[i] = slack_col[i];
        }
        T[i][ncols] = f.rhs[i];
    }

    auto pivot = [&](int pr, int pc) {
        const double pv = T[pr][pc];
        for (int j = 0; j < width; ++j) T[pr][j] /= pv;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double k = T[i][pc];
            if (std::abs(k) < 1e-14) continue;
            for (int j = 0; j < width; ++j) T[i][j] -= k * T[pr][j];
        }
        basis[pr] = pc;
    };

    // runs Bland-rule simplex for cost vector c over the current tableau;
    // columns >= max_enter never enter (used to lock artificials out)
    auto run = [&](const std::vector<double>& c, int max_enter, bool* unbounded) -> double {
        *unbounded = false;
        while (true) {
            // reduced costs: d_j = c_j - sum_i c_basis(i) * T[i][j]
            std::vector<double> cb(m);
            for (int i = 0; i < m; ++i) cb[i] = c[basis[i]];
            int enter = -1;
            for (int j = 0; j < max_enter; ++j) {
                double d = c[j];
                for (int i = 0; i < m; ++i) d -= cb[i] * T[i][j];
                if (d < -kEps) {
                    enter = j;
                    break;  // Bland: lowest index
                }
            }
            if (enter < 0) break;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m; ++i) {
                if (T[i][enter] > kEps) {
                    const double r = T[i][ncols] / T[i][enter];
                    if (leave < 0 || r < best - 1e-12 ||
                        (r < best + 1e-12 && basis[i] < basis[leave])) {
                        best = r;
                        leave = i;
                    }
                }
            }
            if (leave < 0) {
                *unbounded = true;
                return 0.0;
            }
            pivot(leave, enter);
        }
        double obj = 0.0;
        for (int i = 0; i < m; ++i) obj += c[basis[i]] * T[i][ncols];
        return obj;
    };

    // phase 1
    int first_art = ncols;
    for (int i = 0; i < m; ++i)
        if (art_col[i] >= 0) first_art = std::min(first_art, art_col[i]);
    std::vector<double> c1(ncols, 0.0);
    for (int i = 0; i < m; ++i)
        if (art_col[i] >= 0) c1[art_col[i]] = 1.0;
    if (first_art < ncols) {
        bool unb = false;
        const double inf1 = run(c1, ncols, &unb);
        if (unb || inf1 > 1e-7) {
            LpAnswer a;
            a.status = LpStatus::Infeasible;
            return a;
        }
        // drive lingering artificials out of the basis where possible
        for (int i = 0; i < m; ++i) {
            if (art_col[i] >= 0 && basis[i] == art_col[i]) {
                int pc = -1;
                for (int j = 0; j < f.ncols && pc < 0; ++j)
                    if (std::abs(T[i][j]) > kEps) pc = j;
                if (pc >= 0) pivot(i, pc);
            }
        }
    }

    // phase 2: artificials are locked out of the entering set
    std::vector<double> c2(ncols, 0.0);
    for (int j = 0; j < f.ncols; ++j) c2[j] = f.cost[j];
    bool unb = false;
    const double obj = run(c2, first_art, &unb);
    LpAnswer a;
    if (unb) {
        a.status = LpStatus::Unbounded;
        return a;
    }
    a.status = LpStatus::Optimal;
    a.objective = obj + f.cost_const;
    return a;
}

}  // namespace detail

// Solves the LP relaxation of `model` by the dense tableau method.
inline LpAnswer solve_lp_reference(const sjspr::MilpModel& model) {
    detail::StdForm f;
    const auto& vars = model.variables();
    const int nv = static_cast<int>(vars.size());

    // column mapping of each model variable:
    //   value = sign * z[col] + shift   (plus optional second column for free vars)
    std::vector<int> col(nv, -1), col2(nv, -1);
    std::vector<double> sign(nv, 1.0), shift(nv, 0.0);
    int ncols = 0;
    for (int j = 0; j < nv; ++j) {
        const double lo = vars[j].lb, hi = vars[j].ub;
        if (lo == -sjspr::kInf && hi == sjspr::kInf) {
            col[j] = ncols++;
            col2[j] = ncols++;  // x = z1 - z2
        } else if (lo != -sjspr::kInf) {
            col[j] = ncols++;
            shift[j] = lo;  // x = z + lo
        } else {
            col[j] = ncols++;
            sign[j] = -1.0;
            shift[j] = hi;  // x = hi - z
        }
    }
    f.ncols = ncols;
    f.cost.assign(ncols, 0.0);

    auto add_row = [&f](std::vector<double> r, int sense, double rhs) {
        f.rows.push_back(std::move(r));
        f.sense.push_back(sense);
        f.rhs.push_back(rhs);
    };

    // bound rows for finite ranges
    for (int j = 0; j < nv; ++j) {
        const double lo = vars[j].lb, hi = vars[j].ub;
        if (lo != -sjspr::kInf && hi != sjspr::kInf) {
            std::vector<double> r(ncols, 0.0);
            r[col[j]] = 1.0;
            add_row(std::move(r), -1, hi - lo);  // z <= hi - lo
        }
    }

    for (const auto& c : model.constraints()) {
        std::vector<double> r(ncols, 0.0);
        double rhs = c.rhs - c.expr.constant();
        for (const auto& [v, coef] : c.expr.terms()) {
            r[col[v]] += coef * sign[v];
            if (col2[v] >= 0) r[col2[v]] -= coef;
            rhs -= coef * shift[v];
        }
        int s = 0;
        if (c.sense == sjspr::Sense::Le) s = -1;
        if (c.sense == sjspr::Sense::Ge) s = +1;
        add_row(std::move(r), s, rhs);
    }

    f.cost_const = model.objective().constant();
    for (const auto& [v, coef] : model.objective().terms()) {
        f.cost[col[v]] += coef * sign[v];
        if (col2[v] >= 0) f.cost[col2[v]] -= coef;
        f.cost_const += coef * shift[v];
    }
    return detail::tableau_solve(std::move(f));
}

}  // namespace oracle
