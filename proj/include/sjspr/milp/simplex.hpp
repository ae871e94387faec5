#pragma once

// Bounded-variable revised simplex over the sparse constraint matrix.
//
// Rows become equalities via one slack per row (slack bounds encode the
// sense). Cold solves run a two-phase primal: phase 1 drives explicit
// artificials to zero, phase 2 optimizes the true costs. Warm re-solves
// after bound changes (branch and bound) run the dual simplex from the
// previous optimal basis, falling back to a cold primal solve whenever the
// warm basis is unusable.
//
// The basis inverse is never formed: Eigen's SparseLU factorizes B every
// kRefactorInterval pivots and product-form eta vectors cover the pivots in
// between. All tie-breaking is by lowest index, so solves are deterministic.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/log.hpp"
#include "sjspr/milp/model.hpp"

namespace sjspr {

class LpSolver {
  public:
    struct Basis {
        std::vector<uint8_t> state;  // per column, VarState
        std::vector<int> basic;      // per row, column index
    };

    struct Result {
        SolveStatus status = SolveStatus::Infeasible;
        double objective = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> x;  // structural variable values
        long iterations = 0;
        std::shared_ptr<const Basis> basis;
    };

    using BoundOverride = std::pair<int, std::pair<double, double>>;

    explicit LpSolver(const MilpModel& model) {
        nstruct_ = static_cast<int>(model.num_variables());
        nrows_ = static_cast<int>(model.num_constraints());
        ncols_ = nstruct_ + 2 * nrows_;  // structurals, slacks, artificials

        cols_.resize(static_cast<size_t>(ncols_));
        base_lb_.assign(static_cast<size_t>(ncols_), 0.0);
        base_ub_.assign(static_cast<size_t>(ncols_), 0.0);
        cost_.assign(static_cast<size_t>(ncols_), 0.0);
        rhs_.assign(static_cast<size_t>(nrows_), 0.0);

        for (const auto& v : model.variables()) {
            base_lb_[static_cast<size_t>(v.id)] = v.lb;
            base_ub_[static_cast<size_t>(v.id)] = v.ub;
        }
        const auto& cons = model.constraints();
        for (int i = 0; i < nrows_; ++i) {
            const auto& c = cons[static_cast<size_t>(i)];
            rhs_[static_cast<size_t>(i)] = c.rhs - c.expr.constant();
            for (const auto& [var, coef] : c.expr.terms())
                cols_[static_cast<size_t>(var)].emplace_back(i, coef);
            const int slack = nstruct_ + i;
            cols_[static_cast<size_t>(slack)].emplace_back(i, 1.0);
            switch (c.sense) {
                case Sense::Le:
                    base_lb_[static_cast<size_t>(slack)] = 0.0;
                    base_ub_[static_cast<size_t>(slack)] = kInf;
                    break;
                case Sense::Eq:
                    base_lb_[static_cast<size_t>(slack)] = 0.0;
                    base_ub_[static_cast<size_t>(slack)] = 0.0;
                    break;
                case Sense::Ge:
                    base_lb_[static_cast<size_t>(slack)] = -kInf;
                    base_ub_[static_cast<size_t>(slack)] = 0.0;
                    break;
            }
            // artificial: unit column, pinned to 0 outside phase 1
            cols_[static_cast<size_t>(nstruct_ + nrows_ + i)].emplace_back(i, 1.0);
        }
        for (const auto& [var, coef] : model.objective().terms())
            cost_[static_cast<size_t>(var)] = coef;
        obj_constant_ = model.objective().constant();
        art_sign_.assign(static_cast<size_t>(nrows_), 1.0);
    }

    int num_structural() const { return nstruct_; }
    int num_rows() const { return nrows_; }

    // Solves min c'x subject to the model rows and (possibly overridden)
    // bounds. `warm` may carry the final basis of a related solve.
    Result solve(const std::vector<BoundOverride>& overrides = {}, const Basis* warm = nullptr) {
        lb_ = base_lb_;
        ub_ = base_ub_;
        for (const auto& [var, bounds] : overrides) {
            if (var < 0 || var >= nstruct_) throw InputError("bound override on unknown variable");
            lb_[static_cast<size_t>(var)] = bounds.first;
            ub_[static_cast<size_t>(var)] = bounds.second;
            if (bounds.first > bounds.second + 1e-12) return infeasible_result();
        }
        for (int i = 0; i < nrows_; ++i) {
            // artificials stay pinned unless phase 1 activates them
            lb_[static_cast<size_t>(art_col(i))] = 0.0;
            ub_[static_cast<size_t>(art_col(i))] = 0.0;
            art_sign_[static_cast<size_t>(i)] = 1.0;
        }
        iterations_ = 0;

        if (warm && warm->state.size() == static_cast<size_t>(ncols_) &&
            warm->basic.size() == static_cast<size_t>(nrows_)) {
            Result r;
            if (try_warm_solve(*warm, r)) return r;
            logging::debug("warm start rejected, falling back to cold solve");
        }
        return cold_solve();
    }

  private:
    enum VarState : uint8_t { NBLower = 0, NBUpper = 1, NBFree = 2, InBasis = 3 };
    enum class DualOutcome { PrimalFeasible, Infeasible, GaveUp };

    static constexpr int kRefactorInterval = 64;
    static constexpr double kPivotTol = 1e-9;   // smallest usable ratio-test rate
    static constexpr double kPivotMin = 1e-7;   // smallest accepted basis pivot
    static constexpr double kDualTol = 1e-7;
    static constexpr double kFeasTol = 1e-8;

    // immutable problem data
    int nstruct_ = 0, nrows_ = 0, ncols_ = 0;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> base_lb_, base_ub_, cost_, rhs_;
    double obj_constant_ = 0.0;

    // per-solve state
    std::vector<double> lb_, ub_, x_;
    std::vector<uint8_t> state_;
    std::vector<int> basic_;
    std::vector<double> art_sign_;
    long iterations_ = 0;

    struct Eta {
        int pos;
        double pivot;
        std::vector<std::pair<int, double>> rest;  // entries != pos
    };
    std::vector<Eta> etas_;
    // mutable: SparseLU::adjoint() is non-const although solving is read-only
    mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;

    int art_col(int row) const { return nstruct_ + nrows_ + row; }
    bool is_fixed(int j) const { return lb_[static_cast<size_t>(j)] >= ub_[static_cast<size_t>(j)]; }

    Result infeasible_result() {
        Result r;
        r.status = SolveStatus::Infeasible;
        r.iterations = iterations_;
        return r;
    }

    double col_entry_sign(int j) const {
        return (j >= nstruct_ + nrows_) ? art_sign_[static_cast<size_t>(j - nstruct_ - nrows_)] : 1.0;
    }

    // column j as (row, coef) pairs, honoring the per-solve artificial sign
    template <typename F>
    void for_col(int j, F&& f) const {
        const double s = col_entry_sign(j);
        for (const auto& [row, coef] : cols_[static_cast<size_t>(j)]) f(row, coef * s);
    }

    bool factorize() {
        using T = Eigen::Triplet<double>;
        std::vector<T> trips;
        for (int p = 0; p < nrows_; ++p)
            for_col(basic_[static_cast<size_t>(p)],
                    [&](int row, double coef) { trips.emplace_back(row, p, coef); });
        Eigen::SparseMatrix<double> B(nrows_, nrows_);
        B.setFromTriplets(trips.begin(), trips.end());
        lu_.compute(B);
        etas_.clear();
        return lu_.info() == Eigen::Success;
    }

    void refactor_or_throw() {
        if (!factorize())
            throw SolverError("numerically singular basis (rows=" + std::to_string(nrows_) +
                              ", iterations=" + std::to_string(iterations_) + ")");
    }

    Eigen::VectorXd ftran(Eigen::VectorXd v) const {
        Eigen::VectorXd w = lu_.solve(v);
        for (const auto& e : etas_) {
            const double piv = w[e.pos] / e.pivot;
            w[e.pos] = piv;
            if (piv != 0.0)
                for (const auto& [i, d] : e.rest) w[i] -= d * piv;
        }
        return w;
    }

    Eigen::VectorXd btran(Eigen::VectorXd v) const {
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double acc = v[it->pos];
            for (const auto& [i, d] : it->rest) acc -= d * v[i];
            v[it->pos] = acc / it->pivot;
        }
        return lu_.adjoint().solve(v);
    }

    Eigen::VectorXd ftran_col(int j) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(nrows_);
        for_col(j, [&](int row, double coef) { v[row] += coef; });
        return ftran(std::move(v));
    }

    void compute_basic_values() {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(nrows_);
        for (int i = 0; i < nrows_; ++i) b[i] = rhs_[static_cast<size_t>(i)];
        for (int j = 0; j < ncols_; ++j) {
            if (state_[static_cast<size_t>(j)] == InBasis) continue;
            const double xj = x_[static_cast<size_t>(j)];
            if (xj != 0.0) for_col(j, [&](int row, double coef) { b[row] -= coef * xj; });
        }
        const Eigen::VectorXd xb = ftran(std::move(b));
        for (int p = 0; p < nrows_; ++p)
            x_[static_cast<size_t>(basic_[static_cast<size_t>(p)])] = xb[p];
    }

    void set_nonbasic_values() {
        for (int j = 0; j < ncols_; ++j) {
            switch (state_[static_cast<size_t>(j)]) {
                case NBLower: x_[static_cast<size_t>(j)] = lb_[static_cast<size_t>(j)]; break;
                case NBUpper: x_[static_cast<size_t>(j)] = ub_[static_cast<size_t>(j)]; break;
                case NBFree: x_[static_cast<size_t>(j)] = 0.0; break;
                default: break;
            }
        }
    }

    std::vector<double> reduced_costs(const std::vector<double>& costs) const {
        Eigen::VectorXd cb = Eigen::VectorXd::Zero(nrows_);
        for (int p = 0; p < nrows_; ++p)
            cb[p] = costs[static_cast<size_t>(basic_[static_cast<size_t>(p)])];
        const Eigen::VectorXd y = btran(std::move(cb));
        std::vector<double> d(static_cast<size_t>(ncols_), 0.0);
        for (int j = 0; j < ncols_; ++j) {
            if (state_[static_cast<size_t>(j)] == InBasis) continue;
            double acc = costs[static_cast<size_t>(j)];
            for_col(j, [&](int row, double coef) { acc -= coef * y[row]; });
            d[static_cast<size_t>(j)] = acc;
        }
        return d;
    }

    void append_eta(int pos, const Eigen::VectorXd& d) {
        Eta e;
        e.pos = pos;
        e.pivot = d[pos];
        for (int i = 0; i < nrows_; ++i)
            if (i != pos && std::abs(d[i]) > 1e-12) e.rest.emplace_back(i, d[i]);
        etas_.push_back(std::move(e));
    }

    long iteration_limit() const { return 50000L + 60L * (nrows_ + ncols_); }

    // ---- primal simplex ----------------------------------------------------

    // Runs primal iterations for the given costs until optimality (of that
    // cost vector) or unboundedness. Assumes a primal-feasible start.
    SolveStatus primal_loop(const std::vector<double>& costs, bool phase_one) {
        long degenerate_streak = 0;
        std::vector<char> banned(static_cast<size_t>(ncols_), 0);
        bool any_banned = false;
        while (true) {
            if (++iterations_ > iteration_limit())
                throw SolverError("simplex iteration limit exceeded (" +
                                  std::to_string(iterations_) + " iterations)");
            if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
                refactor_or_throw();
                compute_basic_values();
            }
            const bool bland = degenerate_streak > std::max<long>(500, nrows_);
            const std::vector<double> d = reduced_costs(costs);

            int enter = -1, dir = 0;
            double best = 0.0;
            for (int j = 0; j < ncols_; ++j) {
                const uint8_t st = state_[static_cast<size_t>(j)];
                if (st == InBasis || is_fixed(j) || banned[static_cast<size_t>(j)]) continue;
                const double dj = d[static_cast<size_t>(j)];
                int cand_dir = 0;
                if ((st == NBLower || st == NBFree) && dj < -kDualTol) cand_dir = +1;
                else if ((st == NBUpper || st == NBFree) && dj > kDualTol) cand_dir = -1;
                if (cand_dir == 0) continue;
                if (bland) {
                    enter = j;
                    dir = cand_dir;
                    break;
                }
                if (std::abs(dj) > best + 1e-15) {
                    best = std::abs(dj);
                    enter = j;
                    dir = cand_dir;
                }
            }
            if (enter < 0) {
                if (any_banned) {
                    // retry the skipped columns once with fresh numbers
                    std::fill(banned.begin(), banned.end(), 0);
                    any_banned = false;
                    refactor_or_throw();
                    compute_basic_values();
                    const std::vector<double> d2 = reduced_costs(costs);
                    bool improving = false;
                    for (int j = 0; j < ncols_ && !improving; ++j) {
                        const uint8_t st = state_[static_cast<size_t>(j)];
                        if (st == InBasis || is_fixed(j)) continue;
                        const double dj = d2[static_cast<size_t>(j)];
                        improving = ((st == NBLower || st == NBFree) && dj < -kDualTol) ||
                                    ((st == NBUpper || st == NBFree) && dj > kDualTol);
                    }
                    if (improving) continue;
                }
                return SolveStatus::Optimal;
            }

            const Eigen::VectorXd dcol = ftran_col(enter);

            // ratio test: how far can the entering variable move
            double theta = ub_[static_cast<size_t>(enter)] - lb_[static_cast<size_t>(enter)];
            if (std::isnan(theta)) theta = kInf;
            int leave_pos = -1;
            double leave_bound = 0.0, best_piv = 0.0;
            for (int p = 0; p < nrows_; ++p) {
                const int b = basic_[static_cast<size_t>(p)];
                const double rate = -static_cast<double>(dir) * dcol[p];
                double room, t;
                if (rate < -kPivotTol) {
                    const double lbb = lb_[static_cast<size_t>(b)];
                    if (lbb == -kInf) continue;
                    room = std::max(0.0, x_[static_cast<size_t>(b)] - lbb);
                    t = room / (-rate);
                    if (t < theta - 1e-10 ||
                        (t < theta + 1e-10 && (leave_pos < 0 || std::abs(dcol[p]) > best_piv))) {
                        theta = std::min(theta, t);
                        leave_pos = p;
                        leave_bound = lbb;
                        best_piv = std::abs(dcol[p]);
                    }
                } else if (rate > kPivotTol) {
                    const double ubb = ub_[static_cast<size_t>(b)];
                    if (ubb == kInf) continue;
                    room = std::max(0.0, ubb - x_[static_cast<size_t>(b)]);
                    t = room / rate;
                    if (t < theta - 1e-10 ||
                        (t < theta + 1e-10 && (leave_pos < 0 || std::abs(dcol[p]) > best_piv))) {
                        theta = std::min(theta, t);
                        leave_pos = p;
                        leave_bound = ubb;
                        best_piv = std::abs(dcol[p]);
                    }
                }
            }

            if (leave_pos < 0) {
                if (theta == kInf) {
                    if (phase_one)
                        throw SolverError("phase-1 objective unbounded (internal inconsistency)");
                    return SolveStatus::Unbounded;
                }
                // bound flip: entering variable crosses to its other bound
                apply_step(enter, dir, theta, dcol);
                state_[static_cast<size_t>(enter)] = (dir > 0) ? NBUpper : NBLower;
                x_[static_cast<size_t>(enter)] = (dir > 0) ? ub_[static_cast<size_t>(enter)]
                                                           : lb_[static_cast<size_t>(enter)];
                degenerate_streak = (theta < 1e-10) ? degenerate_streak + 1 : 0;
                if (any_banned) {
                    std::fill(banned.begin(), banned.end(), 0);
                    any_banned = false;
                }
                continue;
            }

            if (std::abs(dcol[leave_pos]) < kPivotMin) {
                if (!etas_.empty()) {
                    refactor_or_throw();
                    compute_basic_values();
                    continue;  // retry with fresh numbers
                }
                banned[static_cast<size_t>(enter)] = 1;  // hopeless pivot column
                any_banned = true;
                continue;
            }

            apply_step(enter, dir, theta, dcol);
            const int leave = basic_[static_cast<size_t>(leave_pos)];
            x_[static_cast<size_t>(leave)] = leave_bound;
            state_[static_cast<size_t>(leave)] =
                (leave_bound == lb_[static_cast<size_t>(leave)]) ? NBLower : NBUpper;
            basic_[static_cast<size_t>(leave_pos)] = enter;
            state_[static_cast<size_t>(enter)] = InBasis;
            append_eta(leave_pos, dcol);
            degenerate_streak = (theta < 1e-10) ? degenerate_streak + 1 : 0;
            if (any_banned) {
                std::fill(banned.begin(), banned.end(), 0);
                any_banned = false;
            }
        }
    }

    void apply_step(int enter, int dir, double theta, const Eigen::VectorXd& dcol) {
        if (theta == 0.0) return;
        x_[static_cast<size_t>(enter)] += static_cast<double>(dir) * theta;
        for (int p = 0; p < nrows_; ++p) {
            const double delta = static_cast<double>(dir) * theta * dcol[p];
            if (delta != 0.0) x_[static_cast<size_t>(basic_[static_cast<size_t>(p)])] -= delta;
        }
    }

    // ---- dual simplex ------------------------------------------------------

    // Removes primal bound violations while keeping dual feasibility.
    // Assumes reduced costs are dual feasible on entry.
    DualOutcome dual_loop(long limit) {
        long taken = 0;
        while (true) {
            if (++taken > limit) return DualOutcome::GaveUp;
            ++iterations_;
            if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
                if (!factorize()) return DualOutcome::GaveUp;
                compute_basic_values();
            }

            int leave_pos = -1;
            double viol = 0.0;
            for (int p = 0; p < nrows_; ++p) {
                const int b = basic_[static_cast<size_t>(p)];
                const double v = x_[static_cast<size_t>(b)];
                const double below = lb_[static_cast<size_t>(b)] - v;
                const double above = v - ub_[static_cast<size_t>(b)];
                if (below > kFeasTol && below > std::abs(viol)) {
                    viol = -below;
                    leave_pos = p;
                }
                if (above > kFeasTol && above > std::abs(viol)) {
                    viol = above;
                    leave_pos = p;
                }
            }
            if (leave_pos < 0) return DualOutcome::PrimalFeasible;

            Eigen::VectorXd er = Eigen::VectorXd::Zero(nrows_);
            er[leave_pos] = 1.0;
            const Eigen::VectorXd rho = btran(std::move(er));
            const std::vector<double> d = reduced_costs(cost_);

            int enter = -1;
            double best_ratio = kInf, best_alpha = 0.0, alpha_enter = 0.0;
            for (int j = 0; j < ncols_; ++j) {
                const uint8_t st = state_[static_cast<size_t>(j)];
                if (st == InBasis || is_fixed(j)) continue;
                double alpha = 0.0;
                for_col(j, [&](int row, double coef) { alpha += coef * rho[row]; });
                if (std::abs(alpha) < kPivotTol) continue;
                bool ok;
                if (viol < 0.0)  // leaving variable rises to its lower bound
                    ok = (st == NBLower && alpha < 0.0) || (st == NBUpper && alpha > 0.0) ||
                         st == NBFree;
                else  // leaving variable drops to its upper bound
                    ok = (st == NBLower && alpha > 0.0) || (st == NBUpper && alpha < 0.0) ||
                         st == NBFree;
                if (!ok) continue;
                const double ratio = std::abs(d[static_cast<size_t>(j)] / alpha);
                if (ratio < best_ratio - 1e-10 ||
                    (ratio < best_ratio + 1e-10 &&
                     (enter < 0 || std::abs(alpha) > std::abs(best_alpha)))) {
                    best_ratio = std::min(best_ratio, ratio);
                    best_alpha = alpha;
                    alpha_enter = alpha;
                    enter = j;
                }
            }
            if (enter < 0) return DualOutcome::Infeasible;  // dual unbounded

            const Eigen::VectorXd dcol = ftran_col(enter);
            const double alpha = dcol[leave_pos];
            if (std::abs(alpha) < kPivotMin || alpha * alpha_enter < 0.0) {
                if (!etas_.empty()) {
                    if (!factorize()) return DualOutcome::GaveUp;
                    compute_basic_values();
                    continue;
                }
                return DualOutcome::GaveUp;
            }

            const int leave = basic_[static_cast<size_t>(leave_pos)];
            const double target =
                (viol < 0.0) ? lb_[static_cast<size_t>(leave)] : ub_[static_cast<size_t>(leave)];
            const double step = (x_[static_cast<size_t>(leave)] - target) / alpha;
            x_[static_cast<size_t>(enter)] += step;
            for (int p = 0; p < nrows_; ++p) {
                const double delta = step * dcol[p];
                if (delta != 0.0) x_[static_cast<size_t>(basic_[static_cast<size_t>(p)])] -= delta;
            }
            x_[static_cast<size_t>(leave)] = target;
            state_[static_cast<size_t>(leave)] =
                (target == lb_[static_cast<size_t>(leave)]) ? NBLower : NBUpper;
            basic_[static_cast<size_t>(leave_pos)] = enter;
            state_[static_cast<size_t>(enter)] = InBasis;
            append_eta(leave_pos, dcol);
        }
    }

    // ---- solve drivers -----------------------------------------------------

    Result cold_solve() {
        state_.assign(static_cast<size_t>(ncols_), NBLower);
        basic_.assign(static_cast<size_t>(nrows_), -1);
        x_.assign(static_cast<size_t>(ncols_), 0.0);

        for (int j = 0; j < ncols_; ++j) {
            const double lo = lb_[static_cast<size_t>(j)], hi = ub_[static_cast<size_t>(j)];
            if (lo != -kInf) state_[static_cast<size_t>(j)] = NBLower;
            else if (hi != kInf) state_[static_cast<size_t>(j)] = NBUpper;
            else state_[static_cast<size_t>(j)] = NBFree;
        }
        for (int i = 0; i < nrows_; ++i) {
            basic_[static_cast<size_t>(i)] = nstruct_ + i;  // slack basis
            state_[static_cast<size_t>(nstruct_ + i)] = InBasis;
        }
        set_nonbasic_values();
        refactor_or_throw();
        compute_basic_values();

        // phase 1: artificials absorb slack bound violations
        std::vector<double> phase1_cost(static_cast<size_t>(ncols_), 0.0);
        bool need_phase1 = false;
        for (int i = 0; i < nrows_; ++i) {
            const int slack = nstruct_ + i;
            const double v = x_[static_cast<size_t>(slack)];
            const double lo = lb_[static_cast<size_t>(slack)], hi = ub_[static_cast<size_t>(slack)];
            double clamped, viol;
            if (v < lo - kFeasTol) {
                clamped = lo;
                viol = v - lo;
            } else if (v > hi + kFeasTol) {
                clamped = hi;
                viol = v - hi;
            } else {
                continue;
            }
            need_phase1 = true;
            const int art = art_col(i);
            art_sign_[static_cast<size_t>(i)] = (viol > 0.0) ? 1.0 : -1.0;
            lb_[static_cast<size_t>(art)] = 0.0;
            ub_[static_cast<size_t>(art)] = kInf;
            basic_[static_cast<size_t>(i)] = art;
            state_[static_cast<size_t>(art)] = InBasis;
            state_[static_cast<size_t>(slack)] = (clamped == lo) ? NBLower : NBUpper;
            x_[static_cast<size_t>(slack)] = clamped;
            phase1_cost[static_cast<size_t>(art)] = 1.0;
        }

        if (need_phase1) {
            refactor_or_throw();
            compute_basic_values();
            primal_loop(phase1_cost, /*phase_one=*/true);
            double infeas = 0.0;
            for (int i = 0; i < nrows_; ++i) infeas += x_[static_cast<size_t>(art_col(i))];
            if (infeas > 1e-6) return infeasible_result();
            for (int i = 0; i < nrows_; ++i) {
                const int art = art_col(i);
                lb_[static_cast<size_t>(art)] = 0.0;
                ub_[static_cast<size_t>(art)] = 0.0;
                if (state_[static_cast<size_t>(art)] != InBasis) {
                    state_[static_cast<size_t>(art)] = NBLower;
                    x_[static_cast<size_t>(art)] = 0.0;
                }
            }
        }

        const SolveStatus st = primal_loop(cost_, /*phase_one=*/false);
        if (st == SolveStatus::Unbounded) {
            Result r;
            r.status = SolveStatus::Unbounded;
            r.iterations = iterations_;
            return r;
        }
        return finish_optimal();
    }

    bool try_warm_solve(const Basis& warm, Result& out) {
        state_ = warm.state;
        basic_ = warm.basic;
        x_.assign(static_cast<size_t>(ncols_), 0.0);

        // repair nonbasic states against the current bounds
        for (int j = 0; j < ncols_; ++j) {
            uint8_t& st = state_[static_cast<size_t>(j)];
            if (st == InBasis) continue;
            const double lo = lb_[static_cast<size_t>(j)], hi = ub_[static_cast<size_t>(j)];
            if (st == NBLower && lo == -kInf) st = (hi != kInf) ? NBUpper : NBFree;
            if (st == NBUpper && hi == kInf) st = (lo != -kInf) ? NBLower : NBFree;
            if (st == NBFree && lo != -kInf) st = NBLower;
        }
        set_nonbasic_values();
        if (!factorize()) return false;
        compute_basic_values();

        // dual feasibility, flipping bounded nonbasics when possible
        const std::vector<double> d = reduced_costs(cost_);
        bool flipped = false;
        for (int j = 0; j < ncols_; ++j) {
            uint8_t& st = state_[static_cast<size_t>(j)];
            if (st == InBasis || is_fixed(j)) continue;
            const double dj = d[static_cast<size_t>(j)];
            if (st == NBLower && dj < -kDualTol) {
                if (ub_[static_cast<size_t>(j)] == kInf) return false;
                st = NBUpper;
                flipped = true;
            } else if (st == NBUpper && dj > kDualTol) {
                if (lb_[static_cast<size_t>(j)] == -kInf) return false;
                st = NBLower;
                flipped = true;
            } else if (st == NBFree && std::abs(dj) > kDualTol) {
                return false;
            }
        }
        if (flipped) {
            set_nonbasic_values();
            compute_basic_values();
        }

        switch (dual_loop(20000L + 20L * nrows_)) {
            case DualOutcome::PrimalFeasible:
                out = finish_optimal();
                return true;
            case DualOutcome::Infeasible:
                out = infeasible_result();
                return true;
            case DualOutcome::GaveUp:
                return false;
        }
        return false;
    }

    Result finish_optimal() {
        // recompute from a fresh factorization to shed accumulated drift;
        // dual cleanup runs if the recomputation surfaces violations
        for (int round = 0;; ++round) {
            refactor_or_throw();
            compute_basic_values();
            double worst = 0.0;
            for (int p = 0; p < nrows_; ++p) {
                const int b = basic_[static_cast<size_t>(p)];
                worst = std::max(worst, lb_[static_cast<size_t>(b)] - x_[static_cast<size_t>(b)]);
                worst = std::max(worst, x_[static_cast<size_t>(b)] - ub_[static_cast<size_t>(b)]);
            }
            if (worst <= 1e-7) break;
            if (round >= 2 || dual_loop(2000) != DualOutcome::PrimalFeasible)
                throw SolverError("could not restore primal feasibility after refactorization");
        }

        Result r;
        r.status = SolveStatus::Optimal;
        double obj = obj_constant_;
        for (int j = 0; j < ncols_; ++j)
            obj += cost_[static_cast<size_t>(j)] * x_[static_cast<size_t>(j)];
        r.objective = obj;
        r.x.assign(x_.begin(), x_.begin() + nstruct_);
        r.iterations = iterations_;
        auto basis = std::make_shared<Basis>();
        basis->state = state_;
        basis->basic = basic_;
        r.basis = std::move(basis);
        return r;
    }
};

}  // namespace sjspr
