#pragma once

// Solver-agnostic MILP representation: variables with bounds, sparse linear
// constraints, a minimization objective, solution validation, and export in
// LP-format-compatible text for cross-checking against external solvers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "sjspr/common.hpp"

namespace sjspr {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Integer, Binary };

struct Variable {
    int id = -1;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = kInf;
    std::string name;

    bool is_integral() const { return kind != VarKind::Continuous; }
};

// Sparse linear expression. Terms are kept sorted by variable id with
// duplicates merged and zero coefficients dropped.
class LinearExpr {
  public:
    LinearExpr() = default;

    void add(int var, double coef) {
        if (coef != 0.0) terms_.emplace_back(var, coef);
        dirty_ = true;
    }

    void add_constant(double c) { constant_ += c; }

    double constant() const { return constant_; }

    const std::vector<std::pair<int, double>>& terms() const {
        normalize();
        return terms_;
    }

    double evaluate(const std::vector<double>& values) const {
        double v = constant_;
        for (const auto& [var, coef] : terms()) v += coef * values[static_cast<size_t>(var)];
        return v;
    }

  private:
    mutable std::vector<std::pair<int, double>> terms_;
    mutable bool dirty_ = false;
    double constant_ = 0.0;

    void normalize() const {
        if (!dirty_) return;
        std::sort(terms_.begin(), terms_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, double>> merged;
        merged.reserve(terms_.size());
        for (const auto& [var, coef] : terms_) {
            if (!std::isfinite(coef)) throw InputError("non-finite coefficient in expression");
            if (!merged.empty() && merged.back().first == var)
                merged.back().second += coef;
            else
                merged.emplace_back(var, coef);
        }
        std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
        terms_ = std::move(merged);
        dirty_ = false;
    }
};

enum class Sense { Le, Eq, Ge };

inline const char* to_string(Sense s) {
    switch (s) {
        case Sense::Le: return "<=";
        case Sense::Eq: return "=";
        case Sense::Ge: return ">=";
    }
    return "?";
}

struct Constraint {
    LinearExpr expr;
    Sense sense = Sense::Le;
    double rhs = 0.0;
    std::string name;
};

class MilpModel {
  public:
    int add_variable(VarKind kind, double lb, double ub, std::string name) {
        if (kind == VarKind::Binary) {
            lb = std::max(lb, 0.0);
            ub = std::min(ub, 1.0);
        }
        if (!(lb <= ub))
            throw InputError("variable " + name + ": lower bound " + fmt_g10(lb) +
                             " exceeds upper bound " + fmt_g10(ub));
        if (std::isnan(lb) || std::isnan(ub))
            throw InputError("variable " + name + ": NaN bound");
        Variable v;
        v.id = static_cast<int>(vars_.size());
        v.kind = kind;
        v.lb = lb;
        v.ub = ub;
        v.name = std::move(name);
        vars_.push_back(std::move(v));
        return vars_.back().id;
    }

    void add_constraint(LinearExpr expr, Sense sense, double rhs, std::string name = "") {
        if (!std::isfinite(rhs)) throw InputError("constraint " + name + ": non-finite rhs");
        check_expr(expr, name.empty() ? "constraint" : name);
        cons_.push_back(Constraint{std::move(expr), sense, rhs, std::move(name)});
    }

    void set_objective(LinearExpr expr) {
        check_expr(expr, "objective");
        objective_ = std::move(expr);
    }

    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return cons_; }
    const LinearExpr& objective() const { return objective_; }
    size_t num_variables() const { return vars_.size(); }
    size_t num_constraints() const { return cons_.size(); }

  private:
    std::vector<Variable> vars_;
    std::vector<Constraint> cons_;
    LinearExpr objective_;

    void check_expr(const LinearExpr& e, const std::string& where) const {
        for (const auto& [var, coef] : e.terms()) {
            (void)coef;
            if (var < 0 || var >= static_cast<int>(vars_.size()))
                throw InputError(where + ": references undeclared variable id " +
                                 std::to_string(var));
        }
    }
};

struct SolveParams {
    double rel_gap = 0.05;
    double time_limit_s = 0.0;  // 0 = unlimited
    long node_limit = 0;        // 0 = unlimited
    double feasibility_tol = 1e-7;
    double integrality_tol = 1e-6;
};

enum class SolveStatus { Optimal, GapReached, Infeasible, Unbounded, LimitHit };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::GapReached: return "GapReached";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::LimitHit: return "LimitHit";
    }
    return "?";
}

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> values;  // by variable id; empty when no incumbent exists
    double objective = std::numeric_limits<double>::quiet_NaN();
    double best_bound = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    double wall_time_s = 0.0;
    long nodes = 0;           // branch-and-bound nodes solved beyond the root
    long lp_iterations = 0;

    bool has_values() const { return !values.empty(); }
};

struct Violation {
    enum class Kind { Constraint, LowerBound, UpperBound, Integrality };
    Kind kind = Kind::Constraint;
    int index = -1;   // constraint index or variable id
    double residual = 0.0;
    std::string what;
};

// Checks every constraint, bound, and integrality requirement. Empty result
// iff the point is feasible within the tolerances.
inline std::vector<Violation> validate_solution(const MilpModel& model,
                                                const std::vector<double>& values, double tol,
                                                double integrality_tol = 1e-6) {
    if (values.size() != model.num_variables())
        throw InputError("validate_solution: expected " + std::to_string(model.num_variables()) +
                         " values, got " + std::to_string(values.size()));
    std::vector<Violation> out;
    const auto& vars = model.variables();
    for (const auto& v : vars) {
        const double x = values[static_cast<size_t>(v.id)];
        if (!std::isfinite(x)) {
            out.push_back({Violation::Kind::LowerBound, v.id, kInf, v.name + " is not finite"});
            continue;
        }
        if (x < v.lb - tol)
            out.push_back({Violation::Kind::LowerBound, v.id, v.lb - x,
                           v.name + " = " + fmt_g10(x) + " below lower bound " + fmt_g10(v.lb)});
        if (x > v.ub + tol)
            out.push_back({Violation::Kind::UpperBound, v.id, x - v.ub,
                           v.name + " = " + fmt_g10(x) + " above upper bound " + fmt_g10(v.ub)});
        if (v.is_integral()) {
            const double r = std::abs(x - std::round(x));
            if (r > integrality_tol)
                out.push_back({Violation::Kind::Integrality, v.id, r,
                               v.name + " = " + fmt_g10(x) + " is not integral"});
        }
    }
    const auto& cons = model.constraints();
    for (size_t i = 0; i < cons.size(); ++i) {
        const double lhs = cons[i].expr.evaluate(values);
        double resid = 0.0;
        switch (cons[i].sense) {
            case Sense::Le: resid = lhs - cons[i].rhs; break;
            case Sense::Ge: resid = cons[i].rhs - lhs; break;
            case Sense::Eq: resid = std::abs(lhs - cons[i].rhs); break;
        }
        if (resid > tol)
            out.push_back({Violation::Kind::Constraint, static_cast<int>(i), resid,
                           (cons[i].name.empty() ? "constraint " + std::to_string(i) : cons[i].name) +
                               " violated by " + fmt_g10(resid)});
    }
    return out;
}

namespace detail {

inline std::string lp_safe_name(const std::string& name, int id, char prefix) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
        out = std::string(1, prefix) + std::to_string(id) + "_" + out;
    return out;
}

inline void lp_write_expr(std::ostream& os, const LinearExpr& e,
                          const std::vector<std::string>& names) {
    bool first = true;
    int on_line = 0;
    for (const auto& [var, coef] : e.terms()) {
        if (first) {
            if (coef < 0.0) os << "- ";
        } else {
            os << (coef < 0.0 ? " - " : " + ");
        }
        os << fmt_g17(std::abs(coef)) << " " << names[static_cast<size_t>(var)];
        first = false;
        if (++on_line == 8) {
            os << "\n ";
            on_line = 0;
        }
    }
    if (first) os << "0 " << (names.empty() ? "x" : names[0]);
}

}  // namespace detail

// LP-format-compatible export (objective, constraints, bounds, generals,
// binaries). Constant objective terms are dropped, which LP format cannot
// carry; the exported optimum differs by exactly that constant.
inline void write_lp_format(const MilpModel& model, std::ostream& os,
                            const std::string& problem_name = "model") {
    std::vector<std::string> names;
    names.reserve(model.num_variables());
    for (const auto& v : model.variables())
        names.push_back(detail::lp_safe_name(v.name.empty() ? "v" + std::to_string(v.id) : v.name,
                                             v.id, 'v'));

    os << "\\ " << problem_name << "\n";
    if (model.objective().constant() != 0.0)
        os << "\\ objective constant " << fmt_g17(model.objective().constant())
           << " omitted from the file\n";
    os << "Minimize\n obj: ";
    detail::lp_write_expr(os, model.objective(), names);
    os << "\nSubject To\n";
    const auto& cons = model.constraints();
    for (size_t i = 0; i < cons.size(); ++i) {
        const std::string cname =
            cons[i].name.empty() ? "c" + std::to_string(i)
                                 : detail::lp_safe_name(cons[i].name, static_cast<int>(i), 'c');
        os << " " << cname << ": ";
        detail::lp_write_expr(os, cons[i].expr, names);
        os << " " << to_string(cons[i].sense) << " "
           << fmt_g17(cons[i].rhs - cons[i].expr.constant()) << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary) continue;  // covered by the Binaries section
        const auto& n = names[static_cast<size_t>(v.id)];
        if (v.lb == -kInf && v.ub == kInf)
            os << " " << n << " free\n";
        else if (v.ub == kInf)
            os << " " << fmt_g17(v.lb) << " <= " << n << "\n";
        else if (v.lb == -kInf)
            os << " -inf <= " << n << " <= " << fmt_g17(v.ub) << "\n";
        else
            os << " " << fmt_g17(v.lb) << " <= " << n << " <= " << fmt_g17(v.ub) << "\n";
    }
    bool any = false;
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Integer) {
            if (!any) os << "Generals\n";
            any = true;
            os << " " << names[static_cast<size_t>(v.id)] << "\n";
        }
    any = false;
    for (const auto& v : model.variables())
        if (v.kind == VarKind::Binary) {
            if (!any) os << "Binaries\n";
            any = true;
            os << " " << names[static_cast<size_t>(v.id)] << "\n";
        }
    os << "End\n";
}

}  // namespace sjspr
