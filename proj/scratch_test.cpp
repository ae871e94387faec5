#include <cassert>
#include <cstdio>

#include "sjspr/milp/branch_and_bound.hpp"

using namespace sjspr;

int main() {
    {
        // min x s.t. x >= 3, x in [0,10]
        MilpModel m;
        int x = m.add_variable(VarKind::Continuous, 0, 10, "x");
        LinearExpr e;
        e.add(x, 1.0);
        m.add_constraint(e, Sense::Ge, 3.0, "c");
        LinearExpr obj;
        obj.add(x, 1.0);
        m.set_objective(obj);
        auto s = solve_lp(m);
        std::printf("lp1 status=%s obj=%.9f\n", to_string(s.status), s.objective);
        assert(s.status == SolveStatus::Optimal && std::abs(s.objective - 3.0) < 1e-9);
    }
    {
        // min -x-y s.t. x+y <= 1, x,y >= 0 -> -1
        MilpModel m;
        int x = m.add_variable(VarKind::Continuous, 0, kInf, "x");
        int y = m.add_variable(VarKind::Continuous, 0, kInf, "y");
        LinearExpr e;
        e.add(x, 1);
        e.add(y, 1);
        m.add_constraint(e, Sense::Le, 1.0, "c");
        LinearExpr obj;
        obj.add(x, -1);
        obj.add(y, -1);
        m.set_objective(obj);
        auto s = solve_lp(m);
        std::printf("lp2 status=%s obj=%.9f\n", to_string(s.status), s.objective);
        assert(s.status == SolveStatus::Optimal && std::abs(s.objective + 1.0) < 1e-9);
    }
    {
        // knapsack: max 3a+4b+5c, 2a+3b+4c <= 5, binary -> 7
        MilpModel m;
        int a = m.add_variable(VarKind::Binary, 0, 1, "a");
        int b = m.add_variable(VarKind::Binary, 0, 1, "b");
        int c = m.add_variable(VarKind::Binary, 0, 1, "c");
        LinearExpr e;
        e.add(a, 2);
        e.add(b, 3);
        e.add(c, 4);
        m.add_constraint(e, Sense::Le, 5.0, "w");
        LinearExpr obj;
        obj.add(a, -3);
        obj.add(b, -4);
        obj.add(c, -5);
        m.set_objective(obj);
        SolveParams p;
        p.rel_gap = 0.0;
        auto s = solve_milp(m, p);
        std::printf("milp status=%s obj=%.9f nodes=%ld\n", to_string(s.status), s.objective, s.nodes);
        assert(s.status == SolveStatus::Optimal && std::abs(s.objective + 7.0) < 1e-9);
    }
    {
        // infeasible: x <= 1, x >= 2
        MilpModel m;
        int x = m.add_variable(VarKind::Continuous, 0, 10, "x");
        LinearExpr e1;
        e1.add(x, 1);
        m.add_constraint(e1, Sense::Le, 1.0);
        LinearExpr e2;
        e2.add(x, 1);
        m.add_constraint(e2, Sense::Ge, 2.0);
        LinearExpr obj;
        obj.add(x, 1);
        m.set_objective(obj);
        auto s = solve_lp(m);
        std::printf("lp3 status=%s\n", to_string(s.status));
        assert(s.status == SolveStatus::Infeasible);
    }
    {
        // unbounded: min -x, x >= 0, only constraint x >= 1
        MilpModel m;
        int x = m.add_variable(VarKind::Continuous, 0, kInf, "x");
        LinearExpr e;
        e.add(x, 1);
        m.add_constraint(e, Sense::Ge, 1.0);
        LinearExpr obj;
        obj.add(x, -1);
        m.set_objective(obj);
        auto s = solve_lp(m);
        std::printf("lp4 status=%s\n", to_string(s.status));
        assert(s.status == SolveStatus::Unbounded);
    }
    std::printf("scratch ok\n");
    return 0;
}
