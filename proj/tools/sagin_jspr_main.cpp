// sagin-jspr: build scenarios, solve the static / mobility-aware placement
// and routing problems, run delta sweeps, and validate written plans.
//
// Exit codes: 0 ok, 2 config/input error, 3 infeasible, 4 solver limit
// without incumbent, 5 internal validation failure.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sjspr/runner.hpp"

namespace {

std::vector<double> parse_deltas(const std::string& spec) {
    // either "a:b:step" or a comma-separated list
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        const auto parts = sjspr::split(spec, ':');
        if (parts.size() != 3) throw sjspr::InputError("--deltas expects A:B:STEP");
        const double a = sjspr::parse_double(parts[0], "deltas start");
        const double b = sjspr::parse_double(parts[1], "deltas end");
        const double step = sjspr::parse_double(parts[2], "deltas step");
        if (step <= 0.0 || b < a) throw sjspr::InputError("--deltas expects A <= B and STEP > 0");
        for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
    } else {
        for (const auto& tok : sjspr::split(spec, ','))
            out.push_back(sjspr::parse_double(sjspr::trim(tok), "delta"));
    }
    for (double d : out)
        if (d < 0.0 || d > 1.0) throw sjspr::InputError("delta values must lie in [0,1]");
    return out;
}

int dispatch(const std::string& cmd, const sjspr::RunConfig& rc, const std::string& plan_path) {
    using namespace sjspr;
    if (cmd == "build") {
        const BuildOutcome out = run_build(rc);
        std::printf("%s", out.summary.c_str());
        std::printf("scenario written to %s\n", out.scenario_path.c_str());
        return 0;
    }
    if (cmd == "solve") {
        const SolveOutcome out = run_solve(rc);
        std::printf("mode: %s\nstatus: %s\n", out.report.mode.c_str(), out.report.status.c_str());
        std::printf("deployment: %s\nrouting: %s\nmigration: %s\ntotal: %s\n",
                    fmt_g10(out.report.deployment_cost).c_str(),
                    fmt_g10(out.report.routing_cost).c_str(),
                    fmt_g10(out.report.migration_cost).c_str(),
                    fmt_g10(out.report.total_cost).c_str());
        std::printf("migrations: %ld\n", out.report.migrations_total);
        for (const auto& d : out.report.delay)
            if (d.samples > 0)
                std::printf("delay %s: avg %s ms, max %s ms\n", d.service_id.c_str(),
                            fmt_g10(d.avg_ms).c_str(), fmt_g10(d.max_ms).c_str());
        std::printf("solver: %s s wall, gap %s\n", fmt_g10(out.report.wall_time_s).c_str(),
                    fmt_g10(out.report.gap).c_str());
        std::printf("plan written to %s/plan.json\n", rc.out_dir.c_str());
        return 0;
    }
    if (cmd == "sweep") {
        const SweepOutcome out = run_sweep(rc);
        long failures = 0;
        for (const auto& row : out.result.rows) failures += row.ok ? 0 : 1;
        std::printf("sweep: %zu runs (%ld failed), %zu aggregate rows\n", out.result.rows.size(),
                    failures, out.result.aggregates.size());
        std::printf("results written to %s\nsummary written to %s\n", out.results_path.c_str(),
                    out.summary_path.c_str());
        return 0;
    }
    if (cmd == "validate") {
        const auto problems = run_validate(rc, plan_path);
        if (problems.empty()) {
            std::printf("plan %s is valid\n", plan_path.c_str());
            return 0;
        }
        for (const auto& p : problems) std::fprintf(stderr, "invalid: %s\n", p.c_str());
        return 5;
    }
    throw sjspr::InputError("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"joint service placement and routing over a space-air-ground network"};
    app.require_subcommand(1);

    sjspr::RunConfig rc;
    std::string plan_path = "out/plan.json";
    std::string deltas_spec;
    std::string modes_spec = "rollout,ma";

    auto add_common = [&](CLI::App* sub, bool with_solver) {
        sub->add_option("--config", rc.config_path, "scenario config file")->required();
        sub->add_option("--out", rc.out_dir, "output directory");
        sub->add_option("--seed", rc.seed, "override the scenario seed")
            ->each([&rc](const std::string&) { rc.have_seed = true; });
        if (with_solver) {
            sub->add_option("--delta", rc.delta, "override the migration weight in [0,1]");
            sub->add_option("--gap", rc.rel_gap, "relative optimality gap (default 0.05)");
            sub->add_option("--time-limit", rc.time_limit_s, "solver time limit in seconds");
        }
    };

    CLI::App* build = app.add_subcommand("build", "build and serialize the scenario");
    add_common(build, false);

    CLI::App* solve = app.add_subcommand("solve", "solve one mode and write plan + report");
    add_common(solve, true);
    solve->add_option("--mode", rc.mode, "static | ma | rollout");
    solve->add_flag("--export-models", rc.export_models, "write LP-format model files");

    CLI::App* sweepc = app.add_subcommand("sweep", "delta sweep with CSV reports");
    add_common(sweepc, true);
    sweepc->add_option("--deltas", deltas_spec, "grid as A:B:STEP or comma list (default 0.1:1:0.1)");
    sweepc->add_option("--modes", modes_spec, "comma list of rollout,ma");
    sweepc->add_option("--reps", rc.repetitions, "repetitions per grid point (default 3)");

    CLI::App* validate = app.add_subcommand("validate", "re-check a written plan");
    add_common(validate, false);
    validate->add_option("--plan", plan_path, "plan.json to validate");

    CLI11_PARSE(app, argc, argv);

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (!deltas_spec.empty()) rc.deltas = parse_deltas(deltas_spec);
        if (!modes_spec.empty() && cmd == "sweep") {
            rc.modes.clear();
            for (const auto& m : sjspr::split(modes_spec, ','))
                rc.modes.push_back(sjspr::trim(m));
        }
        return dispatch(cmd, rc, plan_path);
    } catch (const sjspr::InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        sjspr::detail::write_error_record(rc.out_dir, 2, "input", e.what());
        return 2;
    } catch (const sjspr::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        sjspr::detail::write_error_record(rc.out_dir, 3, "infeasible", e.what());
        return 3;
    } catch (const sjspr::SolverError& e) {
        std::fprintf(stderr, "solver: %s\n", e.what());
        sjspr::detail::write_error_record(rc.out_dir, 4, "solver", e.what());
        return 4;
    } catch (const sjspr::ValidationError& e) {
        std::fprintf(stderr, "validation: %s\n", e.what());
        sjspr::detail::write_error_record(rc.out_dir, 5, "validation", e.what());
        return 5;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        sjspr::detail::write_error_record(rc.out_dir, 2, "input", e.what());
        return 2;
    }
}
