#pragma once

// Command pipeline shared by the CLI and the test suites: build, solve,
// sweep, validate. Every artifact is written deterministically from
// (config, seed); solve re-validates the raw solution and the decoded plan
// before anything is persisted.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sjspr/common.hpp"
#include "sjspr/evaluation.hpp"
#include "sjspr/formulations.hpp"
#include "sjspr/log.hpp"
#include "sjspr/scenario.hpp"

namespace sjspr {

struct RunConfig {
    std::string config_path;
    std::string mode = "ma";  // static | ma | rollout
    std::string out_dir = "out";
    bool export_models = false;

    // overrides; NaN / 0 / empty = keep the config-file or default value
    double delta = std::numeric_limits<double>::quiet_NaN();
    double rel_gap = 0.05;
    double time_limit_s = 0.0;
    bool have_seed = false;
    std::uint64_t seed = 0;

    // sweep controls
    std::vector<double> deltas;
    std::vector<std::string> modes = {"rollout", "ma"};
    int repetitions = 3;
};

namespace detail {

inline ScenarioConfig effective_config(const RunConfig& rc) {
    ScenarioConfig cfg = load_scenario_config(rc.config_path);
    if (!std::isnan(rc.delta)) cfg.delta = rc.delta;
    if (rc.have_seed) cfg.seed = rc.seed;
    return cfg;
}

inline nlohmann::json plan_to_json(const PlacementPlan& plan) {
    nlohmann::json j;
    j["mode"] = plan.mode;
    j["dc_ids"] = plan.dc_ids;
    j["service_ids"] = plan.service_ids;
    j["slots"] = nlohmann::json::array();
    for (const auto& sp : plan.slots) {
        nlohmann::json s;
        s["slot"] = sp.slot;
        s["instances"] = sp.instances;
        s["active_links"] = sp.active_links;
        s["routes"] = nlohmann::json::array();
        for (const auto& r : sp.routes) {
            nlohmann::json rr;
            rr["request"] = r.request_id;
            rr["service"] = r.service;
            rr["dc"] = r.dc;
            rr["path"] = r.path;
            rr["delay_ms"] = r.delay_ms;
            rr["bandwidth_mbps"] = r.bandwidth_mbps;
            rr["max_delay_ms"] = r.max_delay_ms;
            s["routes"].push_back(std::move(rr));
        }
        j["slots"].push_back(std::move(s));
    }
    j["migrations"] = plan.migrations;
    if (!plan.solver_migration_values.empty())
        j["solver_migration_values"] = plan.solver_migration_values;
    j["warnings"] = plan.warnings;
    return j;
}

inline PlacementPlan plan_from_json(const nlohmann::json& j) {
    PlacementPlan plan;
    plan.mode = j.at("mode").get<std::string>();
    plan.dc_ids = j.at("dc_ids").get<std::vector<std::string>>();
    plan.service_ids = j.at("service_ids").get<std::vector<std::string>>();
    for (const auto& s : j.at("slots")) {
        SlotPlan sp;
        sp.slot = s.at("slot").get<int>();
        sp.instances = s.at("instances").get<std::vector<std::vector<long>>>();
        sp.active_links =
            s.at("active_links").get<std::vector<std::pair<std::string, std::string>>>();
        for (const auto& r : s.at("routes")) {
            RequestRoute rr;
            rr.request_id = r.at("request").get<std::string>();
            rr.service = r.at("service").get<int>();
            rr.dc = r.at("dc").get<std::string>();
            rr.path = r.at("path").get<std::vector<std::pair<std::string, std::string>>>();
            rr.delay_ms = r.at("delay_ms").get<double>();
            rr.bandwidth_mbps = r.at("bandwidth_mbps").get<double>();
            rr.max_delay_ms = r.at("max_delay_ms").get<double>();
            sp.routes.push_back(std::move(rr));
        }
        plan.slots.push_back(std::move(sp));
    }
    plan.migrations = j.at("migrations").get<std::vector<std::vector<long>>>();
    if (j.contains("solver_migration_values"))
        plan.solver_migration_values =
            j.at("solver_migration_values").get<std::vector<std::vector<double>>>();
    plan.warnings = j.at("warnings").get<std::vector<std::string>>();
    return plan;
}

inline nlohmann::json report_to_json(const CostReport& rep) {
    nlohmann::json j;
    j["mode"] = rep.mode;
    j["status"] = rep.status;
    j["deployment_cost"] = rep.deployment_cost;
    j["routing_cost"] = rep.routing_cost;
    j["migration_cost"] = rep.migration_cost;
    j["total_cost"] = rep.total_cost;
    j["migrations_total"] = rep.migrations_total;
    j["migrations"] = rep.migrations;
    j["delay"] = nlohmann::json::array();
    for (const auto& d : rep.delay) {
        nlohmann::json dd;
        dd["service"] = d.service_id;
        dd["avg_ms"] = d.avg_ms;
        dd["max_ms"] = d.max_ms;
        dd["samples"] = d.samples;
        j["delay"].push_back(std::move(dd));
    }
    j["wall_time_s"] = rep.wall_time_s;
    j["gap"] = rep.gap;
    return j;
}

inline void write_error_record(const std::string& out_dir, int code, const std::string& kind,
                               const std::string& message) {
    try {
        nlohmann::json j;
        j["exit_code"] = code;
        j["error"] = kind;
        j["message"] = message;
        write_file((std::filesystem::path(out_dir) / "error.json").string(), j.dump(2) + "\n");
    } catch (...) {
        // the original error matters more than the error record
    }
}

}  // namespace detail

struct BuildOutcome {
    Scenario scenario;
    std::string scenario_path;
    std::string summary;
};

inline BuildOutcome run_build(const RunConfig& rc) {
    const ScenarioConfig cfg = detail::effective_config(rc);
    BuildOutcome out{build_scenario(cfg), "", ""};
    out.summary = scenario_summary(out.scenario);
    out.scenario_path = (std::filesystem::path(rc.out_dir) / "scenario.txt").string();
    write_file(out.scenario_path, serialize_scenario(out.scenario));
    return out;
}

struct SolveOutcome {
    Scenario scenario;
    PlacementPlan plan;
    CostReport report;
    Solution solution;  // the (last) raw solver result
};

// Builds, solves, re-validates, and persists plan.json / report.json.
// Raw solver values are persisted as well so `validate` can re-run the
// model-level checks offline.
inline SolveOutcome run_solve(const RunConfig& rc) {
    const ScenarioConfig cfg = detail::effective_config(rc);
    SolveOutcome out{build_scenario(cfg), {}, {}, {}};
    SolveParams params;
    params.rel_gap = rc.rel_gap;
    params.time_limit_s = rc.time_limit_s;

    const std::filesystem::path outdir(rc.out_dir);

    // model-level validation happens here (solve_milp also self-checks);
    // raw values per solved model are captured for the plan file
    nlohmann::json raw = nlohmann::json::array();
    if (rc.mode == "ma") {
        SjsprBuild b = build_majspr(out.scenario);
        out.solution = solve_milp(b.model, params);
        if (!(out.solution.status == SolveStatus::Optimal ||
              out.solution.status == SolveStatus::GapReached)) {
            if (out.solution.status == SolveStatus::LimitHit && !out.solution.has_values())
                throw SolverError("solver hit its limit without an incumbent");
            throw InfeasibleError(std::string("solve ended with status ") +
                                  to_string(out.solution.status));
        }
        const auto viols = validate_solution(b.model, out.solution.values,
                                             params.feasibility_tol, params.integrality_tol);
        if (!viols.empty()) throw ValidationError("solution validation failed: " + viols.front().what);
        out.plan = decode_plan(b.model, b.vm, out.solution, out.scenario);
        out.plan.mode = "ma";
        out.report = cost_breakdown(out.plan, out.scenario);
        out.report.status = to_string(out.solution.status);
        out.report.wall_time_s = out.solution.wall_time_s;
        out.report.gap = out.solution.gap;
        raw.push_back(out.solution.values);
        if (rc.export_models) {
            std::ostringstream os;
            write_lp_format(b.model, os, "majspr");
            write_file((outdir / "majspr.lp").string(), os.str());
        }
    } else if (rc.mode == "static") {
        SjsprBuild b = build_sjspr(out.scenario.snapshots.at(0), out.scenario.requests.at(0),
                                   out.scenario.services);
        out.solution = solve_milp(b.model, params);
        if (!(out.solution.status == SolveStatus::Optimal ||
              out.solution.status == SolveStatus::GapReached)) {
            if (out.solution.status == SolveStatus::LimitHit && !out.solution.has_values())
                throw SolverError("solver hit its limit without an incumbent");
            throw InfeasibleError(std::string("solve ended with status ") +
                                  to_string(out.solution.status));
        }
        const auto viols = validate_solution(b.model, out.solution.values,
                                             params.feasibility_tol, params.integrality_tol);
        if (!viols.empty()) throw ValidationError("solution validation failed: " + viols.front().what);
        out.plan = decode_plan(b.model, b.vm, out.solution, out.scenario);
        out.plan.mode = "static";
        out.report = cost_breakdown(out.plan, out.scenario);
        out.report.status = to_string(out.solution.status);
        out.report.wall_time_s = out.solution.wall_time_s;
        out.report.gap = out.solution.gap;
        raw.push_back(out.solution.values);
        if (rc.export_models) {
            std::ostringstream os;
            write_lp_format(b.model, os, "sjspr_t0");
            write_file((outdir / "sjspr_t0.lp").string(), os.str());
        }
    } else if (rc.mode == "rollout") {
        RolloutResult rr = rollout_static(out.scenario, params);
        out.plan = std::move(rr.plan);
        out.report = cost_breakdown(out.plan, out.scenario);
        out.report.status = "Optimal";
        for (int t = 0; t < out.scenario.horizon_slots; ++t) {
            const auto& sol = rr.per_slot[static_cast<size_t>(t)];
            out.report.wall_time_s += sol.wall_time_s;
            out.report.gap = std::max(out.report.gap, sol.gap);
            if (sol.status == SolveStatus::GapReached) out.report.status = "GapReached";
            raw.push_back(sol.values);
            // per-slot validation against freshly rebuilt models
            SjsprBuild b = build_sjspr(out.scenario.snapshots[static_cast<size_t>(t)],
                                       out.scenario.requests[static_cast<size_t>(t)],
                                       out.scenario.services);
            const auto viols = validate_solution(b.model, sol.values, params.feasibility_tol,
                                                 params.integrality_tol);
            if (!viols.empty())
                throw ValidationError("slot " + std::to_string(t) +
                                      " solution validation failed: " + viols.front().what);
            if (rc.export_models) {
                std::ostringstream os;
                write_lp_format(b.model, os, "sjspr_t" + std::to_string(t));
                write_file((outdir / ("sjspr_t" + std::to_string(t) + ".lp")).string(), os.str());
            }
        }
        if (!rr.per_slot.empty()) out.solution = rr.per_slot.back();
    } else {
        throw InputError("unknown mode '" + rc.mode + "'");
    }

    // decoded-plan checks gate persistence
    const auto problems = check_plan(out.plan, out.scenario);
    if (!problems.empty()) throw ValidationError("plan check failed: " + problems.front());

    nlohmann::json pj = detail::plan_to_json(out.plan);
    pj["raw_values_per_model"] = std::move(raw);
    pj["objective"] = out.report.total_cost;
    pj["config"] = rc.config_path;
    pj["seed"] = out.scenario.rng_seed;
    pj["delta"] = out.scenario.delta;
    write_file((outdir / "plan.json").string(), pj.dump(2) + "\n");
    write_file((outdir / "report.json").string(),
               detail::report_to_json(out.report).dump(2) + "\n");
    return out;
}

struct SweepOutcome {
    SweepResult result;
    std::string results_path, summary_path;
};

inline SweepOutcome run_sweep(const RunConfig& rc) {
    ScenarioConfig cfg = detail::effective_config(rc);
    SolveParams params;
    params.rel_gap = rc.rel_gap;
    params.time_limit_s = rc.time_limit_s;
    std::vector<double> deltas = rc.deltas;
    if (deltas.empty())
        for (int i = 1; i <= 10; ++i) deltas.push_back(0.1 * i);
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < rc.repetitions; ++r)
        seeds.push_back(cfg.seed + static_cast<std::uint64_t>(r) * 1000003ULL);

    SweepOutcome out;
    out.result = sweep(cfg, deltas, rc.modes, rc.repetitions, seeds, params);
    out.results_path = (std::filesystem::path(rc.out_dir) / "results.csv").string();
    out.summary_path = (std::filesystem::path(rc.out_dir) / "summary.csv").string();
    write_file(out.results_path, sweep_rows_csv(out.result));
    write_file(out.summary_path, sweep_summary_csv(out.result));
    return out;
}

// Re-checks a previously written plan against a freshly built scenario and
// freshly rebuilt models. Returns the list of problems (empty = valid).
inline std::vector<std::string> run_validate(const RunConfig& rc, const std::string& plan_path) {
    const ScenarioConfig cfg = detail::effective_config(rc);
    const Scenario scenario = build_scenario(cfg);
    nlohmann::json pj;
    try {
        pj = nlohmann::json::parse(read_file(plan_path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError("cannot parse plan file " + plan_path + ": " + e.what());
    }
    PlacementPlan plan = detail::plan_from_json(pj);
    std::vector<std::string> problems = check_plan(plan, scenario);

    if (pj.contains("raw_values_per_model")) {
        const auto raw = pj["raw_values_per_model"].get<std::vector<std::vector<double>>>();
        SolveParams params;
        if (plan.mode == "ma" && raw.size() == 1) {
            SjsprBuild b = build_majspr(scenario);
            if (raw[0].size() != b.model.num_variables()) {
                problems.push_back("raw value vector does not match the rebuilt model");
            } else {
                for (const auto& v :
                     validate_solution(b.model, raw[0], params.feasibility_tol,
                                       params.integrality_tol))
                    problems.push_back(v.what);
            }
        } else if (plan.mode == "static" && raw.size() == 1) {
            SjsprBuild b = build_sjspr(scenario.snapshots.at(0), scenario.requests.at(0),
                                       scenario.services);
            if (raw[0].size() != b.model.num_variables()) {
                problems.push_back("raw value vector does not match the rebuilt model");
            } else {
                for (const auto& v :
                     validate_solution(b.model, raw[0], params.feasibility_tol,
                                       params.integrality_tol))
                    problems.push_back(v.what);
            }
        } else if (plan.mode == "rollout") {
            for (size_t t = 0; t < raw.size() && t < scenario.snapshots.size(); ++t) {
                SjsprBuild b = build_sjspr(scenario.snapshots[t], scenario.requests[t],
                                           scenario.services);
                if (raw[t].size() != b.model.num_variables()) {
                    problems.push_back("slot " + std::to_string(t) +
                                       ": raw values do not match the rebuilt model");
                    continue;
                }
                for (const auto& v : validate_solution(b.model, raw[t], params.feasibility_tol,
                                                       params.integrality_tol))
                    problems.push_back("slot " + std::to_string(t) + ": " + v.what);
            }
        }
    }
    return problems;
}

}  // namespace sjspr
