#pragma once

// Cost, migration, and delay metrics over decoded plans, plus the
// delta-sweep experiment harness with CSV reporting.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sjspr/common.hpp"
#include "sjspr/formulations.hpp"
#include "sjspr/milp/branch_and_bound.hpp"
#include "sjspr/scenario.hpp"

namespace sjspr {

// Migrations per service type between two instance-count matrices [j][k]:
// per-DC increases minus net creations, both clipped at zero.
inline std::vector<long> migration_count(const std::vector<std::vector<long>>& n_prev,
                                         const std::vector<std::vector<long>>& n_curr) {
    return detail::eq3_migrations(n_prev, n_curr);
}

struct DelayStat {
    std::string service_id;
    double avg_ms = 0.0;
    double max_ms = 0.0;
    long samples = 0;
};

struct CostReport {
    std::string mode;
    std::string status;  // solver status string, attached by run_mode
    double deployment_cost = 0.0;
    double routing_cost = 0.0;
    double migration_cost = 0.0;
    double total_cost = 0.0;
    long migrations_total = 0;
    std::vector<std::vector<long>> migrations;  // [t][k]
    std::vector<DelayStat> delay;               // per service type
    double wall_time_s = 0.0;
    double gap = 0.0;
};

// Average and maximum decoded end-to-end delay per service type over all
// (request, slot) pairs.
inline std::vector<DelayStat> delay_stats(const PlacementPlan& plan) {
    std::vector<DelayStat> stats(plan.service_ids.size());
    for (size_t k = 0; k < plan.service_ids.size(); ++k) stats[k].service_id = plan.service_ids[k];
    long total = 0;
    for (const auto& sp : plan.slots)
        for (const auto& r : sp.routes) {
            auto& s = stats.at(static_cast<size_t>(r.service));
            s.avg_ms += r.delay_ms;
            s.max_ms = std::max(s.max_ms, r.delay_ms);
            ++s.samples;
            ++total;
        }
    if (total == 0) throw InputError("delay_stats: plan has no routed requests");
    for (auto& s : stats)
        if (s.samples > 0) s.avg_ms /= static_cast<double>(s.samples);
    return stats;
}

// Deployment / routing / migration breakdown of a decoded plan. Wall time
// and gap are solver-side figures the caller attaches afterwards.
inline CostReport cost_breakdown(const PlacementPlan& plan, const Scenario& scenario) {
    if (plan.service_ids.size()!= scenario.services.size())
        throw InputError("cost_breakdown: plan/scenario service catalogs differ");
    for (size_t k = 0; k < plan.service_ids.size(); ++k)
        if (plan.service_ids[k] != scenario.services[k].id)
            throw InputError("cost_breakdown: plan/scenario service catalogs differ");
    if (plan.slots.empty()) throw InputError("cost_breakdown: empty plan");

    CostReport rep;
    rep.mode = plan.mode;
    for (const auto& sp : plan.slots) {
        if (sp.slot < 0 || sp.slot >= scenario.horizon_slots)
            throw InputError("cost_breakdown: plan slot " + std::to_string(sp.slot) +
                             " outside the scenario horizon");
        const auto& snap = scenario.snapshots[static_cast<size_t>(sp.slot)];
        for (size_t j = 0; j < sp.instances.size(); ++j)
            for (size_t k = 0; k < sp.instances[j].size(); ++k)
                rep.deployment_cost += static_cast<double>(sp.instances[j][k]) *
                                       scenario.services[k].instance_cost;
        for (const auto& [uid, vid] : sp.active_links) {
            bool found = false;
            for (const auto& a : snap.arcs)
                if (snap.nodes[static_cast<size_t>(a.u)].id == uid &&
                    snap.nodes[static_cast<size_t>(a.v)].id == vid) {
                    rep.routing_cost += a.attrs.cost;
                    found = true;
                    break;
                }
            if (!found)
                throw InputError("cost_breakdown: active link " + uid + ">" + vid +
                                 " is not in the slot " + std::to_string(sp.slot) + " snapshot");
        }
    }
    rep.migrations = plan.migrations;
    for (size_t t = 0; t < plan.migrations.size(); ++t)
        for (size_t k = 0; k < plan.migrations[t].size(); ++k) {
            rep.migrations_total += plan.migrations[t][k];
            rep.migration_cost += static_cast<double>(plan.migrations[t][k]) *
                                  scenario.services[k].migration_cost;
        }
    rep.total_cost = rep.deployment_cost + rep.routing_cost + rep.migration_cost;
    rep.delay = delay_stats(plan);
    return rep;
}

// ---------------------------------------------------------------------------
// delta sweep

struct RunRow {
    double delta = 0.0;
    std::string mode;       // "rollout" or "ma"
    std::string flight_class;  // "short" or "long"
    std::uint64_t seed = 0;
    bool ok = false;
    std::string status;
    CostReport report;  // valid when ok
    std::string error;  // set when !ok
};

struct SweepAggregate {
    double delta = 0.0;
    std::string mode, flight_class;
    long runs = 0, successes = 0;
    // mean/stddev over successful runs
    double total_mean = 0, total_std = 0;
    double deployment_mean = 0, deployment_std = 0;
    double routing_mean = 0, routing_std = 0;
    double migration_cost_mean = 0, migration_cost_std = 0;
    double migrations_mean = 0, migrations_std = 0;
    double wall_mean = 0, wall_std = 0;
};

struct SweepResult {
    std::vector<RunRow> rows;
    std::vector<SweepAggregate> aggregates;  // grid order: class, delta, mode
    long repetitions = 0;
};

struct FlightClass {
    std::string name;
    int tau = 3;
};

namespace detail {

inline void mean_std(const std::vector<double>& v, double& mean, double& stddev) {
    mean = 0.0;
    stddev = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    stddev = std::sqrt(acc / static_cast<double>(v.size() - 1));
}

inline double delay_for(const CostReport& rep, const std::string& service_id) {
    for (const auto& d : rep.delay)
        if (d.service_id == service_id && d.samples > 0) return d.avg_ms;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

// One solved run: builds the scenario variant, solves in the requested
// mode, decodes, checks, and reports. Used by the CLI and the sweep.
inline CostReport run_mode(const Scenario& scenario, const std::string& mode,
                           const SolveParams& params, PlacementPlan* plan_out = nullptr,
                           Solution* solution_out = nullptr) {
    PlacementPlan plan;
    double wall = 0.0, gap = 0.0;
    std::string status;
    if (mode == "ma") {
        SjsprBuild b = build_majspr(scenario);
        Solution sol = solve_milp(b.model, params);
        if (!(sol.status == SolveStatus::Optimal || sol.status == SolveStatus::GapReached))
            throw InfeasibleError(std::string("ma solve ended with ") + to_string(sol.status));
        plan = decode_plan(b.model, b.vm, sol, scenario);
        plan.mode = "ma";
        wall = sol.wall_time_s;
        gap = sol.gap;
        status = to_string(sol.status);
        if (solution_out) *solution_out = sol;
    } else if (mode == "rollout" || mode == "static") {
        if (mode == "static" && scenario.horizon_slots > 1)
            logging::info("static mode on a multi-slot scenario: solving slot 0 only");
        if (mode == "static") {
            SjsprBuild b = build_sjspr(scenario.snapshots.at(0), scenario.requests.at(0),
                                       scenario.services);
            Solution sol = solve_milp(b.model, params);
            if (!(sol.status == SolveStatus::Optimal || sol.status == SolveStatus::GapReached))
                throw InfeasibleError(std::string("static solve ended with ") +
                                      to_string(sol.status));
            plan = decode_plan(b.model, b.vm, sol, scenario);
            plan.mode = "static";
            wall = sol.wall_time_s;
            gap = sol.gap;
            status = to_string(sol.status);
            if (solution_out) *solution_out = sol;
        } else {
            RolloutResult rr = rollout_static(scenario, params);
            plan = std::move(rr.plan);
            status = "Optimal";
            for (const auto& s : rr.per_slot) {
                wall += s.wall_time_s;
                gap = std::max(gap, s.gap);
                if (s.status == SolveStatus::GapReached) status = "GapReached";
            }
            if (solution_out && !rr.per_slot.empty()) *solution_out = rr.per_slot.back();
        }
    } else {
        throw InputError("unknown mode '" + mode + "' (expected static, rollout, or ma)");
    }

    const auto problems = check_plan(plan, scenario);
    if (!problems.empty())
        throw ValidationError("decoded plan failed checks: " + problems.front());

    CostReport rep = cost_breakdown(plan, scenario);
    rep.mode = plan.mode;
    rep.status = status;
    rep.wall_time_s = wall;
    rep.gap = gap;
    if (plan_out) *plan_out = std::move(plan);
    return rep;
}

// Full experiment grid: flight classes x deltas x modes x repetitions, each
// repetition with its own seed. Failures flag the row; aggregation runs
// over the successes.
inline SweepResult sweep(const ScenarioConfig& base, const std::vector<double>& deltas,
                         const std::vector<std::string>& modes, int repetitions,
                         const std::vector<std::uint64_t>& seeds, const SolveParams& params,
                         const std::vector<FlightClass>& classes = {{"short", 3}, {"long", 7}}) {
    if (deltas.empty() || modes.empty() || classes.empty())
        throw InputError("sweep: empty delta/mode/class grid");
    if (repetitions < 1) throw InputError("sweep: repetitions must be >= 1");
    if (static_cast<int>(seeds.size()) < repetitions)
        throw InputError("sweep: need one seed per repetition");

    SweepResult result;
    result.repetitions = repetitions;
    for (const auto& cls : classes) {
        for (double delta : deltas) {
            for (const auto& mode : modes) {
                for (int rep = 0; rep < repetitions; ++rep) {
                    RunRow row;
                    row.delta = delta;
                    row.mode = mode;
                    row.flight_class = cls.name;
                    row.seed = seeds[static_cast<size_t>(rep)];
                    try {
                        ScenarioConfig cfg = base;
                        cfg.delta = delta;
                        cfg.seed = row.seed;
                        cfg.flights_path.clear();
                        cfg.synthetic_flights = std::max(1, cfg.synthetic_flights);
                        cfg.synthetic_tau = cls.tau;
                        cfg.horizon_slots = 0;  // cover the generated tracks
                        const Scenario sc = build_scenario(cfg);
                        row.report = run_mode(sc, mode, params);
                        row.status = row.report.status;
                        row.ok = true;
                    } catch (const std::exception& e) {
                        row.ok = false;
                        row.error = e.what();
                        row.status = "failed";
                    }
                    result.rows.push_back(std::move(row));
                }
            }
        }
    }

    for (const auto& cls : classes) {
        for (double delta : deltas) {
            for (const auto& mode : modes) {
                SweepAggregate agg;
                agg.delta = delta;
                agg.mode = mode;
                agg.flight_class = cls.name;
                std::vector<double> total, deploy, routing, migc, migs, wall;
                for (const auto& row : result.rows) {
                    if (row.delta != delta || row.mode != mode || row.flight_class != cls.name)
                        continue;
                    ++agg.runs;
                    if (!row.ok) continue;
                    ++agg.successes;
                    total.push_back(row.report.total_cost);
                    deploy.push_back(row.report.deployment_cost);
                    routing.push_back(row.report.routing_cost);
                    migc.push_back(row.report.migration_cost);
                    migs.push_back(static_cast<double>(row.report.migrations_total));
                    wall.push_back(row.report.wall_time_s);
                }
                detail::mean_std(total, agg.total_mean, agg.total_std);
                detail::mean_std(deploy, agg.deployment_mean, agg.deployment_std);
                detail::mean_std(routing, agg.routing_mean, agg.routing_std);
                detail::mean_std(migc, agg.migration_cost_mean, agg.migration_cost_std);
                detail::mean_std(migs, agg.migrations_mean, agg.migrations_std);
                detail::mean_std(wall, agg.wall_mean, agg.wall_std);
                result.aggregates.push_back(std::move(agg));
            }
        }
    }
    return result;
}

// results.csv: one row per run.
inline std::string sweep_rows_csv(const SweepResult& res) {
    std::string out =
        "delta,mode,class,seed,deployment,routing,migration,total,migrations,"
        "avg_delay_video_ms,avg_delay_voip_ms,max_delay_ms,wall_time_s,gap,status\n";
    for (const auto& row : res.rows) {
        out += fmt_g10(row.delta) + "," + row.mode + "," + row.flight_class + "," +
               std::to_string(row.seed) + ",";
        if (row.ok) {
            double max_delay = 0.0;
            for (const auto& d : row.report.delay) max_delay = std::max(max_delay, d.max_ms);
            const double dv = detail::delay_for(row.report, "video");
            const double dp = detail::delay_for(row.report, "voip");
            out += fmt_g10(row.report.deployment_cost) + "," + fmt_g10(row.report.routing_cost) +
                   "," + fmt_g10(row.report.migration_cost) + "," + fmt_g10(row.report.total_cost) +
                   "," + std::to_string(row.report.migrations_total) + "," +
                   (std::isnan(dv) ? "" : fmt_g10(dv)) + "," + (std::isnan(dp) ? "" : fmt_g10(dp)) +
                   "," + fmt_g10(max_delay) + "," + fmt_g10(row.report.wall_time_s) + "," +
                   fmt_g10(row.report.gap) + "," + row.status + "\n";
        } else {
            out += ",,,,,,,,,," + row.status + "\n";
        }
    }
    return out;
}

// summary.csv: aggregated mean/stddev per grid point.
inline std::string sweep_summary_csv(const SweepResult& res) {
    std::string out =
        "class,delta,mode,runs,successes,total_mean,total_std,deployment_mean,deployment_std,"
        "routing_mean,routing_std,migration_cost_mean,migration_cost_std,migrations_mean,"
        "migrations_std,wall_time_mean,wall_time_std\n";
    for (const auto& a : res.aggregates) {
        out += a.flight_class + "," + fmt_g10(a.delta) + "," + a.mode + "," +
               std::to_string(a.runs) + "," + std::to_string(a.successes) + "," +
               fmt_g10(a.total_mean) + "," + fmt_g10(a.total_std) + "," +
               fmt_g10(a.deployment_mean) + "," + fmt_g10(a.deployment_std) + "," +
               fmt_g10(a.routing_mean) + "," + fmt_g10(a.routing_std) + "," +
               fmt_g10(a.migration_cost_mean) + "," + fmt_g10(a.migration_cost_std) + "," +
               fmt_g10(a.migrations_mean) + "," + fmt_g10(a.migrations_std) + "," +
               fmt_g10(a.wall_mean) + "," + fmt_g10(a.wall_std) + "\n";
    }
    return out;
}

}  // namespace sjspr
