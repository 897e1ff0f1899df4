// Copyright 2026-present the nltrans project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nltrans/oracle.hpp"
#include "nltrans/problem_json.hpp"
#include "nltrans/render.hpp"
#include "nltrans/solvers.hpp"

namespace {

using nlohmann::json;
using namespace nltrans;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(round_12sig(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json kkt_to_json(const KktReport& report) {
    return {{"w", matrix_to_json(report.w)},
            {"cs", matrix_to_json(report.cs)},
            {"max_stationarity_violation", round_12sig(report.max_stationarity_violation)},
            {"max_nonneg_violation", round_12sig(report.max_nonneg_violation)},
            {"max_cs_violation", round_12sig(report.max_cs_violation)},
            {"satisfied", report.satisfied}};
}

json trace_to_json(const Trace& trace) {
    json out = json::array();
    for (const TraceRecord& r : trace) {
        json rec = {{"iteration", r.iteration},
                    {"entering", {r.entering.row, r.entering.col}},
                    {"theta", round_12sig(r.theta)},
                    {"objective_before", round_12sig(r.objective_before)},
                    {"objective_after", round_12sig(r.objective_after)},
                    {"basis_changed", r.basis_changed}};
        // lambda weighs the current point: 1 keeps it, 0 accepts the full
        // pivot point; null outside the convex simplex.
        if (r.case_tag > 0) {
            rec["case"] = r.case_tag;
            rec["lambda"] = round_12sig(r.lambda);
        } else {
            rec["case"] = nullptr;
            rec["lambda"] = nullptr;
        }
        out.push_back(rec);
    }
    return out;
}

std::uint64_t oracle_cap_from_env() {
    const char* env = std::getenv("NLTRANS_ORACLE_CAP");
    if (env == nullptr || *env == '\0') return kDefaultTreeCap;
    return std::strtoull(env, nullptr, 10);
}

struct CliConfig {
    std::string input;
    std::string algorithm = "auto";
    std::string ibfs = "northwest";
    std::string format = "json";
    double tol = kDefaultKktTol;
    int max_iters = 10000;
    bool trace = false;
    bool emit_kkt = false;
    bool oracle = false;
};

int run_solve(const CliConfig& cfg) {
    Problem problem = balance(load_problem(cfg.input));
    validate(problem);

    SolverOptions options;
    options.tol = cfg.tol;
    options.max_iterations = cfg.max_iters;
    options.trace = cfg.trace;
    if (cfg.ibfs == "northwest") options.ibfs_rule = IbfsRule::NorthwestCorner;
    else if (cfg.ibfs == "vogel") options.ibfs_rule = IbfsRule::Vogel;
    else if (cfg.ibfs == "rowmin") options.ibfs_rule = IbfsRule::RowMinima;
    else options.ibfs_rule = IbfsRule::LeastCost;

    SolveResult result;
    if (cfg.algorithm == "auto") result = solve(problem, options);
    else if (cfg.algorithm == "linear") result = solve_linear(problem, options);
    else if (cfg.algorithm == "concave") result = solve_concave(problem, options);
    else result = solve_convex(problem, options);
    const Solution& sol = result.solution;

    double oracle_optimum = 0.0;
    double oracle_gap = 0.0;
    std::uint64_t oracle_vertices = 0;
    bool oracle_is_vertex_based = false;
    if (cfg.oracle) {
        const CostClass cls = classify(problem);
        if (cls == CostClass::Linear || cls == CostClass::Concave) {
            const VertexCatalog catalog =
                enumerate_vertices(problem, oracle_cap_from_env());
            oracle_vertices = catalog.entries.size();
            const VertexEntry* best = nullptr;
            for (const VertexEntry& entry : catalog.entries) {
                if (best == nullptr || entry.objective < best->objective) {
                    best = &entry;
                }
            }
            if (best == nullptr) throw Error("no feasible vertex found");
            oracle_optimum = best->objective;
            oracle_is_vertex_based = true;
        } else if (cls == CostClass::Convex) {
            oracle_optimum = convex_reference(problem, 1e-6);
        } else {
            throw Error("no oracle is available for mixed cost classes");
        }
        oracle_gap = sol.objective - oracle_optimum;
    }

    if (cfg.format == "json") {
        json doc;
        doc["status"] = to_string(sol.status);
        doc["cost_class"] = to_string(classify(problem));
        doc["objective"] = round_12sig(sol.objective);
        doc["iterations"] = sol.iterations;
        doc["allocation"] = matrix_to_json(sol.x);
        json basis = json::array();
        for (const Cell& c : sol.basis.cells()) basis.push_back({c.row, c.col});
        doc["basis"] = basis;
        if (cfg.emit_kkt) doc["kkt"] = kkt_to_json(sol.kkt);
        if (cfg.trace) doc["trace"] = trace_to_json(result.trace);
        if (cfg.oracle) {
            doc["oracle_gap"] = round_12sig(oracle_gap);
            json oracle = {{"optimum", round_12sig(oracle_optimum)}};
            if (oracle_is_vertex_based) oracle["vertices"] = oracle_vertices;
            doc["oracle"] = oracle;
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "status:     " << to_string(sol.status) << "\n";
        std::cout << "objective:  " << round_12sig(sol.objective) << "\n";
        std::cout << "iterations: " << sol.iterations << "\n\n";
        std::cout << render_tableau(problem, sol.x, sol.basis);
        if (cfg.emit_kkt) {
            std::cout << "\nkkt satisfied: " << (sol.kkt.satisfied ? "yes" : "no")
                      << " (stationarity " << sol.kkt.max_stationarity_violation
                      << ", nonneg " << sol.kkt.max_nonneg_violation
                      << ", slackness " << sol.kkt.max_cs_violation << ")\n";
        }
        if (cfg.oracle) {
            std::cout << "\noracle optimum: " << round_12sig(oracle_optimum)
                      << "  gap: " << round_12sig(oracle_gap) << "\n";
        }
    }
    return sol.status == SolveStatus::IterationLimit ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solver for transportation problems with linear, convex or "
                 "volume-discount (concave) shipping costs"};
    app.require_subcommand(1);

    CliConfig cfg;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a problem file");
    solve_cmd->add_option("input", cfg.input, "problem JSON file")->required();
    solve_cmd->add_option("--algorithm", cfg.algorithm, "solution algorithm")
        ->check(CLI::IsMember({"auto", "linear", "concave", "convex"}));
    solve_cmd->add_option("--ibfs", cfg.ibfs, "initial basic solution rule")
        ->check(CLI::IsMember({"northwest", "vogel", "rowmin", "leastcost"}));
    solve_cmd->add_option("--tol", cfg.tol, "KKT tolerance")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-iters", cfg.max_iters, "iteration limit")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--trace", cfg.trace, "record per-iteration history");
    solve_cmd->add_flag("--emit-kkt", cfg.emit_kkt, "include the KKT certificate");
    solve_cmd->add_flag("--oracle", cfg.oracle,
                        "compare against the brute-force reference");
    solve_cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        return run_solve(cfg);
    } catch (const nltrans::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
