#pragma once

#include <string>

#include "memg/oracle.hpp"
#include "memg/solver.hpp"

namespace memg {

// JSON serialisation of solver inputs/outputs. Field order and number
// formatting are deterministic so identical runs produce byte-identical
// files.

std::string serialize_design(const Design& design, const Catalog& catalog);
std::string serialize_dispatch(const Dispatch& dispatch, const Catalog& catalog);
std::string serialize_cost_report(const CostReport& report);
std::string serialize_violations(const std::vector<Violation>& violations);

// Full solution document: design, per-scenario dispatch tables, cost
// report, status and the incumbent log, plus an instance echo (catalog,
// scenario rows, demand, options) sufficient for compare/re-evaluation.
std::string serialize_solution(const Solution& solution, const Catalog& catalog,
                               const std::vector<Scenario>& scenarios,
                               const DemandProfile& demand,
                               const SolverOptions& options);

struct LoadedSolution {
    Solution solution;
    Catalog catalog;
    std::vector<Scenario> scenarios;
    DemandProfile demand;
    SolverOptions options;
};

LoadedSolution load_solution(const std::string& path);
LoadedSolution parse_solution(const std::string& json_text, const std::string& origin);

// Oracle instance file for the `memg oracle` subcommand.
struct OracleInstance {
    Catalog catalog;
    std::vector<Scenario> scenarios;
    DemandProfile demand;
    OracleGrids grids;
    SolverOptions options;
};

OracleInstance load_oracle_instance(const std::string& path);

} // namespace memg
