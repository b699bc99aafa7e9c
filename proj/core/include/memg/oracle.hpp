#pragma once

#include "memg/solver.hpp"

namespace memg {

// Exhaustive-enumeration bounds; anything above raises InstanceTooLarge.
struct OracleLimits {
    std::size_t max_candidates = 3;
    int max_hours = 4;
    std::size_t max_scenarios = 2;
    std::size_t max_grid_points = 12;
    // hard stop on the total enumeration size
    double max_combinations = 5e7;
};

struct OracleGrids {
    // sizing samples per equipment id (rated power; capacity for storage;
    // diameter for wind; tilt in radians for solar)
    std::map<std::string, std::vector<double>> sizing;
    // operating-power samples as fractions of p_max_frac*rp, shared by all
    // dispatchable devices; storage uses it for charge/discharge levels and
    // P2G for the extent fraction of xi_max
    std::vector<double> power_fractions;
};

// Global grid optimum by exhaustive enumeration of install subsets x
// sizing grid x per-hour commitment x power grid. Hours are enumerated
// independently except for storage, whose charge schedule is enumerated
// across the day. Deterministic; ties broken lexicographically by
// equipment id, then lower rated power.
Solution brute_force_oracle(const Catalog& catalog,
                            const std::vector<Scenario>& scenarios,
                            const DemandProfile& demand,
                            const OracleGrids& grids,
                            const SolverOptions& options,
                            const OracleLimits& limits = {});

} // namespace memg
