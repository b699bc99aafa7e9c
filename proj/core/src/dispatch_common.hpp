#pragma once

// Internal hour-level machinery shared by the dispatch optimizer and the
// brute-force oracle: device operating envelopes, hour cost evaluation and
// HourDispatch assembly. Not installed.

#include <vector>

#include "memg/model.hpp"

namespace memg::detail {

// Chosen operating point of one device for one hour.
struct DevSetting {
    bool on = false;
    double p = 0.0;   // MW electric (draw for HP/P2G)
    double h = 0.0;   // MW heat (CHP, HP)
    double xi = 0.0;  // mol/h (P2G)
};

struct HourEnv {
    double demand_e = 0.0;
    double demand_h = 0.0;
    double sng_floor = 0.0;      // t/h minimum sale
    double battery_net = 0.0;    // pch - pdch, positive charging
    std::vector<double> avail;   // renewable availability per device, MW
};

// Static per-scenario data the hour evaluation needs.
struct ScenarioEnv {
    Policy policy = Policy::CapAndTrade;
    double co2_price = 0.0;
    double sng_price = 0.0;
    Prices prices;
};

struct DeviceMeta {
    bool installed = false;
    bool renewable = false;
    bool dispatchable = false; // continuous electric power
    bool is_chp = false;
    bool is_hp = false;
    bool is_p2g = false;
    bool is_storage = false;
    double p_lo = 0.0;   // committed minimum electric power, MW
    double p_hi = 0.0;   // committed maximum electric power, MW
    double xi_max = 0.0; // P2G equilibrium bound, mol/h
    double sng_per_xi = 0.0; // t SNG per unit extent
};

std::vector<DeviceMeta> build_device_meta(const Catalog& catalog, const Design& design);

struct HourEval {
    bool feasible = false;
    double day_cost = 0.0; // $ for this hour (pre-365 scaling), policy and revenue included
    double spin_e = 0.0;
    double spin_h = 0.0;
    double excess_co2 = 0.0;
};

// Evaluates one hour's cost given every device's setting. Checks the
// resource balances (electricity/heat covered, SNG floor met, capture not
// above emissions) but trusts the caller for per-device bounds.
HourEval evaluate_hour(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                       const HourEnv& env, const ScenarioEnv& scen,
                       const std::vector<DevSetting>& settings, double tol);

// Marginal objective of one device's electric power: operating cost slope
// plus the policy-adjusted emission slope ($/MWh at p).
double device_power_objective(const Catalog& catalog, std::size_t c,
                              const ScenarioEnv& scen, double p, double h, bool trade_credit);

// Fills one HourDispatch from the settings (flows, purchases, slack, excess).
void assemble_hour(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                   const HourEnv& env, const ScenarioEnv& scen,
                   const std::vector<DevSetting>& settings, HourDispatch& out);

// Golden-section minimization of f over [lo, hi], multistarted across the
// valve-point sine half-periods when breakpoints are supplied; endpoints
// and breakpoints are evaluated exactly so affine segments resolve to
// their true minimizer.
double line_search(double lo, double hi, const std::function<double(double)>& f,
                   const std::vector<double>& breakpoints, double x_tol);

// Sine half-period breakpoints of the valve-point term inside [lo, hi].
std::vector<double> valve_breakpoints(const ConventionalPhysics& phys, double lo, double hi);

} // namespace memg::detail
