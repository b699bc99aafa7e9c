#pragma once

#include <string>
#include <vector>

#include "memg/catalog.hpp"
#include "memg/devices.hpp"
#include "memg/scenarios.hpp"

namespace memg {

inline constexpr int kHoursPerDay = 24;
inline constexpr double kDaysPerYear = 365.0;
inline constexpr int kMaxInstalled = 9;
inline constexpr double kDefaultBalanceTol = 1e-6; // MW and t/h

// First-stage decision, aligned index-for-index with the catalog.
struct DesignEntry {
    bool install = false;
    double rated_power = 0.0;    // MW
    double storage_cap = 0.0;    // MWh, storage only
    double rotor_diameter = 0.0; // m, wind only
    double tilt = 0.0;           // rad, solar only
};

struct Design {
    std::vector<DesignEntry> entries;

    static Design empty(const Catalog& catalog) {
        Design d;
        d.entries.resize(catalog.size());
        return d;
    }
    int installed_count() const {
        int n = 0;
        for (const auto& e : entries) n += e.install ? 1 : 0;
        return n;
    }
};

// Fixed (non-scenario) resource prices, $/t for materials. Scenario-priced
// resources (CO2, SNG) come from the Scenario itself.
struct Prices {
    double coal = 100.0;   // $/t
    double biomass = 30.0; // $/t

    double of(Resource r) const {
        switch (r) {
        case Resource::Coal: return coal;
        case Resource::Biomass: return biomass;
        default: return 0.0;
        }
    }
};

// One scenario's 24-hour recourse decision.
struct HourDispatch {
    std::vector<OperatingPoint> ops; // aligned with the catalog
    ResourceMap purchase;            // u, bought at Prc(res)
    ResourceMap excess;              // yx; only CO2 may be nonzero
    ResourceMap slack;               // spin; electricity/heat curtailment
};

struct Dispatch {
    std::vector<HourDispatch> hours; // exactly 24

    static Dispatch empty(const Catalog& catalog) {
        Dispatch d;
        d.hours.resize(kHoursPerDay);
        for (auto& h : d.hours) h.ops.resize(catalog.size());
        return d;
    }
};

// Per-device generated/consumed flows implied by an operating point.
ResourceFlows device_flows(const EquipmentSpec& spec, const DesignEntry& design,
                           const OperatingPoint& op);

// Sum of capped-generator operating powers in one hour (cap basis).
double capped_generation_power(const Catalog& catalog, const HourDispatch& hour);

// Hourly CO2 cap series L_co2(t) for a dispatch.
std::vector<double> co2_cap_series(const Catalog& catalog, const Dispatch& dispatch);

// --- cost accounting ---

struct ScenarioCost {
    std::string scenario_id;
    double probability = 0.0;
    double operational = 0.0; // $/yr
    double trading = 0.0;     // $/yr, cap-and-trade scenarios only (may be negative)
    double tax = 0.0;         // $/yr, taxing scenarios only
    double revenue = 0.0;     // $/yr SNG sales
    bool infeasible = false;  // evaluate_design marks unmet scenarios
};

struct CostReport {
    double crf = 0.0;
    double capital = 0.0;             // $
    double maintenance = 0.0;         // $/yr
    std::vector<ScenarioCost> scenarios;
    double expected_second_stage = 0.0; // $/yr
    double tac = 0.0;                   // $/yr
    bool any_infeasible = false;

    // Recomputes expected_second_stage and tac from the components.
    void finalize();
};

// int*(1+int)^LFT / ((1+int)^LFT - 1)
double crf(double interest, double lifetime_years);

double capital_cost(const Design& design, const Catalog& catalog);     // $
double maintenance_cost(const Design& design, const Catalog& catalog); // $/yr

// 365 * (purchases + CHP fuel + CVT fuel + CO2-capture cost); operating
// costs counted only for committed device-hours.
double operational_cost(const Catalog& catalog, const Dispatch& dispatch,
                        const Scenario& scenario, const Prices& prices);

// 365 * sum_t (yx_co2 - L_co2)*Prc(CO2); negative when surplus allowances
// are sold. Trading scenarios only.
double carbon_trading_cost(const Catalog& catalog, const Dispatch& dispatch,
                           const Scenario& scenario);

// 365 * sum_t yx_co2 * Prc(CO2); taxing scenarios only.
double emission_tax_cost(const Catalog& catalog, const Dispatch& dispatch,
                         const Scenario& scenario);

// 365 * sum_t Prc(SNG) * gen_sng.
double sng_revenue(const Catalog& catalog, const Dispatch& dispatch,
                   const Scenario& scenario);

struct AnnualizationOptions {
    double interest = 0.15;
    double lifetime_years = 20.0;
};

// Full first-plus-expected-second-stage decomposition; deterministic and
// exact for the given inputs.
CostReport total_annualized_cost(const Design& design,
                                 const std::vector<Dispatch>& dispatches,
                                 const std::vector<Scenario>& scenarios,
                                 const Catalog& catalog, const Prices& prices,
                                 const AnnualizationOptions& annual = {});

// --- feasibility ---

struct Violation {
    std::string constraint;  // e.g. "power_upper_bound"
    std::string equipment_id; // empty when not device-specific
    int hour = -1;            // -1 when not hourly
    std::string resource;     // empty when not per-resource
    double residual = 0.0;    // amount by which the constraint is missed

    std::string describe() const;
};

// Checks every design bound, commitment/power bound, storage constraint,
// per-resource balance, installation cap, CHP region membership,
// wind/solar availability consistency and the P2G extent bound. Violations
// are data, not errors; an empty list means feasible at tol.
std::vector<Violation> check_feasibility(const Design& design,
                                         const Dispatch& dispatch,
                                         const Scenario& scenario,
                                         const DemandProfile& demand,
                                         const Catalog& catalog,
                                         double tol = kDefaultBalanceTol);

// Design-only subset of the checks (rating/capacity bounds, installation
// cap, wind rp/diameter consistency, tilt bounds).
std::vector<Violation> check_design(const Design& design, const Catalog& catalog,
                                    double tol = kDefaultBalanceTol);

// Hourly wind/solar availability for a design under a scenario, MW;
// zero for other kinds.
std::vector<std::vector<double>> renewable_availability(const Design& design,
                                                        const Catalog& catalog,
                                                        const Scenario& scenario,
                                                        const IrradianceOptions& irr = {});

} // namespace memg
