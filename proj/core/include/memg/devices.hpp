#pragma once

#include "memg/catalog.hpp"
#include "memg/environment.hpp"
#include "memg/resources.hpp"

namespace memg {

// One device's second-stage decision for a single hour.
struct OperatingPoint {
    bool on = false;        // kc
    double power = 0.0;     // MW electric output (or P2G draw side handled via flows)
    double heat = 0.0;      // MW, CHP and heat pump output
    double charge = 0.0;    // MW, storage pch
    double discharge = 0.0; // MW, storage pdch
    double soc = 0.0;       // MWh at end of hour, storage
    double xi = 0.0;        // mol/h reaction extent, P2G
};

// Per-hour generated/consumed flows of one device.
struct ResourceFlows {
    ResourceMap gen;
    ResourceMap con;
};

// Molar masses, t/mol.
inline constexpr double kMolarMassCo2 = 44.01e-6;
inline constexpr double kMolarMassCh4 = 16.04e-6;
inline constexpr double kMolarMassH2 = 2.016e-6;
inline constexpr double kMolarMassH2o = 18.015e-6;

// --- wind ---

// Rated power of a single turbine at v_rated, MW.
double wind_turbine_rated_power(double d_rotor, const WindPhysics& phys);

// Farm rated power: turbine rating times turbines_per_farm.
double wind_rated_power(double d_rotor, const WindPhysics& phys);

// Farm operating power on the standard curve: zero below cut-in and at or
// above cut-out, cubic between cut-in and rated, rated in between.
double wind_power(double v_hub, double d_rotor, const WindPhysics& phys);

// Rotor diameter whose farm rating equals rp (inverse of wind_rated_power).
double wind_diameter_for_rated_power(double rp_farm, const WindPhysics& phys);

// --- solar ---

// G_beta * eta * area * eta_inverter, converted W -> MW.
double pv_power(double g_beta, double eta, const SolarPhysics& phys);

// --- conventional (valve-point) ---

double cvt_cost(double p, const ConventionalPhysics& phys);   // $/h
double cvt_emission(double p, const ConventionalPhysics& phys); // t/h, floored at 0

// --- CHP ---

// Membership in the tetragonal feasible operation region (three half-plane
// edges; the fourth edge comes from the operating-power bounds).
bool chp_feasible(double p, double h, const ChpPhysics& phys, double tol = 1e-9);

// Quadratic fuel cost; throws InfeasiblePoint outside the region.
double chp_cost(double p, double h, const ChpPhysics& phys); // $/h

// Cost evaluated without the region precondition (used by optimizers that
// enforce the region themselves).
double chp_cost_unchecked(double p, double h, const ChpPhysics& phys);

// Feasible heat range of the region (h of the widest corner span).
double chp_max_heat(const ChpPhysics& phys);
// Feasible power interval [lo, hi] of the region at fixed heat h; empty
// (lo > hi) when h is outside the region's heat span.
void chp_power_range_at_heat(double h, const ChpPhysics& phys, double& lo, double& hi);

// --- power-to-gas ---

// Equilibrium constant from the configured correlation ln K = A/T + B lnT + C T + D.
double sabatier_keq(const P2GPhysics& phys);

// Equilibrium residual at extent xi: K*PP_CO2*PP_H2^4 - PP_H2O^2*PP_CH4.
// Nonnegative while the reaction may still proceed forward.
double sabatier_residual(double xi, const P2GPhysics& phys);

// Largest xi in [0, min(n_CO2, n_H2/4)] with nonnegative residual, found
// by bisection to 1e-9 relative. Monotonicity of the residual over the
// range is verified numerically for the configured T, P before solving.
double sabatier_max_extent(const P2GPhysics& phys);

// Species outlet flows at extent xi (CO2, H2, H2O, CH4), mol/h.
std::array<double, 4> sabatier_species(double xi, const P2GPhysics& phys);

// Resource flows of an operating P2G train at extent xi: rated SOEC draw,
// CO2 capture at xi*M_CO2, SNG at xi*M_CH4 scaled by the upgrading yield.
ResourceFlows p2g_flows(double xi, const P2GPhysics& phys);

// --- storage ---

// soc_prev + (pch - pdch)*1h; throws MutualExclusionError when both of
// pch, pdch are positive.
double battery_step(double soc_prev, double pch, double pdch);

} // namespace memg
