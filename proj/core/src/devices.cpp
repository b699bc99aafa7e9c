#include "memg/devices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memg {

namespace {
constexpr double kPi = std::numbers::pi;

// 0.5 * rho * (pi D^2/4) * Cp * v^3, W -> MW
double turbine_power_w(double d_rotor, double v, const WindPhysics& phys) {
    double swept = kPi * d_rotor * d_rotor / 4.0;
    return 0.5 * phys.rho_air * swept * phys.cp * v * v * v;
}
} // namespace

double wind_turbine_rated_power(double d_rotor, const WindPhysics& phys) {
    if (d_rotor <= 0.0) throw DomainError("wind rated power: rotor diameter must be > 0");
    return turbine_power_w(d_rotor, phys.v_rated, phys) / 1e6;
}

double wind_rated_power(double d_rotor, const WindPhysics& phys) {
    return wind_turbine_rated_power(d_rotor, phys) * phys.turbines_per_farm;
}

double wind_power(double v_hub, double d_rotor, const WindPhysics& phys) {
    if (d_rotor <= 0.0) throw DomainError("wind power: rotor diameter must be > 0");
    if (v_hub < 0.0) throw DomainError("wind power: wind speed must be >= 0");
    // cut-out takes precedence over the rated branch
    if (v_hub >= phys.v_cut_out || v_hub < phys.v_cut_in) return 0.0;
    double per_turbine = v_hub >= phys.v_rated
                             ? wind_turbine_rated_power(d_rotor, phys)
                             : turbine_power_w(d_rotor, v_hub, phys) / 1e6;
    return per_turbine * phys.turbines_per_farm;
}

double wind_diameter_for_rated_power(double rp_farm, const WindPhysics& phys) {
    if (rp_farm <= 0.0)
        throw DomainError("wind diameter: farm rated power must be > 0");
    double per_turbine_w = rp_farm * 1e6 / phys.turbines_per_farm;
    double v3 = phys.v_rated * phys.v_rated * phys.v_rated;
    double denom = 0.5 * phys.rho_air * (kPi / 4.0) * phys.cp * v3;
    return std::sqrt(per_turbine_w / denom);
}

double pv_power(double g_beta, double eta, const SolarPhysics& phys) {
    if (g_beta < 0.0 || eta < 0.0)
        throw DomainError("pv power: inputs must be >= 0");
    return g_beta * eta * phys.area * phys.eta_inverter / 1e6;
}

double cvt_cost(double p, const ConventionalPhysics& phys) {
    if (p < 0.0) throw DomainError("cvt cost: power must be >= 0");
    return phys.c * p * p + phys.b * p + phys.a +
           std::abs(phys.d * std::sin(phys.e * (phys.p_min - p)));
}

double cvt_emission(double p, const ConventionalPhysics& phys) {
    if (p < 0.0) throw DomainError("cvt emission: power must be >= 0");
    double e = phys.ef * (phys.h_co2 * p * p + phys.g_co2 * p + phys.f_co2);
    return std::max(0.0, e);
}

namespace {

// Signed slack of one region edge: >= 0 inside (within tol).
// Edge through anchor with the slope of (from, to):
//   sense=+1: p - anchor_p >= (h - anchor_h) * slope
//   sense=-1: p - anchor_p <= (h - anchor_h) * slope
double edge_slack(double p, double h, const ChpCorner& anchor, double slope, int sense) {
    double rhs = (h - anchor.heat) * slope;
    return sense > 0 ? (p - anchor.power) - rhs : rhs - (p - anchor.power);
}

double slope(const ChpCorner& from, const ChpCorner& to) {
    return (from.power - to.power) / (from.heat - to.heat);
}

} // namespace

bool chp_feasible(double p, double h, const ChpPhysics& phys, double tol) {
    // Lower edge D-C, upper edge A-B (anchored at D_h as published; the
    // bundled corner sets keep A_h == D_h == 0 so this equals the
    // conventional A-anchored form), right edge B-C. h >= 0 and the power
    // bounds provide the fourth side.
    if (h < -tol) return false;
    double s_dc = edge_slack(p, h, phys.d, slope(phys.d, phys.c), +1);
    ChpCorner upper_anchor{phys.a.power, phys.d.heat};
    double s_ab = edge_slack(p, h, upper_anchor, slope(phys.a, phys.b), -1);
    double s_bc = edge_slack(p, h, phys.b, slope(phys.b, phys.c), +1);
    return s_dc >= -tol && s_ab >= -tol && s_bc >= -tol;
}

double chp_cost_unchecked(double p, double h, const ChpPhysics& phys) {
    return phys.kk + phys.ll * p + phys.ii * p * p + phys.jj * h +
           phys.yy * h * h + phys.zz * h * p;
}

double chp_cost(double p, double h, const ChpPhysics& phys) {
    if (!chp_feasible(p, h, phys, 1e-9))
        throw InfeasiblePoint("chp cost: operating point (" + std::to_string(p) + " MW, " +
                              std::to_string(h) + " MW) outside the feasible region");
    return chp_cost_unchecked(p, h, phys);
}

double chp_max_heat(const ChpPhysics& phys) {
    return std::max({phys.a.heat, phys.b.heat, phys.c.heat, phys.d.heat});
}

void chp_power_range_at_heat(double h, const ChpPhysics& phys, double& lo, double& hi) {
    lo = 1.0;
    hi = 0.0;
    if (h < 0.0 || h > chp_max_heat(phys)) return;
    // lower bound: max of the two >=-edges; upper bound: the <=-edge
    double lb = phys.d.power + (h - phys.d.heat) * slope(phys.d, phys.c);
    double lb2 = phys.b.power + (h - phys.b.heat) * slope(phys.b, phys.c);
    double ub = phys.a.power + (h - phys.d.heat) * slope(phys.a, phys.b);
    lo = std::max(lb, lb2);
    hi = ub;
}

double sabatier_keq(const P2GPhysics& phys) {
    double t = phys.t_in;
    const auto& k = phys.keq_coeffs;
    return std::exp(k[0] / t + k[1] * std::log(t) + k[2] * t + k[3]);
}

std::array<double, 4> sabatier_species(double xi, const P2GPhysics& phys) {
    // stoichiometry: CO2 + 4 H2 -> 2 H2O + CH4
    static constexpr std::array<double, 4> nu = {-1.0, -4.0, 2.0, 1.0};
    std::array<double, 4> n{};
    for (std::size_t j = 0; j < 4; ++j) n[j] = phys.n_in[j] + nu[j] * xi;
    return n;
}

double sabatier_residual(double xi, const P2GPhysics& phys) {
    auto n = sabatier_species(xi, phys);
    double total = n[0] + n[1] + n[2] + n[3];
    if (total <= 0.0) throw DomainError("sabatier: nonpositive total molar flow");
    double pp_co2 = phys.pp_in * n[0] / total;
    double pp_h2 = phys.pp_in * n[1] / total;
    double pp_h2o = phys.pp_in * n[2] / total;
    double pp_ch4 = phys.pp_in * n[3] / total;
    double keq = sabatier_keq(phys);
    return keq * pp_co2 * pp_h2 * pp_h2 * pp_h2 * pp_h2 - pp_h2o * pp_h2o * pp_ch4;
}

double sabatier_max_extent(const P2GPhysics& phys) {
    if (phys.n_in[0] <= 0.0 || phys.n_in[1] <= 0.0)
        throw DomainError("sabatier: inlet must contain CO2 and H2");
    const double xi_stoich = std::min(phys.n_in[0], phys.n_in[1] / 4.0);

    if (sabatier_residual(0.0, phys) < 0.0)
        throw DomainError("sabatier: inlet is already past equilibrium (residual < 0 at zero extent)");

    // The contract relies on the residual decreasing in xi; verify for the
    // configured T, P on a coarse grid before bisecting.
    {
        double prev = sabatier_residual(0.0, phys);
        const int samples = 64;
        for (int i = 1; i <= samples; ++i) {
            double xi = xi_stoich * (1.0 - 1e-12) * i / samples;
            double r = sabatier_residual(xi, phys);
            if (r > prev + std::abs(prev) * 1e-9 + 1e-12)
                throw DomainError("sabatier: equilibrium residual is not monotone in the extent for the configured T, P");
            prev = r;
        }
    }

    double hi_probe = xi_stoich * (1.0 - 1e-12);
    if (sabatier_residual(hi_probe, phys) >= 0.0) return xi_stoich;

    double lo = 0.0, hi = hi_probe;
    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        if (sabatier_residual(mid, phys) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ResourceFlows p2g_flows(double xi, const P2GPhysics& phys) {
    if (xi < 0.0) throw DomainError("p2g flows: extent must be >= 0");
    double xi_max = sabatier_max_extent(phys);
    if (xi > xi_max * (1.0 + 1e-9))
        throw DomainError("p2g flows: extent exceeds the equilibrium maximum");
    ResourceFlows flows;
    if (xi > 0.0) flows.con[Resource::Electricity] = phys.soec_rated_power;
    flows.con[Resource::Co2] = xi * kMolarMassCo2;
    flows.gen[Resource::Sng] = xi * kMolarMassCh4 * phys.sng_yield;
    return flows;
}

double battery_step(double soc_prev, double pch, double pdch) {
    if (pch < 0.0 || pdch < 0.0)
        throw DomainError("battery step: charge/discharge powers must be >= 0");
    if (pch > 0.0 && pdch > 0.0)
        throw MutualExclusionError("battery step: charging and discharging in the same hour");
    return soc_prev + (pch - pdch); // lossless, 1-hour steps
}

} // namespace memg
