#include "dispatch_common.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memg::detail {

std::vector<DeviceMeta> build_device_meta(const Catalog& catalog, const Design& design) {
    std::vector<DeviceMeta> meta(catalog.size());
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& spec = catalog[c];
        const auto& e = design.entries[c];
        auto& m = meta[c];
        m.installed = e.install;
        if (!e.install) continue;
        switch (spec.kind) {
        case EquipmentKind::WindFarm:
        case EquipmentKind::SolarArray:
            m.renewable = true;
            break;
        case EquipmentKind::Conventional:
        case EquipmentKind::BiomassCC:
        case EquipmentKind::BiomassFired:
        case EquipmentKind::IGCC:
            m.dispatchable = true;
            m.p_lo = spec.p_min_frac * e.rated_power;
            m.p_hi = spec.p_max_frac * e.rated_power;
            break;
        case EquipmentKind::CHP: {
            m.is_chp = true;
            m.p_lo = spec.p_min_frac * e.rated_power;
            m.p_hi = spec.p_max_frac * e.rated_power;
            break;
        }
        case EquipmentKind::HeatPump:
            m.is_hp = true;
            m.p_lo = spec.p_min_frac * e.rated_power;
            m.p_hi = spec.p_max_frac * e.rated_power;
            break;
        case EquipmentKind::P2G: {
            m.is_p2g = true;
            m.p_lo = spec.p_min_frac * e.rated_power;
            m.p_hi = spec.p_max_frac * e.rated_power;
            m.xi_max = sabatier_max_extent(spec.p2g());
            m.sng_per_xi = kMolarMassCh4 * spec.p2g().sng_yield;
            break;
        }
        case EquipmentKind::Storage:
            m.is_storage = true;
            break;
        }
    }
    return meta;
}

HourEval evaluate_hour(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                       const HourEnv& env, const ScenarioEnv& scen,
                       const std::vector<DevSetting>& settings, double tol) {
    HourEval out;
    double gen_e = 0.0, con_e = 0.0, gen_h = 0.0, gen_sng = 0.0;
    double emissions = 0.0, capture = 0.0, capped_power = 0.0;
    double oc = 0.0, fuel_cost = 0.0, capture_cost = 0.0;

    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& m = meta[c];
        const auto& s = settings[c];
        if (!m.installed || !s.on) continue;
        const auto& spec = catalog[c];
        switch (spec.kind) {
        case EquipmentKind::WindFarm:
        case EquipmentKind::SolarArray:
            gen_e += s.p;
            emissions += spec.co2_per_mwh * s.p;
            capped_power += s.p;
            break;
        case EquipmentKind::Conventional:
            gen_e += s.p;
            emissions += cvt_emission(s.p, spec.conventional());
            capped_power += s.p;
            oc += cvt_cost(s.p, spec.conventional());
            break;
        case EquipmentKind::BiomassCC:
        case EquipmentKind::BiomassFired:
        case EquipmentKind::IGCC: {
            gen_e += s.p;
            emissions += spec.co2_per_mwh * s.p;
            capped_power += s.p;
            const auto& lin = spec.linear_gen();
            fuel_cost += lin.fuel_per_mwh * s.p * scen.prices.of(lin.fuel);
            break;
        }
        case EquipmentKind::CHP:
            gen_e += s.p;
            gen_h += s.h;
            emissions += spec.co2_per_mwh * s.p;
            capped_power += s.p;
            oc += chp_cost_unchecked(s.p, s.h, spec.chp());
            break;
        case EquipmentKind::HeatPump:
            con_e += s.p;
            gen_h += s.h;
            break;
        case EquipmentKind::P2G:
            con_e += s.p;
            capture += s.xi * kMolarMassCo2;
            gen_sng += s.xi * m.sng_per_xi;
            capture_cost += s.xi * kMolarMassCo2 * spec.p2g().cc;
            break;
        case EquipmentKind::Storage:
            break; // battery handled through env.battery_net
        }
    }

    con_e += std::max(0.0, env.battery_net);  // charging adds load
    gen_e += std::max(0.0, -env.battery_net); // discharging supplies

    out.spin_e = gen_e - con_e - env.demand_e;
    out.spin_h = gen_h - env.demand_h;
    out.excess_co2 = emissions - capture;
    double sng_short = env.sng_floor - gen_sng;

    if (out.spin_e < -tol || out.spin_h < -tol || sng_short > tol ||
        out.excess_co2 < -tol)
        return out; // infeasible at this commitment/settings

    out.spin_e = std::max(0.0, out.spin_e);
    out.spin_h = std::max(0.0, out.spin_h);
    out.excess_co2 = std::max(0.0, out.excess_co2);

    double policy_cost = 0.0;
    if (scen.policy == Policy::CapAndTrade)
        policy_cost = (out.excess_co2 - co2_cap(capped_power)) * scen.co2_price;
    else
        policy_cost = out.excess_co2 * scen.co2_price;

    out.day_cost = oc + fuel_cost + capture_cost + policy_cost -
                   scen.sng_price * gen_sng;
    out.feasible = true;
    return out;
}

double device_power_objective(const Catalog& catalog, std::size_t c,
                              const ScenarioEnv& scen, double p, double h,
                              bool trade_credit) {
    const auto& spec = catalog[c];
    double cost = 0.0;
    double em = 0.0;
    switch (spec.kind) {
    case EquipmentKind::Conventional:
        cost = cvt_cost(p, spec.conventional());
        em = cvt_emission(p, spec.conventional());
        break;
    case EquipmentKind::BiomassCC:
    case EquipmentKind::BiomassFired:
    case EquipmentKind::IGCC: {
        const auto& lin = spec.linear_gen();
        cost = lin.fuel_per_mwh * p * scen.prices.of(lin.fuel);
        em = spec.co2_per_mwh * p;
        break;
    }
    case EquipmentKind::CHP:
        cost = chp_cost_unchecked(p, h, spec.chp());
        em = spec.co2_per_mwh * p;
        break;
    case EquipmentKind::WindFarm:
    case EquipmentKind::SolarArray:
        em = spec.co2_per_mwh * p;
        break;
    default:
        return 0.0;
    }
    double policy = scen.co2_price * em;
    if (trade_credit && spec.is_capped_generator())
        policy -= scen.co2_price * kCo2CapPerMw * p;
    return cost + policy;
}

void assemble_hour(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                   const HourEnv& env, const ScenarioEnv& scen,
                   const std::vector<DevSetting>& settings, HourDispatch& out) {
    (void)scen;
    out.ops.assign(catalog.size(), OperatingPoint{});
    out.purchase = ResourceMap{};
    out.excess = ResourceMap{};
    out.slack = ResourceMap{};

    double gen_e = 0.0, con_e = 0.0, gen_h = 0.0;
    double emissions = 0.0, capture = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& m = meta[c];
        const auto& s = settings[c];
        auto& op = out.ops[c];
        if (!m.installed || !s.on) continue;
        const auto& spec = catalog[c];
        op.on = true;
        switch (spec.kind) {
        case EquipmentKind::WindFarm:
        case EquipmentKind::SolarArray:
            op.power = s.p;
            gen_e += s.p;
            emissions += spec.co2_per_mwh * s.p;
            break;
        case EquipmentKind::Conventional:
            op.power = s.p;
            gen_e += s.p;
            emissions += cvt_emission(s.p, spec.conventional());
            break;
        case EquipmentKind::BiomassCC:
        case EquipmentKind::BiomassFired:
        case EquipmentKind::IGCC: {
            op.power = s.p;
            gen_e += s.p;
            emissions += spec.co2_per_mwh * s.p;
            const auto& lin = spec.linear_gen();
            out.purchase[lin.fuel] += lin.fuel_per_mwh * s.p;
            break;
        }
        case EquipmentKind::CHP:
            op.power = s.p;
            op.heat = s.h;
            gen_e += s.p;
            gen_h += s.h;
            emissions += spec.co2_per_mwh * s.p;
            break;
        case EquipmentKind::HeatPump:
            op.power = s.p;
            op.heat = s.h;
            con_e += s.p;
            gen_h += s.h;
            break;
        case EquipmentKind::P2G:
            op.power = s.p;
            op.xi = s.xi;
            con_e += s.p;
            capture += s.xi * kMolarMassCo2;
            break;
        case EquipmentKind::Storage:
            break;
        }
    }

    double charge = std::max(0.0, env.battery_net);
    double discharge = std::max(0.0, -env.battery_net);
    gen_e += discharge;
    con_e += charge;

    out.slack[Resource::Electricity] = std::max(0.0, gen_e - con_e - env.demand_e);
    out.slack[Resource::Heat] = std::max(0.0, gen_h - env.demand_h);
    out.excess[Resource::Co2] = std::max(0.0, emissions - capture);
}

std::vector<double> valve_breakpoints(const ConventionalPhysics& phys, double lo,
                                      double hi) {
    std::vector<double> points;
    if (phys.d == 0.0 || phys.e <= 0.0) return points;
    constexpr double kPi = std::numbers::pi;
    double half_period = kPi / phys.e;
    // sine zeros at p = p_min - k*pi/e for integer k
    double k_lo = std::ceil((phys.p_min - hi) / half_period);
    double k_hi = std::floor((phys.p_min - lo) / half_period);
    for (double k = k_lo; k <= k_hi; k += 1.0) {
        double p = phys.p_min - k * half_period;
        if (p > lo + 1e-12 && p < hi - 1e-12) points.push_back(p);
    }
    std::sort(points.begin(), points.end());
    return points;
}

namespace {

double golden_section(double lo, double hi, const std::function<double(double)>& f,
                      double x_tol, double& best_x) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    best_x = f1 <= f2 ? x1 : x2;
    return std::min(f1, f2);
}

} // namespace

double line_search(double lo, double hi, const std::function<double(double)>& f,
                   const std::vector<double>& breakpoints, double x_tol) {
    if (hi <= lo) return lo;
    // candidate edges: interval ends plus every breakpoint
    std::vector<double> edges;
    edges.push_back(lo);
    for (double b : breakpoints)
        if (b > lo && b < hi) edges.push_back(b);
    edges.push_back(hi);

    double best_x = lo;
    double best_f = f(lo);
    for (std::size_t i = 1; i < edges.size(); ++i) {
        double fe = f(edges[i]);
        if (fe < best_f) {
            best_f = fe;
            best_x = edges[i];
        }
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double a = edges[i], b = edges[i + 1];
        if (b - a <= x_tol) continue;
        double x;
        double fx = golden_section(a, b, f, x_tol, x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    return best_x;
}

} // namespace memg::detail
