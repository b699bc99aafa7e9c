#include "memg/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace memg {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTiltMinRad = SolarPhysics::tilt_min_deg * kPi / 180.0;
constexpr double kTiltMaxRad = SolarPhysics::tilt_max_deg * kPi / 180.0;
} // namespace

ResourceFlows device_flows(const EquipmentSpec& spec, const DesignEntry& design,
                           const OperatingPoint& op) {
    ResourceFlows flows;
    switch (spec.kind) {
    case EquipmentKind::WindFarm:
    case EquipmentKind::SolarArray:
        flows.gen[Resource::Electricity] = op.power;
        flows.gen[Resource::Co2] = spec.co2_per_mwh * op.power;
        break;
    case EquipmentKind::BiomassCC:
    case EquipmentKind::BiomassFired:
    case EquipmentKind::IGCC: {
        flows.gen[Resource::Electricity] = op.power;
        flows.gen[Resource::Co2] = spec.co2_per_mwh * op.power;
        const auto& lin = spec.linear_gen();
        flows.con[lin.fuel] = lin.fuel_per_mwh * op.power;
        break;
    }
    case EquipmentKind::Conventional:
        flows.gen[Resource::Electricity] = op.power;
        if (op.on) flows.gen[Resource::Co2] = cvt_emission(op.power, spec.conventional());
        // coal consumption is priced inside the cost curve, not purchased
        break;
    case EquipmentKind::CHP:
        flows.gen[Resource::Electricity] = op.power;
        flows.gen[Resource::Heat] = op.heat;
        flows.gen[Resource::Co2] = spec.co2_per_mwh * op.power;
        // gas consumption is priced inside the cost curve, not purchased
        break;
    case EquipmentKind::Storage:
        flows.gen[Resource::Electricity] = op.discharge;
        flows.con[Resource::Electricity] = op.charge;
        break;
    case EquipmentKind::HeatPump:
        // op.power is the electric draw; op.heat = COP * op.power
        flows.gen[Resource::Heat] = op.heat;
        flows.con[Resource::Electricity] = op.power;
        break;
    case EquipmentKind::P2G: {
        // op.power is the SOEC draw (rated while committed, via the
        // p_min_frac = p_max_frac = 1 bounds)
        const auto& p2g = spec.p2g();
        flows.con[Resource::Electricity] = op.power;
        flows.con[Resource::Co2] = op.xi * kMolarMassCo2;
        flows.gen[Resource::Sng] = op.xi * kMolarMassCh4 * p2g.sng_yield;
        break;
    }
    }
    (void)design;
    return flows;
}

double capped_generation_power(const Catalog& catalog, const HourDispatch& hour) {
    double total = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c)
        if (catalog[c].is_capped_generator()) total += hour.ops[c].power;
    return total;
}

std::vector<double> co2_cap_series(const Catalog& catalog, const Dispatch& dispatch) {
    std::vector<double> caps;
    caps.reserve(dispatch.hours.size());
    for (const auto& hour : dispatch.hours)
        caps.push_back(co2_cap(capped_generation_power(catalog, hour)));
    return caps;
}

double crf(double interest, double lifetime_years) {
    if (interest <= 0.0) throw DomainError("crf: interest rate must be > 0");
    if (lifetime_years < 1.0) throw DomainError("crf: lifetime must be >= 1 year");
    double growth = std::pow(1.0 + interest, lifetime_years);
    return interest * growth / (growth - 1.0);
}

double capital_cost(const Design& design, const Catalog& catalog) {
    double total = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& e = design.entries[c];
        if (!e.install) continue;
        const auto& spec = catalog[c];
        total += spec.psi0 * 1e6 * e.rated_power + spec.gamma0;
        if (spec.kind == EquipmentKind::Storage) total += spec.omega0 * e.storage_cap;
    }
    return total;
}

double maintenance_cost(const Design& design, const Catalog& catalog) {
    double total = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& e = design.entries[c];
        if (!e.install) continue;
        const auto& spec = catalog[c];
        total += spec.psik * e.rated_power + spec.gammak;
        if (spec.kind == EquipmentKind::Storage) total += spec.omegak * e.storage_cap;
    }
    return total;
}

double operational_cost(const Catalog& catalog, const Dispatch& dispatch,
                        const Scenario& scenario, const Prices& prices) {
    (void)scenario;
    double daily = 0.0;
    for (const auto& hour : dispatch.hours) {
        for (Resource r : kAllResources) daily += hour.purchase[r] * prices.of(r);
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const auto& op = hour.ops[c];
            if (!op.on) continue; // no-load cost only while committed
            switch (catalog[c].kind) {
            case EquipmentKind::Conventional:
                daily += cvt_cost(op.power, catalog[c].conventional());
                break;
            case EquipmentKind::CHP:
                daily += chp_cost_unchecked(op.power, op.heat, catalog[c].chp());
                break;
            case EquipmentKind::P2G:
                daily += op.xi * kMolarMassCo2 * catalog[c].p2g().cc;
                break;
            default:
                break;
            }
        }
    }
    return kDaysPerYear * daily;
}

double carbon_trading_cost(const Catalog& catalog, const Dispatch& dispatch,
                           const Scenario& scenario) {
    if (scenario.policy != Policy::CapAndTrade)
        throw PolicyMismatch("carbon_trading_cost: scenario '" + scenario.id +
                             "' uses emission taxing");
    double total = 0.0;
    for (const auto& hour : dispatch.hours) {
        double cap = co2_cap(capped_generation_power(catalog, hour));
        total += kDaysPerYear * (hour.excess[Resource::Co2] - cap) * scenario.co2_price;
    }
    return total;
}

double emission_tax_cost(const Catalog& catalog, const Dispatch& dispatch,
                         const Scenario& scenario) {
    (void)catalog;
    if (scenario.policy != Policy::EmissionTax)
        throw PolicyMismatch("emission_tax_cost: scenario '" + scenario.id +
                             "' uses cap-and-trade");
    double total = 0.0;
    for (const auto& hour : dispatch.hours)
        total += kDaysPerYear * hour.excess[Resource::Co2] * scenario.co2_price;
    return total;
}

double sng_revenue(const Catalog& catalog, const Dispatch& dispatch,
                   const Scenario& scenario) {
    double total = 0.0;
    for (const auto& hour : dispatch.hours) {
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            if (catalog[c].kind != EquipmentKind::P2G) continue;
            double gen = hour.ops[c].xi * kMolarMassCh4 * catalog[c].p2g().sng_yield;
            total += kDaysPerYear * scenario.sng_price * gen;
        }
    }
    return total;
}

void CostReport::finalize() {
    expected_second_stage = 0.0;
    any_infeasible = false;
    for (const auto& s : scenarios) {
        expected_second_stage +=
            s.probability * (s.operational + s.trading + s.tax - s.revenue);
        any_infeasible = any_infeasible || s.infeasible;
    }
    tac = crf * capital + maintenance + expected_second_stage;
}

CostReport total_annualized_cost(const Design& design,
                                 const std::vector<Dispatch>& dispatches,
                                 const std::vector<Scenario>& scenarios,
                                 const Catalog& catalog, const Prices& prices,
                                 const AnnualizationOptions& annual) {
    if (dispatches.size() != scenarios.size())
        throw ValidationError("total_annualized_cost: need exactly one dispatch per scenario");
    CostReport report;
    report.crf = crf(annual.interest, annual.lifetime_years);
    report.capital = capital_cost(design, catalog);
    report.maintenance = maintenance_cost(design, catalog);
    for (std::size_t w = 0; w < scenarios.size(); ++w) {
        const auto& scenario = scenarios[w];
        ScenarioCost sc;
        sc.scenario_id = scenario.id;
        sc.probability = scenario.probability;
        sc.operational = operational_cost(catalog, dispatches[w], scenario, prices);
        if (scenario.policy == Policy::CapAndTrade)
            sc.trading = carbon_trading_cost(catalog, dispatches[w], scenario);
        else
            sc.tax = emission_tax_cost(catalog, dispatches[w], scenario);
        sc.revenue = sng_revenue(catalog, dispatches[w], scenario);
        report.scenarios.push_back(std::move(sc));
    }
    report.finalize();
    return report;
}

std::string Violation::describe() const {
    std::ostringstream out;
    out << constraint;
    if (!equipment_id.empty()) out << " [" << equipment_id << "]";
    if (hour >= 0) out << " hour " << (hour + 1);
    if (!resource.empty()) out << " resource " << resource;
    out << " residual " << residual;
    return out.str();
}

namespace {

void add_violation(std::vector<Violation>& out, std::string constraint,
                   std::string equipment, int hour, std::string resource,
                   double residual) {
    Violation v;
    v.constraint = std::move(constraint);
    v.equipment_id = std::move(equipment);
    v.hour = hour;
    v.resource = std::move(resource);
    v.residual = residual;
    out.push_back(std::move(v));
}

} // namespace

std::vector<Violation> check_design(const Design& design, const Catalog& catalog,
                                    double tol) {
    std::vector<Violation> out;
    if (design.entries.size() != catalog.size()) {
        add_violation(out, "design_size_mismatch", "", -1, "",
                      static_cast<double>(design.entries.size()) -
                          static_cast<double>(catalog.size()));
        return out;
    }
    int installed = 0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& spec = catalog[c];
        const auto& e = design.entries[c];
        installed += e.install ? 1 : 0;
        double lo = spec.rp_min * (e.install ? 1.0 : 0.0);
        double hi = spec.rp_max * (e.install ? 1.0 : 0.0);
        if (e.rated_power < lo - tol)
            add_violation(out, "rated_power_lower_bound", spec.id, -1, "",
                          lo - e.rated_power);
        if (e.rated_power > hi + tol)
            add_violation(out, "rated_power_upper_bound", spec.id, -1, "",
                          e.rated_power - hi);
        if (spec.kind == EquipmentKind::Storage) {
            double clo = spec.cap_min * (e.install ? 1.0 : 0.0);
            double chi = spec.cap_max * (e.install ? 1.0 : 0.0);
            if (e.storage_cap < clo - tol)
                add_violation(out, "storage_cap_lower_bound", spec.id, -1, "",
                              clo - e.storage_cap);
            if (e.storage_cap > chi + tol)
                add_violation(out, "storage_cap_upper_bound", spec.id, -1, "",
                              e.storage_cap - chi);
        }
        if (spec.kind == EquipmentKind::WindFarm && e.install) {
            double implied = wind_rated_power(e.rotor_diameter, spec.wind());
            double rel = std::abs(implied - e.rated_power) /
                         std::max(1e-12, std::abs(e.rated_power));
            if (rel > 1e-6)
                add_violation(out, "wind_rating_diameter_consistency", spec.id, -1, "",
                              rel);
        }
        if (spec.kind == EquipmentKind::SolarArray && e.install) {
            if (e.tilt < kTiltMinRad - tol)
                add_violation(out, "tilt_lower_bound", spec.id, -1, "",
                              kTiltMinRad - e.tilt);
            if (e.tilt > kTiltMaxRad + tol)
                add_violation(out, "tilt_upper_bound", spec.id, -1, "",
                              e.tilt - kTiltMaxRad);
        }
    }
    if (installed > kMaxInstalled)
        add_violation(out, "installation_count_cap", "", -1, "",
                      installed - kMaxInstalled);
    return out;
}

std::vector<std::vector<double>> renewable_availability(const Design& design,
                                                        const Catalog& catalog,
                                                        const Scenario& scenario,
                                                        const IrradianceOptions& irr) {
    std::vector<std::vector<double>> avail(
        kHoursPerDay, std::vector<double>(catalog.size(), 0.0));
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& spec = catalog[c];
        const auto& e = design.entries[c];
        if (!e.install) continue;
        if (spec.kind == EquipmentKind::WindFarm) {
            const auto& wp = spec.wind();
            for (int t = 0; t < kHoursPerDay; ++t) {
                const auto& hour = scenario.weather[static_cast<std::size_t>(t)];
                double v_hub = shear_wind_speed(hour.v_anemometer, wp.z_anemometer,
                                                wp.z_hub, wp.alpha);
                double p = wind_power(v_hub, e.rotor_diameter, wp);
                avail[static_cast<std::size_t>(t)][c] = std::min(p, e.rated_power);
            }
        } else if (spec.kind == EquipmentKind::SolarArray) {
            const auto& sp = spec.solar();
            for (int t = 0; t < kHoursPerDay; ++t) {
                const auto& hour = scenario.weather[static_cast<std::size_t>(t)];
                auto tilted = tilted_irradiance(hour, e.tilt, sp.albedo, irr);
                if (tilted.g_beta <= 0.0) continue;
                double tc = cell_temperature(hour.theta_a, sp.h_spa, tilted.g_beta);
                double eta = pv_efficiency(tilted.g_beta, tc, tilted.am, sp);
                double p = pv_power(tilted.g_beta, eta, sp);
                avail[static_cast<std::size_t>(t)][c] = std::min(p, e.rated_power);
            }
        }
    }
    return avail;
}

std::vector<Violation> check_feasibility(const Design& design,
                                         const Dispatch& dispatch,
                                         const Scenario& scenario,
                                         const DemandProfile& demand,
                                         const Catalog& catalog, double tol) {
    std::vector<Violation> out = check_design(design, catalog, tol);
    if (dispatch.hours.size() != kHoursPerDay) {
        add_violation(out, "dispatch_hour_count", "", -1, "",
                      static_cast<double>(dispatch.hours.size()) - kHoursPerDay);
        return out;
    }

    auto avail = renewable_availability(design, catalog, scenario);

    // cached per-P2G equilibrium bound
    std::vector<double> xi_max(catalog.size(), 0.0);
    for (std::size_t c = 0; c < catalog.size(); ++c)
        if (catalog[c].kind == EquipmentKind::P2G)
            xi_max[c] = sabatier_max_extent(catalog[c].p2g());

    std::vector<double> soc_prev(catalog.size(), 0.0);
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (catalog[c].kind != EquipmentKind::Storage) continue;
        const auto& st = catalog[c].storage();
        const auto& e = design.entries[c];
        soc_prev[c] = st.soc_init > 0.0 ? st.soc_init
                                        : 0.5 * (st.soc_lo + st.soc_hi) * e.storage_cap;
    }

    for (int t = 0; t < kHoursPerDay; ++t) {
        const auto& hour = dispatch.hours[static_cast<std::size_t>(t)];
        if (hour.ops.size() != catalog.size()) {
            add_violation(out, "dispatch_ops_size", "", t, "", 0.0);
            return out;
        }

        ResourceMap gen_total, con_total;
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const auto& spec = catalog[c];
            const auto& e = design.entries[c];
            const auto& op = hour.ops[c];
            double kc = op.on ? 1.0 : 0.0;

            if (op.on && !e.install)
                add_violation(out, "operation_without_install", spec.id, t, "", 1.0);

            if (op.power < -tol)
                add_violation(out, "power_sign", spec.id, t, "", -op.power);
            if (op.heat < -tol)
                add_violation(out, "heat_sign", spec.id, t, "", -op.heat);
            if (op.xi < -tol)
                add_violation(out, "extent_sign", spec.id, t, "", -op.xi);
            if (op.charge < -tol)
                add_violation(out, "charge_sign", spec.id, t, "", -op.charge);
            if (op.discharge < -tol)
                add_violation(out, "discharge_sign", spec.id, t, "", -op.discharge);

            if (spec.kind == EquipmentKind::Storage) {
                // charge/discharge envelopes and exclusivity
                double lo = spec.storage().q_min * e.rated_power;
                double hi = spec.storage().q_max * e.rated_power;
                if (op.charge < lo - tol || op.charge > hi + tol)
                    add_violation(out, "charge_bounds", spec.id, t, "",
                                  std::max(lo - op.charge, op.charge - hi));
                if (op.discharge < lo - tol || op.discharge > hi + tol)
                    add_violation(out, "discharge_bounds", spec.id, t, "",
                                  std::max(lo - op.discharge, op.discharge - hi));
                double cap_ch = spec.storage().q_max * spec.rp_max * kc;
                double cap_dch = spec.storage().q_max * spec.rp_max * (1.0 - kc);
                if (op.charge > cap_ch + tol)
                    add_violation(out, "charge_commitment", spec.id, t, "",
                                  op.charge - cap_ch);
                if (op.discharge > cap_dch + tol)
                    add_violation(out, "discharge_commitment", spec.id, t, "",
                                  op.discharge - cap_dch);
                if (op.charge > tol && op.discharge > tol)
                    add_violation(out, "charge_discharge_exclusivity", spec.id, t, "",
                                  std::min(op.charge, op.discharge));
                double soc_expect = soc_prev[c] + (op.charge - op.discharge);
                if (std::abs(op.soc - soc_expect) > tol)
                    add_violation(out, "soc_recursion", spec.id, t, "",
                                  op.soc - soc_expect);
                double soc_lo = spec.storage().soc_lo * e.storage_cap;
                double soc_hi = spec.storage().soc_hi * e.storage_cap;
                if (op.soc < soc_lo - tol || op.soc > soc_hi + tol)
                    add_violation(out, "soc_envelope", spec.id, t, "",
                                  std::max(soc_lo - op.soc, op.soc - soc_hi));
                soc_prev[c] = op.soc;
            } else {
                // operating-power bounds: the committed lower bound relaxes
                // fully when off, and commitment forces zero power when off
                double lower = spec.p_min_frac *
                               (e.rated_power - (1.0 - kc) * spec.rp_max);
                if (op.power < lower - tol)
                    add_violation(out, "power_lower_bound", spec.id, t, "",
                                  lower - op.power);
                if (op.power > spec.p_max_frac * e.rated_power + tol)
                    add_violation(out, "power_upper_bound", spec.id, t, "",
                                  op.power - spec.p_max_frac * e.rated_power);
                if (op.power > spec.p_max_frac * spec.rp_max * kc + tol)
                    add_violation(out, "power_commitment_bound", spec.id, t, "",
                                  op.power - spec.p_max_frac * spec.rp_max * kc);
            }

            switch (spec.kind) {
            case EquipmentKind::WindFarm:
            case EquipmentKind::SolarArray: {
                double expect = kc * avail[static_cast<std::size_t>(t)][c];
                if (std::abs(op.power - expect) > tol)
                    add_violation(out, "renewable_availability_consistency", spec.id,
                                  t, "", op.power - expect);
                break;
            }
            case EquipmentKind::CHP:
                if (op.on && !chp_feasible(op.power, op.heat, spec.chp(), tol))
                    add_violation(out, "chp_region", spec.id, t, "", 1.0);
                if (!op.on && op.heat > tol)
                    add_violation(out, "chp_heat_commitment", spec.id, t, "", op.heat);
                break;
            case EquipmentKind::HeatPump: {
                double cop = spec.heat_pump().cop;
                if (std::abs(op.heat - cop * op.power) > tol * std::max(1.0, cop))
                    add_violation(out, "heat_pump_cop_consistency", spec.id, t, "",
                                  op.heat - cop * op.power);
                break;
            }
            case EquipmentKind::P2G:
                if (op.xi > xi_max[c] * (1.0 + 1e-9) + tol)
                    add_violation(out, "p2g_extent_bound", spec.id, t, "",
                                  op.xi - xi_max[c]);
                if (!op.on && op.xi > tol)
                    add_violation(out, "p2g_commitment", spec.id, t, "", op.xi);
                break;
            default:
                break;
            }

            auto flows = device_flows(spec, e, op);
            gen_total += flows.gen;
            con_total += flows.con;
        }

        // per-resource balance
        for (Resource r : kAllResources) {
            double u = hour.purchase[r];
            double yx = hour.excess[r];
            double spin = hour.slack[r];
            double dem = demand.at(r, t);
            if (u < -tol) add_violation(out, "purchase_sign", "", t, resource_name(r), -u);
            if (yx < -tol) add_violation(out, "excess_sign", "", t, resource_name(r), -yx);
            if (spin < -tol) add_violation(out, "slack_sign", "", t, resource_name(r), -spin);
            // only fuel markets exist; no grid import of energy or gas
            if (u > tol && r != Resource::Coal && r != Resource::Biomass)
                add_violation(out, "purchase_not_allowed", "", t, resource_name(r), u);

            switch (r) {
            case Resource::Co2: {
                // emissions leave as priced excess net of capture
                double residual = gen_total[r] + u - con_total[r] - yx;
                if (std::abs(residual) > tol)
                    add_violation(out, "balance", "", t, resource_name(r), residual);
                if (spin > tol)
                    add_violation(out, "slack_not_allowed", "", t, resource_name(r), spin);
                break;
            }
            case Resource::Electricity:
            case Resource::Heat: {
                double residual = gen_total[r] + u - con_total[r] - spin - dem;
                if (std::abs(residual) > tol)
                    add_violation(out, "balance", "", t, resource_name(r), residual);
                if (yx > tol)
                    add_violation(out, "excess_not_allowed", "", t, resource_name(r), yx);
                break;
            }
            case Resource::Sng: {
                // one-sided: generation covers the mandatory sale floor,
                // everything generated is sold
                double short_by = dem - (gen_total[r] + u - con_total[r]);
                if (short_by > tol)
                    add_violation(out, "sng_sale_floor", "", t, resource_name(r), short_by);
                if (yx > tol)
                    add_violation(out, "excess_not_allowed", "", t, resource_name(r), yx);
                if (spin > tol)
                    add_violation(out, "slack_not_allowed", "", t, resource_name(r), spin);
                break;
            }
            case Resource::Coal:
            case Resource::Biomass: {
                double residual = u - con_total[r] - dem;
                if (std::abs(residual) > tol)
                    add_violation(out, "balance", "", t, resource_name(r), residual);
                if (yx > tol)
                    add_violation(out, "excess_not_allowed", "", t, resource_name(r), yx);
                if (spin > tol)
                    add_violation(out, "slack_not_allowed", "", t, resource_name(r), spin);
                break;
            }
            }
        }
    }

    // daily cycle closes: final SOC returns to the initial condition
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (catalog[c].kind != EquipmentKind::Storage) continue;
        const auto& st = catalog[c].storage();
        const auto& e = design.entries[c];
        double init = st.soc_init > 0.0 ? st.soc_init
                                        : 0.5 * (st.soc_lo + st.soc_hi) * e.storage_cap;
        double final_soc = dispatch.hours.back().ops[c].soc;
        if (std::abs(final_soc - init) > tol)
            add_violation(out, "soc_daily_cycle", catalog[c].id, -1, "",
                          final_soc - init);
    }

    return out;
}

} // namespace memg
