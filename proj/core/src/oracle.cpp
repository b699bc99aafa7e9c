#include "memg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "dispatch_common.hpp"

namespace memg {

using namespace detail;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HourPattern {
    double demand_e, demand_h, sng_floor;
    WeatherHour weather;
    bool operator==(const HourPattern& o) const {
        return demand_e == o.demand_e && demand_h == o.demand_h &&
               sng_floor == o.sng_floor &&
               weather.v_anemometer == o.weather.v_anemometer &&
               weather.g_horizontal == o.weather.g_horizontal &&
               weather.theta_a == o.weather.theta_a && weather.h0 == o.weather.h0 &&
               weather.theta == o.weather.theta && weather.theta_z == o.weather.theta_z;
    }
};

// Per-device decision grid for one design point.
struct DeviceGrid {
    std::vector<DevSetting> choices; // committed choices; "off" handled separately
};

struct HourBest {
    double cost = kInf;
    std::vector<DevSetting> settings;
};

// Exhaustive best hour dispatch over commitment x decision grids.
HourBest enumerate_hour(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                        const HourEnv& env, const ScenarioEnv& scen,
                        const std::vector<std::size_t>& controllable,
                        const std::vector<DeviceGrid>& grids, double tol) {
    HourBest best;
    const std::size_t n = controllable.size();
    std::vector<DevSetting> settings(catalog.size());

    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (auto& s : settings) s = DevSetting{};
        std::vector<std::size_t> committed;
        bool mask_valid = true;
        for (std::size_t k = 0; k < n; ++k) {
            if ((mask >> k) & 1u) {
                std::size_t c = controllable[k];
                if (grids[c].choices.empty()) {
                    mask_valid = false;
                    break;
                }
                settings[c].on = true;
                committed.push_back(c);
            }
        }
        if (!mask_valid) continue;
        // cartesian product over committed devices' choice grids
        std::vector<std::size_t> idx(committed.size(), 0);
        while (true) {
            for (std::size_t k = 0; k < committed.size(); ++k) {
                DevSetting s = grids[committed[k]].choices[idx[k]];
                s.on = true;
                settings[committed[k]] = s;
            }
            HourEval ev = evaluate_hour(catalog, meta, env, scen, settings, tol);
            if (ev.feasible && ev.day_cost < best.cost) {
                best.cost = ev.day_cost;
                best.settings = settings;
            }
            if (committed.empty()) break;
            std::size_t k = 0;
            while (k < committed.size() &&
                   ++idx[k] == grids[committed[k]].choices.size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == committed.size()) break;
        }
    }
    return best;
}

std::vector<double> linspace_or(const std::vector<double>& explicit_grid, double lo,
                                double hi, std::size_t points) {
    std::vector<double> out;
    if (!explicit_grid.empty()) {
        for (double g : explicit_grid)
            if (g >= lo - 1e-9 && g <= hi + 1e-9) out.push_back(std::clamp(g, lo, hi));
    }
    if (out.empty()) {
        if (hi <= lo) {
            out.push_back(lo);
        } else {
            for (std::size_t i = 0; i < points; ++i)
                out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(points - 1));
        }
    }
    return out;
}

} // namespace

Solution brute_force_oracle(const Catalog& catalog,
                            const std::vector<Scenario>& scenarios,
                            const DemandProfile& demand, const OracleGrids& grids,
                            const SolverOptions& options, const OracleLimits& limits) {
    options.validate();
    validate_catalog(catalog);
    validate_scenario_set(scenarios);
    validate_demand(demand);

    if (catalog.size() > limits.max_candidates)
        throw InstanceTooLarge("oracle: more than " +
                               std::to_string(limits.max_candidates) + " candidates");
    if (scenarios.size() > limits.max_scenarios)
        throw InstanceTooLarge("oracle: more than " +
                               std::to_string(limits.max_scenarios) + " scenarios");
    if (grids.power_fractions.empty())
        throw ValidationError("oracle: power_fractions grid is empty");
    if (grids.power_fractions.size() > limits.max_grid_points)
        throw InstanceTooLarge("oracle: power grid above the size bound");
    for (const auto& [id, g] : grids.sizing)
        if (g.size() > limits.max_grid_points)
            throw InstanceTooLarge("oracle: sizing grid for '" + id +
                                   "' above the size bound");
    for (double f : grids.power_fractions)
        if (f < 0.0 || f > 1.0)
            throw ValidationError("oracle: power fractions must lie in [0, 1]");

    // distinct (demand, weather) hour patterns per scenario
    std::vector<std::vector<int>> pattern_of(scenarios.size(),
                                             std::vector<int>(kHoursPerDay, 0));
    std::vector<std::vector<HourPattern>> patterns(scenarios.size());
    for (std::size_t w = 0; w < scenarios.size(); ++w) {
        for (int t = 0; t < kHoursPerDay; ++t) {
            HourPattern hp;
            hp.demand_e = demand.at(Resource::Electricity, t);
            hp.demand_h = demand.at(Resource::Heat, t);
            hp.sng_floor = demand.at(Resource::Sng, t);
            hp.weather = scenarios[w].weather[static_cast<std::size_t>(t)];
            auto it = std::find(patterns[w].begin(), patterns[w].end(), hp);
            if (it == patterns[w].end()) {
                patterns[w].push_back(hp);
                pattern_of[w][static_cast<std::size_t>(t)] =
                    static_cast<int>(patterns[w].size()) - 1;
            } else {
                pattern_of[w][static_cast<std::size_t>(t)] =
                    static_cast<int>(it - patterns[w].begin());
            }
        }
        if (patterns[w].size() > static_cast<std::size_t>(limits.max_hours))
            throw InstanceTooLarge("oracle: more than " +
                                   std::to_string(limits.max_hours) +
                                   " distinct hour patterns in scenario " +
                                   scenarios[w].id);
    }

    std::vector<bool> forced(catalog.size(), false);
    for (const auto& id : options.forced_install) {
        auto idx = find_spec(catalog, id);
        if (!idx)
            throw ValidationError("oracle: forced-install id '" + id + "' not in catalog");
        forced[*idx] = true;
    }

    const std::size_t n = catalog.size();
    Solution best;
    best.status = SolveStatus::Infeasible;
    best.design = Design::empty(catalog); // structurally valid even when infeasible
    double best_tac = kInf;
    double combos_guard = 0.0;

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool skip = false;
        for (std::size_t c = 0; c < n; ++c)
            if (forced[c] && !((mask >> c) & 1u)) skip = true;
        if (skip || std::popcount(mask) > kMaxInstalled) continue;

        // sizing grids for installed devices
        struct SizingAxis {
            std::size_t c;
            enum class What { Rp, Cap, Diameter, Tilt } what;
            std::vector<double> values;
        };
        std::vector<SizingAxis> axes;
        for (std::size_t c = 0; c < n; ++c) {
            if (!((mask >> c) & 1u)) continue;
            const auto& spec = catalog[c];
            std::vector<double> explicit_grid;
            if (auto it = grids.sizing.find(spec.id); it != grids.sizing.end())
                explicit_grid = it->second;
            if (spec.kind == EquipmentKind::WindFarm) {
                double d_lo = wind_diameter_for_rated_power(spec.rp_min, spec.wind());
                double d_hi = wind_diameter_for_rated_power(spec.rp_max, spec.wind());
                axes.push_back({c, SizingAxis::What::Diameter,
                                linspace_or(explicit_grid, d_lo, d_hi, 3)});
            } else {
                axes.push_back({c, SizingAxis::What::Rp,
                                linspace_or(explicit_grid, spec.rp_min, spec.rp_max, 3)});
            }
            if (spec.kind == EquipmentKind::Storage)
                axes.push_back({c, SizingAxis::What::Cap,
                                linspace_or({}, spec.cap_min, spec.cap_max, 3)});
            if (spec.kind == EquipmentKind::SolarArray) {
                double t_lo = SolarPhysics::tilt_min_deg * std::numbers::pi / 180.0;
                double t_hi = SolarPhysics::tilt_max_deg * std::numbers::pi / 180.0;
                axes.push_back({c, SizingAxis::What::Tilt, linspace_or({}, t_lo, t_hi, 3)});
            }
        }

        double sizing_combos = 1.0;
        for (const auto& ax : axes) sizing_combos *= static_cast<double>(ax.values.size());
        combos_guard += sizing_combos;
        if (combos_guard > limits.max_combinations)
            throw InstanceTooLarge("oracle: enumeration above the combination budget");

        std::vector<std::size_t> axis_idx(axes.size(), 0);
        while (true) {
            Design design = Design::empty(catalog);
            for (std::size_t c = 0; c < n; ++c) {
                design.entries[c].install = (mask >> c) & 1u;
                if (design.entries[c].install) {
                    design.entries[c].rated_power = catalog[c].rp_min;
                    if (catalog[c].kind == EquipmentKind::Storage)
                        design.entries[c].storage_cap = catalog[c].cap_min;
                }
            }
            for (std::size_t k = 0; k < axes.size(); ++k) {
                const auto& ax = axes[k];
                double v = ax.values[axis_idx[k]];
                auto& e = design.entries[ax.c];
                switch (ax.what) {
                case SizingAxis::What::Rp:
                    e.rated_power = v;
                    break;
                case SizingAxis::What::Cap:
                    e.storage_cap = v;
                    break;
                case SizingAxis::What::Diameter:
                    e.rotor_diameter = v;
                    e.rated_power = wind_rated_power(v, catalog[ax.c].wind());
                    break;
                case SizingAxis::What::Tilt:
                    e.tilt = v;
                    break;
                }
            }

            if (check_design(design, catalog, options.balance_tol).empty()) {
                // evaluate this design point exactly
                auto meta = build_device_meta(catalog, design);
                std::vector<std::size_t> controllable;
                std::size_t storage_idx = n; // at most one storage supported
                for (std::size_t c = 0; c < n; ++c) {
                    if (!meta[c].installed) continue;
                    if (meta[c].is_storage) {
                        if (storage_idx != n)
                            throw InstanceTooLarge("oracle: more than one storage unit");
                        storage_idx = c;
                        continue;
                    }
                    controllable.push_back(c);
                }

                bool design_feasible = true;
                double expected_second_stage_day = 0.0;
                std::vector<Dispatch> dispatches;

                for (std::size_t w = 0; w < scenarios.size() && design_feasible; ++w) {
                    const auto& scenario = scenarios[w];
                    ScenarioEnv scen;
                    scen.policy = scenario.policy;
                    scen.co2_price = scenario.co2_price;
                    scen.sng_price = scenario.sng_price;
                    scen.prices = options.prices;
                    auto avail =
                        renewable_availability(design, catalog, scenario, options.irradiance);

                    // battery flow grid (empty net when no storage installed)
                    std::vector<double> flows = {0.0};
                    double soc_init = 0.0, soc_lo = 0.0, soc_hi = 0.0;
                    if (storage_idx < n) {
                        const auto& st = catalog[storage_idx].storage();
                        const auto& e = design.entries[storage_idx];
                        double qrp = st.q_max * e.rated_power;
                        soc_lo = st.soc_lo * e.storage_cap;
                        soc_hi = st.soc_hi * e.storage_cap;
                        soc_init = st.soc_init > 0.0 ? st.soc_init : 0.5 * (soc_lo + soc_hi);
                        for (double f : grids.power_fractions) {
                            if (f <= 0.0) continue;
                            flows.push_back(f * qrp);
                            flows.push_back(-f * qrp);
                        }
                        std::sort(flows.begin(), flows.end());
                        flows.erase(std::unique(flows.begin(), flows.end()), flows.end());
                    }

                    // decision grids per device for this design point
                    std::vector<DeviceGrid> dgrids(n);
                    for (std::size_t c : controllable) {
                        const auto& spec = catalog[c];
                        const auto& m = meta[c];
                        auto& dg = dgrids[c];
                        switch (spec.kind) {
                        case EquipmentKind::WindFarm:
                        case EquipmentKind::SolarArray:
                            break; // availability-dependent, filled per hour
                        case EquipmentKind::CHP: {
                            double h_max = chp_max_heat(spec.chp());
                            for (double fp : grids.power_fractions) {
                                double p = fp * m.p_hi;
                                if (p < m.p_lo - 1e-12) continue;
                                for (double fh : grids.power_fractions) {
                                    double h = fh * h_max;
                                    if (!chp_feasible(p, h, spec.chp(), 1e-9)) continue;
                                    DevSetting s;
                                    s.p = p;
                                    s.h = h;
                                    dg.choices.push_back(s);
                                }
                            }
                            break;
                        }
                        case EquipmentKind::HeatPump:
                            for (double f : grids.power_fractions) {
                                DevSetting s;
                                s.p = f * m.p_hi;
                                s.h = spec.heat_pump().cop * s.p;
                                dg.choices.push_back(s);
                            }
                            break;
                        case EquipmentKind::P2G: {
                            double floor_xi = 0.0;
                            for (int t = 0; t < kHoursPerDay; ++t)
                                floor_xi = std::max(
                                    floor_xi, demand.at(Resource::Sng, t) / m.sng_per_xi);
                            std::vector<double> xis;
                            for (double f : grids.power_fractions) xis.push_back(f * m.xi_max);
                            xis.push_back(std::min(floor_xi, m.xi_max));
                            std::sort(xis.begin(), xis.end());
                            xis.erase(std::unique(xis.begin(), xis.end()), xis.end());
                            for (double xi : xis) {
                                DevSetting s;
                                s.p = m.p_hi; // rated SOEC draw while on
                                s.xi = xi;
                                dg.choices.push_back(s);
                            }
                            break;
                        }
                        default:
                            for (double f : grids.power_fractions) {
                                double p = f * m.p_hi;
                                if (p < m.p_lo - 1e-12) continue;
                                DevSetting s;
                                s.p = p;
                                dg.choices.push_back(s);
                            }
                            break;
                        }
                    }

                    // best hour cost per (pattern, flow)
                    std::size_t np = patterns[w].size();
                    std::vector<std::vector<HourBest>> table(
                        np, std::vector<HourBest>(flows.size()));
                    for (std::size_t p = 0; p < np; ++p) {
                        // rebuild renewable grids for this pattern's availability
                        int hour_of_pattern = -1;
                        for (int t = 0; t < kHoursPerDay; ++t)
                            if (pattern_of[w][static_cast<std::size_t>(t)] ==
                                static_cast<int>(p)) {
                                hour_of_pattern = t;
                                break;
                            }
                        for (std::size_t c : controllable) {
                            if (!meta[c].renewable) continue;
                            dgrids[c].choices.clear();
                            DevSetting s;
                            s.p = avail[static_cast<std::size_t>(hour_of_pattern)][c];
                            dgrids[c].choices.push_back(s);
                        }
                        HourEnv env;
                        env.demand_e = patterns[w][p].demand_e;
                        env.demand_h = patterns[w][p].demand_h;
                        env.sng_floor = patterns[w][p].sng_floor;
                        env.avail = avail[static_cast<std::size_t>(hour_of_pattern)];
                        for (std::size_t b = 0; b < flows.size(); ++b) {
                            env.battery_net = flows[b];
                            table[p][b] = enumerate_hour(catalog, meta, env, scen,
                                                         controllable, dgrids,
                                                         options.balance_tol);
                        }
                    }

                    // choose flows per hour (DP over SOC when storage present)
                    std::vector<std::size_t> flow_choice(kHoursPerDay, 0);
                    double scenario_day_cost = 0.0;
                    bool scen_feasible = true;
                    if (storage_idx == n) {
                        for (int t = 0; t < kHoursPerDay; ++t) {
                            const auto& hb =
                                table[static_cast<std::size_t>(
                                    pattern_of[w][static_cast<std::size_t>(t)])][0];
                            if (!std::isfinite(hb.cost)) {
                                scen_feasible = false;
                                break;
                            }
                            scenario_day_cost += hb.cost;
                        }
                    } else {
                        // DP over SOC lattice; states keyed by rounded SOC
                        struct State {
                            double cost;
                            std::vector<std::size_t> choices;
                        };
                        auto key_of = [](double soc) {
                            return static_cast<long long>(std::llround(soc * 1e6));
                        };
                        std::map<long long, State> dp;
                        dp[key_of(soc_init)] = {0.0, {}};
                        for (int t = 0; t < kHoursPerDay; ++t) {
                            std::map<long long, State> next;
                            std::size_t p = static_cast<std::size_t>(
                                pattern_of[w][static_cast<std::size_t>(t)]);
                            for (const auto& [key, state] : dp) {
                                double soc = static_cast<double>(key) / 1e6;
                                for (std::size_t b = 0; b < flows.size(); ++b) {
                                    const auto& hb = table[p][b];
                                    if (!std::isfinite(hb.cost)) continue;
                                    double soc2 = soc + flows[b];
                                    if (soc2 < soc_lo - 1e-9 || soc2 > soc_hi + 1e-9)
                                        continue;
                                    double cost2 = state.cost + hb.cost;
                                    long long k2 = key_of(soc2);
                                    auto it = next.find(k2);
                                    if (it == next.end() || cost2 < it->second.cost - 1e-12) {
                                        State s2;
                                        s2.cost = cost2;
                                        s2.choices = state.choices;
                                        s2.choices.push_back(b);
                                        next[k2] = std::move(s2);
                                    }
                                }
                            }
                            if (next.size() > 4096)
                                throw InstanceTooLarge("oracle: storage SOC state explosion");
                            dp = std::move(next);
                            if (dp.empty()) break;
                        }
                        auto it = dp.find(key_of(soc_init)); // daily cycle closes
                        if (it == dp.end()) {
                            scen_feasible = false;
                        } else {
                            scenario_day_cost = it->second.cost;
                            for (int t = 0; t < kHoursPerDay; ++t)
                                flow_choice[static_cast<std::size_t>(t)] =
                                    it->second.choices[static_cast<std::size_t>(t)];
                        }
                    }

                    if (!scen_feasible) {
                        design_feasible = false;
                        break;
                    }

                    expected_second_stage_day +=
                        scenario.probability * kDaysPerYear * scenario_day_cost;

                    // assemble this scenario's dispatch
                    Dispatch dispatch = Dispatch::empty(catalog);
                    double soc = soc_init;
                    for (int t = 0; t < kHoursPerDay; ++t) {
                        std::size_t p = static_cast<std::size_t>(
                            pattern_of[w][static_cast<std::size_t>(t)]);
                        std::size_t b = flow_choice[static_cast<std::size_t>(t)];
                        HourEnv env;
                        env.demand_e = patterns[w][p].demand_e;
                        env.demand_h = patterns[w][p].demand_h;
                        env.sng_floor = patterns[w][p].sng_floor;
                        env.battery_net = flows[b];
                        env.avail = avail[static_cast<std::size_t>(t)];
                        assemble_hour(catalog, meta, env, scen, table[p][b].settings,
                                      dispatch.hours[static_cast<std::size_t>(t)]);
                        if (storage_idx < n) {
                            auto& op = dispatch.hours[static_cast<std::size_t>(t)].ops[storage_idx];
                            op.charge = std::max(0.0, flows[b]);
                            op.discharge = std::max(0.0, -flows[b]);
                            op.on = op.charge > 0.0;
                            soc += op.charge - op.discharge;
                            op.soc = soc;
                        }
                    }
                    dispatches.push_back(std::move(dispatch));
                }

                if (design_feasible) {
                    double capital = capital_cost(design, catalog);
                    double maintenance = maintenance_cost(design, catalog);
                    double crf_v = crf(options.annual.interest, options.annual.lifetime_years);
                    double tac = crf_v * capital + maintenance + expected_second_stage_day;
                    if (tac < best_tac - 1e-12) {
                        best_tac = tac;
                        best.design = design;
                        best.dispatches = std::move(dispatches);
                        best.report = total_annualized_cost(
                            best.design, best.dispatches,
                            std::vector<Scenario>(scenarios.begin(), scenarios.end()),
                            catalog, options.prices, options.annual);
                        best.incumbent_tacs.push_back(best.report.tac);
                    }
                }
            }

            if (axes.empty()) break;
            std::size_t k = 0;
            while (k < axes.size() && ++axis_idx[k] == axes[k].values.size()) {
                axis_idx[k] = 0;
                ++k;
            }
            if (k == axes.size()) break;
        }
    }

    best.outer_iterations = 0;
    best.status = std::isfinite(best_tac) ? SolveStatus::Optimal : SolveStatus::Infeasible;
    return best;
}

} // namespace memg
