#include "memg/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "dispatch_common.hpp"

namespace memg {

using namespace detail;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------
// hour-level optimization
// ---------------------------------------------------------------------

struct HourProblem {
    const Catalog* catalog = nullptr;
    const std::vector<DeviceMeta>* meta = nullptr;
    HourEnv env;
    ScenarioEnv scen;
    double tol = kDefaultBalanceTol;
    int max_sweeps = 6;
};

struct HourSolution {
    bool feasible = false;
    double day_cost = kInf;
    std::vector<DevSetting> settings;
    // shortfall diagnostics from the best rejected attempt
    double short_e = 0.0, short_h = 0.0, short_sng = 0.0;
};

double chp_heat_upper_for_power_bounds(const ChpPhysics& phys, double p_lo,
                                       double p_hi) {
    // largest h whose region power interval intersects [p_lo, p_hi]
    double lo = 0.0, hi = chp_max_heat(phys);
    auto ok = [&](double h) {
        double rlo, rhi;
        chp_power_range_at_heat(h, phys, rlo, rhi);
        return rlo <= rhi && rhi >= p_lo && rlo <= p_hi;
    };
    if (!ok(lo)) return -1.0;
    if (ok(hi)) return hi;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Sum of generator supply minus consumer draw, excluding device c.
double net_supply_excluding(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                            const std::vector<DevSetting>& settings,
                            std::size_t skip) {
    double net = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (c == skip) continue;
        const auto& m = meta[c];
        const auto& s = settings[c];
        if (!m.installed || !s.on || m.is_storage) continue;
        if (m.is_hp || m.is_p2g)
            net -= s.p;
        else
            net += s.p;
    }
    return net;
}

double total_heat_excluding(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                            const std::vector<DevSetting>& settings, std::size_t skip) {
    double h = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (c == skip) continue;
        if (!meta[c].installed || !settings[c].on) continue;
        h += settings[c].h;
    }
    return h;
}

double emissions_now(const Catalog& catalog, const std::vector<DeviceMeta>& meta,
                     const std::vector<DevSetting>& settings) {
    double em = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& m = meta[c];
        const auto& s = settings[c];
        if (!m.installed || !s.on) continue;
        const auto& spec = (catalog)[c];
        if (spec.kind == EquipmentKind::Conventional)
            em += cvt_emission(s.p, spec.conventional());
        else if (spec.kind != EquipmentKind::P2G && spec.kind != EquipmentKind::Storage &&
                 spec.kind != EquipmentKind::HeatPump)
            em += spec.co2_per_mwh * s.p;
    }
    return em;
}

// Refines continuous variables for a fixed commitment; returns the hour
// evaluation (infeasible when the committed set cannot cover demand).
HourEval refine_hour(const HourProblem& prob, std::vector<DevSetting>& settings) {
    const Catalog& catalog = *prob.catalog;
    const auto& meta = *prob.meta;
    const double tol = prob.tol;
    const bool trade = prob.scen.policy == Policy::CapAndTrade;
    const double x_tol = 1e-10;

    // -- initialise committed devices at their cheapest admissible points
    double committed_sng_capacity = 0.0;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& m = meta[c];
        auto& s = settings[c];
        if (!m.installed || !s.on) {
            s = DevSetting{};
            continue;
        }
        const auto& spec = catalog[c];
        s.p = 0.0;
        s.h = 0.0;
        s.xi = 0.0;
        if (m.renewable) {
            s.p = prob.env.avail[c];
        } else if (m.dispatchable) {
            s.p = m.p_lo;
        } else if (m.is_chp) {
            const auto& phys = spec.chp();
            double rlo, rhi;
            double h0 = std::max(0.0, std::min({phys.a.heat, phys.b.heat,
                                                phys.c.heat, phys.d.heat}));
            chp_power_range_at_heat(h0, phys, rlo, rhi);
            double lo = std::max(rlo, m.p_lo);
            double hi = std::min(rhi, m.p_hi);
            if (lo > hi + tol) return HourEval{}; // region misses the power bounds
            s.h = h0;
            s.p = lo;
        } else if (m.is_hp) {
            s.p = 0.0;
        } else if (m.is_p2g) {
            s.p = m.p_hi; // SOEC runs at rated draw while committed
            committed_sng_capacity += m.xi_max * m.sng_per_xi;
        }
    }

    if (prob.env.sng_floor > 0.0 &&
        committed_sng_capacity < prob.env.sng_floor - tol) {
        HourEval ev;
        return ev; // no committed P2G capacity for the mandatory sale
    }

    // -- distribute the mandatory SNG floor over committed P2G trains
    if (prob.env.sng_floor > 0.0) {
        double remaining = prob.env.sng_floor;
        for (std::size_t c = 0; c < catalog.size() && remaining > tol; ++c) {
            if (!meta[c].is_p2g || !settings[c].on) continue;
            double take = std::min(remaining, meta[c].xi_max * meta[c].sng_per_xi);
            settings[c].xi = take / meta[c].sng_per_xi;
            remaining -= take;
        }
    }

    // -- heat coverage: CHPs first (cheap heat ordering by quadratic slope), then HP
    {
        double have = total_heat_excluding(catalog, meta, settings, catalog.size());
        double need = prob.env.demand_h - have;
        if (need > tol) {
            std::vector<std::size_t> chps;
            for (std::size_t c = 0; c < catalog.size(); ++c)
                if (meta[c].is_chp && settings[c].on) chps.push_back(c);
            for (std::size_t c : chps) {
                if (need <= tol) break;
                const auto& phys = catalog[c].chp();
                double h_max = chp_heat_upper_for_power_bounds(phys, meta[c].p_lo,
                                                               meta[c].p_hi);
                if (h_max < 0.0) continue;
                double h_new = std::min(settings[c].h + need, h_max);
                double rlo, rhi;
                chp_power_range_at_heat(h_new, phys, rlo, rhi);
                settings[c].h = h_new;
                settings[c].p = std::clamp(settings[c].p, std::max(rlo, meta[c].p_lo),
                                           std::min(rhi, meta[c].p_hi));
                need = prob.env.demand_h -
                       total_heat_excluding(catalog, meta, settings, catalog.size());
            }
            if (need > tol) {
                for (std::size_t c = 0; c < catalog.size() && need > tol; ++c) {
                    if (!meta[c].is_hp || !settings[c].on) continue;
                    double cop = catalog[c].heat_pump().cop;
                    double h_new = std::min(need, cop * meta[c].p_hi);
                    settings[c].h = h_new;
                    settings[c].p = h_new / cop;
                    need -= h_new;
                }
            }
            if (need > tol) {
                HourEval ev;
                return ev; // heat uncoverable with this commitment
            }
        }
    }

    // -- electricity coverage in merit order
    auto cover_electricity = [&]() -> bool {
        double net = net_supply_excluding(catalog, meta, settings, catalog.size());
        double need = prob.env.demand_e + std::max(0.0, prob.env.battery_net) -
                      std::max(0.0, -prob.env.battery_net) - net;
        if (need <= tol) return true;
        // rank raisable devices by marginal objective at their current point
        std::vector<std::pair<double, std::size_t>> order;
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const auto& m = meta[c];
            if (!settings[c].on || !(m.dispatchable || m.is_chp)) continue;
            double room = m.p_hi - settings[c].p;
            if (m.is_chp) {
                double rlo, rhi;
                chp_power_range_at_heat(settings[c].h, catalog[c].chp(), rlo, rhi);
                room = std::min(m.p_hi, rhi) - settings[c].p;
            }
            if (room <= tol) continue;
            double p = settings[c].p;
            double dp = std::max(1e-6, 1e-6 * std::max(1.0, m.p_hi));
            double slope = (device_power_objective(catalog, c, prob.scen, p + dp,
                                                   settings[c].h, trade) -
                            device_power_objective(catalog, c, prob.scen, p,
                                                   settings[c].h, trade)) /
                           dp;
            order.emplace_back(slope, c);
        }
        std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return catalog[a.second].id < catalog[b.second].id;
        });
        for (const auto& [slope, c] : order) {
            if (need <= tol) break;
            double hi = meta[c].p_hi;
            if (meta[c].is_chp) {
                double rlo, rhi;
                chp_power_range_at_heat(settings[c].h, catalog[c].chp(), rlo, rhi);
                hi = std::min(hi, rhi);
            }
            double add = std::min(need, hi - settings[c].p);
            settings[c].p += add;
            need -= add;
        }
        return need <= tol;
    };
    if (!cover_electricity()) {
        HourEval ev;
        return ev;
    }

    // -- coordinate-descent refinement
    auto eval_now = [&]() {
        return evaluate_hour(catalog, meta, prob.env, prob.scen, settings, tol);
    };
    HourEval best = eval_now();
    if (!best.feasible) return best;

    for (int sweep = 0; sweep < prob.max_sweeps; ++sweep) {
        double before = best.day_cost;

        // single-coordinate moves with the balance as a lower bound
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const auto& m = meta[c];
            auto& s = settings[c];
            if (!m.installed || !s.on) continue;
            const auto& spec = catalog[c];

            if (m.dispatchable || m.is_chp) {
                double others = net_supply_excluding(catalog, meta, settings, c);
                double balance_lb = prob.env.demand_e +
                                    std::max(0.0, prob.env.battery_net) -
                                    std::max(0.0, -prob.env.battery_net) - others;
                double lo = std::max(m.p_lo, balance_lb);
                double hi = m.p_hi;
                if (m.is_chp) {
                    double rlo, rhi;
                    chp_power_range_at_heat(s.h, spec.chp(), rlo, rhi);
                    lo = std::max(lo, rlo);
                    hi = std::min(hi, rhi);
                }
                lo = std::max(lo, 0.0);
                if (lo > hi) continue;
                auto f = [&](double p) {
                    return device_power_objective(catalog, c, prob.scen, p, s.h, trade);
                };
                std::vector<double> bp;
                if (spec.kind == EquipmentKind::Conventional)
                    bp = valve_breakpoints(spec.conventional(), lo, hi);
                s.p = line_search(lo, hi, f, bp, x_tol * std::max(1.0, hi));
            }

            if (m.is_chp) {
                // heat coordinate at fixed power
                const auto& phys = spec.chp();
                double other_h = total_heat_excluding(catalog, meta, settings, c);
                double lb_balance = std::max(0.0, prob.env.demand_h - other_h);
                // heat interval of the region at the current power
                double h_lo = 0.0, h_hi = chp_max_heat(phys);
                // shrink to region by bisection on feasibility at fixed p
                auto inside = [&](double h) {
                    double rlo, rhi;
                    chp_power_range_at_heat(h, phys, rlo, rhi);
                    return rlo <= rhi && s.p >= rlo - 1e-12 && s.p <= rhi + 1e-12;
                };
                if (!inside(h_lo)) {
                    double a = h_lo, b = s.h;
                    for (int i = 0; i < 60; ++i) {
                        double mid = 0.5 * (a + b);
                        (inside(mid) ? b : a) = mid;
                    }
                    h_lo = b;
                }
                if (!inside(h_hi)) {
                    double a = s.h, b = h_hi;
                    for (int i = 0; i < 60; ++i) {
                        double mid = 0.5 * (a + b);
                        (inside(mid) ? a : b) = mid;
                    }
                    h_hi = a;
                }
                double lo = std::max(h_lo, lb_balance);
                double hi = h_hi;
                if (lo <= hi) {
                    auto f = [&](double h) {
                        return chp_cost_unchecked(s.p, h, phys);
                    };
                    s.h = line_search(lo, hi, f, {}, x_tol * std::max(1.0, hi));
                }
            }

            if (m.is_p2g) {
                // linear in xi: capture saves the CO2 price, costs cc, earns SNG revenue
                double other_sng = 0.0, other_capture = 0.0;
                for (std::size_t o = 0; o < catalog.size(); ++o) {
                    if (o == c || !meta[o].is_p2g || !settings[o].on) continue;
                    other_sng += settings[o].xi * meta[o].sng_per_xi;
                    other_capture += settings[o].xi * kMolarMassCo2;
                }
                double em = emissions_now(catalog, meta, settings);
                double xi_lb = std::max(0.0, (prob.env.sng_floor - other_sng) / m.sng_per_xi);
                double xi_ub = std::min(m.xi_max,
                                        std::max(0.0, (em - other_capture) / kMolarMassCo2));
                if (xi_lb > xi_ub + tol) {
                    HourEval ev;
                    return ev; // cannot meet the SNG floor within the capture headroom
                }
                xi_ub = std::max(xi_lb, xi_ub);
                double slope = kMolarMassCo2 * (spec.p2g().cc - prob.scen.co2_price) -
                               prob.scen.sng_price * m.sng_per_xi;
                s.xi = slope < 0.0 ? xi_ub : xi_lb;
            }
        }

        // pairwise transfers between electric nodes (keeps the balance exact)
        struct Node {
            std::size_t c;
            bool consumer; // HP: raising p lowers net supply
        };
        std::vector<Node> nodes;
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            if (!settings[c].on) continue;
            if (meta[c].dispatchable || meta[c].is_chp) nodes.push_back({c, false});
            if (meta[c].is_hp) nodes.push_back({c, true});
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (i == j) continue;
                const Node& from = nodes[i]; // supply decreases here
                const Node& to = nodes[j];   // supply increases here
                auto supply_room = [&](const Node& n, bool increase) -> double {
                    const auto& m = meta[n.c];
                    const auto& s = settings[n.c];
                    if (!n.consumer) {
                        double lo = m.p_lo, hi = m.p_hi;
                        if (m.is_chp) {
                            double rlo, rhi;
                            chp_power_range_at_heat(s.h, catalog[n.c].chp(), rlo, rhi);
                            lo = std::max(lo, rlo);
                            hi = std::min(hi, rhi);
                        }
                        return increase ? hi - s.p : s.p - lo;
                    }
                    // heat pump: supply increase = draw decrease, floored by the
                    // heat it must still deliver
                    double cop = catalog[n.c].heat_pump().cop;
                    double other_h = total_heat_excluding(catalog, meta, settings, n.c);
                    double p_floor =
                        std::max(0.0, (prob.env.demand_h - other_h)) / cop;
                    return increase ? s.p - p_floor : m.p_hi - s.p;
                };
                double dmax = std::min(supply_room(from, false), supply_room(to, true));
                if (dmax <= tol) continue;
                auto node_cost = [&](const Node& n, double p) {
                    if (n.consumer) return 0.0;
                    return device_power_objective(catalog, n.c, prob.scen, p,
                                                  settings[n.c].h, trade);
                };
                double pf = settings[from.c].p;
                double pt = settings[to.c].p;
                auto g = [&](double d) {
                    double c_from = node_cost(from, from.consumer ? pf + d : pf - d);
                    double c_to = node_cost(to, to.consumer ? pt - d : pt + d);
                    return c_from + c_to;
                };
                std::vector<double> bp;
                auto add_valve = [&](const Node& n, bool increase, double base) {
                    if (catalog[n.c].kind != EquipmentKind::Conventional) return;
                    const auto& phys = catalog[n.c].conventional();
                    auto pts = valve_breakpoints(phys, 0.0, dmax + base);
                    for (double p : pts) {
                        double d = increase ? p - base : base - p;
                        if (d > 0.0 && d < dmax) bp.push_back(d);
                    }
                };
                add_valve(from, from.consumer, pf);
                add_valve(to, !to.consumer, pt);
                std::sort(bp.begin(), bp.end());
                double d_star = line_search(0.0, dmax, g, bp, x_tol * std::max(1.0, dmax));
                if (g(d_star) < g(0.0) - 1e-12) {
                    settings[from.c].p = from.consumer ? pf + d_star : pf - d_star;
                    settings[to.c].p = to.consumer ? pt - d_star : pt + d_star;
                    if (from.consumer)
                        settings[from.c].h =
                            settings[from.c].p * catalog[from.c].heat_pump().cop;
                    if (to.consumer)
                        settings[to.c].h =
                            settings[to.c].p * catalog[to.c].heat_pump().cop;
                }
            }
        }

        // pairwise heat transfers between committed CHPs (total heat fixed,
        // so the heat balance stays satisfied while the split improves)
        {
            std::vector<std::size_t> chps;
            for (std::size_t c = 0; c < catalog.size(); ++c)
                if (meta[c].is_chp && settings[c].on) chps.push_back(c);
            for (std::size_t a = 0; a < chps.size(); ++a) {
                for (std::size_t b = 0; b < chps.size(); ++b) {
                    if (a == b) continue;
                    std::size_t ci = chps[a], cj = chps[b];
                    const auto& pi = catalog[ci].chp();
                    const auto& pj = catalog[cj].chp();
                    auto heat_range = [&](std::size_t c, const ChpPhysics& phys,
                                          double& lo, double& hi) {
                        // heat interval of the region at the current power
                        auto inside = [&](double h) {
                            double rlo, rhi;
                            chp_power_range_at_heat(h, phys, rlo, rhi);
                            return rlo <= rhi && settings[c].p >= rlo - 1e-12 &&
                                   settings[c].p <= rhi + 1e-12;
                        };
                        lo = 0.0;
                        hi = chp_max_heat(phys);
                        if (!inside(lo)) {
                            double x = lo, y = settings[c].h;
                            for (int it = 0; it < 50; ++it) {
                                double mid = 0.5 * (x + y);
                                (inside(mid) ? y : x) = mid;
                            }
                            lo = y;
                        }
                        if (!inside(hi)) {
                            double x = settings[c].h, y = hi;
                            for (int it = 0; it < 50; ++it) {
                                double mid = 0.5 * (x + y);
                                (inside(mid) ? x : y) = mid;
                            }
                            hi = x;
                        }
                    };
                    double lo_i, hi_i, lo_j, hi_j;
                    heat_range(ci, pi, lo_i, hi_i);
                    heat_range(cj, pj, lo_j, hi_j);
                    double dmax = std::min(settings[ci].h - lo_i, hi_j - settings[cj].h);
                    if (dmax <= tol) continue;
                    double hi0 = settings[ci].h, hj0 = settings[cj].h;
                    auto g = [&](double d) {
                        return chp_cost_unchecked(settings[ci].p, hi0 - d, pi) +
                               chp_cost_unchecked(settings[cj].p, hj0 + d, pj);
                    };
                    double d_star = line_search(0.0, dmax, g, {}, x_tol * std::max(1.0, dmax));
                    if (g(d_star) < g(0.0) - 1e-12) {
                        settings[ci].h = hi0 - d_star;
                        settings[cj].h = hj0 + d_star;
                    }
                }
            }
        }

        // clamp P2G extent into the (possibly reduced) capture headroom
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            if (!meta[c].is_p2g || !settings[c].on) continue;
            double em = emissions_now(catalog, meta, settings);
            double other_capture = 0.0;
            for (std::size_t o = 0; o < catalog.size(); ++o)
                if (o != c && meta[o].is_p2g && settings[o].on)
                    other_capture += settings[o].xi * kMolarMassCo2;
            double xi_ub = std::min(meta[c].xi_max,
                                    std::max(0.0, (em - other_capture) / kMolarMassCo2));
            settings[c].xi = std::min(settings[c].xi, xi_ub);
        }

        HourEval ev = eval_now();
        if (!ev.feasible) return ev;
        best = ev;
        if (before - best.day_cost <= 1e-12 + 1e-9 * std::abs(before)) break;
    }
    return best;
}

// Commitment search for one hour: exhaustive when small, all-on plus
// merit-ordered toggle descent otherwise.
HourSolution solve_hour(const HourProblem& prob,
                        const std::vector<DevSetting>* warm_start) {
    const Catalog& catalog = *prob.catalog;
    const auto& meta = *prob.meta;

    std::vector<std::size_t> controllable;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (!meta[c].installed || meta[c].is_storage) continue;
        if (meta[c].renewable && prob.env.avail[c] <= 0.0) continue; // nothing to switch on
        controllable.push_back(c);
    }

    // toggle trials refine at reduced depth; the winner gets a full polish
    HourProblem light = prob;
    light.max_sweeps = std::min(prob.max_sweeps, 2);

    HourSolution out;
    out.settings.assign(catalog.size(), DevSetting{});

    auto try_commitment_with = [&](const HourProblem& p,
                                   const std::vector<bool>& on_flags) {
        std::vector<DevSetting> settings(catalog.size());
        for (std::size_t k = 0; k < controllable.size(); ++k)
            settings[controllable[k]].on = on_flags[k];
        HourEval ev = refine_hour(p, settings);
        if (ev.feasible && ev.day_cost < out.day_cost - 1e-12) {
            out.feasible = true;
            out.day_cost = ev.day_cost;
            out.settings = settings;
        }
        return ev;
    };
    auto try_commitment = [&](const std::vector<bool>& on_flags) {
        return try_commitment_with(prob, on_flags);
    };

    const std::size_t n = controllable.size();
    if (n == 0) {
        std::vector<DevSetting> settings(catalog.size());
        HourEval ev = refine_hour(prob, settings);
        out.feasible = ev.feasible;
        out.day_cost = ev.feasible ? ev.day_cost : kInf;
        out.settings = settings;
        if (!ev.feasible) {
            out.short_e = prob.env.demand_e;
            out.short_h = prob.env.demand_h;
            out.short_sng = prob.env.sng_floor;
        }
        return out;
    }

    if (n <= 4) {
        // exact commitment enumeration at oracle scale
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<bool> flags(n);
            for (std::size_t k = 0; k < n; ++k) flags[k] = (mask >> k) & 1u;
            try_commitment(flags);
        }
    } else {
        if (warm_start) {
            std::vector<bool> warm(n);
            for (std::size_t k = 0; k < n; ++k)
                warm[k] = (*warm_start)[controllable[k]].on;
            try_commitment(warm);
        }
        try_commitment(std::vector<bool>(n, true));
        if (!out.feasible) {
            // even everything-on fails: record shortfalls for diagnostics
            out.short_e = prob.env.demand_e;
            out.short_h = prob.env.demand_h;
            out.short_sng = prob.env.sng_floor;
            return out;
        }
        // merit-ordered toggle descent
        for (int round = 0; round < prob.max_sweeps; ++round) {
            bool improved = false;
            // order toggles by the device objective at the current point,
            // most expensive first
            std::vector<std::pair<double, std::size_t>> order;
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t c = controllable[k];
                double score = out.settings[c].on
                                   ? device_power_objective(
                                         catalog, c, prob.scen, out.settings[c].p,
                                         out.settings[c].h,
                                         prob.scen.policy == Policy::CapAndTrade)
                                   : 0.0;
                order.emplace_back(-score, k);
            }
            std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return catalog[controllable[a.second]].id <
                       catalog[controllable[b.second]].id;
            });
            for (const auto& [neg_score, k] : order) {
                std::vector<bool> trial(n);
                for (std::size_t q = 0; q < n; ++q) trial[q] = out.settings[controllable[q]].on;
                trial[k] = !trial[k];
                double before = out.day_cost;
                try_commitment_with(light, trial);
                if (out.day_cost < before - 1e-12) improved = true;
            }
            if (!improved) break;
        }
        // full-depth polish of the winning commitment
        std::vector<bool> winner(n);
        for (std::size_t q = 0; q < n; ++q) winner[q] = out.settings[controllable[q]].on;
        try_commitment_with(prob, winner);
    }

    if (!out.feasible) {
        out.short_e = prob.env.demand_e;
        out.short_h = prob.env.demand_h;
        out.short_sng = prob.env.sng_floor;
    }
    return out;
}

// ---------------------------------------------------------------------
// scenario-level dispatch with the battery pass
// ---------------------------------------------------------------------

struct StorageState {
    std::size_t c = 0;
    double rp = 0.0;
    double cap = 0.0;
    double soc_init = 0.0;
    double soc_lo = 0.0;
    double soc_hi = 0.0;
    double q_max_rp = 0.0;
};

// Dispatches every scenario for a fixed design, one task per scenario;
// results and the first raised error follow scenario order, so concurrent
// and serial runs produce identical outputs.
std::vector<Dispatch> dispatch_all(const Design& design,
                                   const std::vector<Scenario>& scenarios,
                                   const DemandProfile& demand, const Catalog& catalog,
                                   const SolverOptions& options) {
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        static_cast<unsigned>(scenarios.size()));
    if (workers <= 1 || scenarios.size() <= 1) {
        std::vector<Dispatch> out;
        out.reserve(scenarios.size());
        for (const auto& s : scenarios)
            out.push_back(solve_dispatch(design, s, demand, catalog, options));
        return out;
    }
    std::vector<Dispatch> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < scenarios.size(); i += workers) {
                try {
                    out[i] = solve_dispatch(design, scenarios[i], demand, catalog, options);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<StorageState> storage_states(const Catalog& catalog, const Design& design) {
    std::vector<StorageState> out;
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        if (catalog[c].kind != EquipmentKind::Storage || !design.entries[c].install)
            continue;
        const auto& st = catalog[c].storage();
        StorageState s;
        s.c = c;
        s.rp = design.entries[c].rated_power;
        s.cap = design.entries[c].storage_cap;
        s.soc_lo = st.soc_lo * s.cap;
        s.soc_hi = st.soc_hi * s.cap;
        s.soc_init = st.soc_init > 0.0 ? st.soc_init : 0.5 * (s.soc_lo + s.soc_hi);
        s.q_max_rp = st.q_max * s.rp;
        out.push_back(s);
    }
    return out;
}

} // namespace

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::IterLimit: return "IterLimit";
    }
    return "?";
}

void SolverOptions::validate() const {
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw ValidationError("solver options: tolerances must be > 0");
    if (sizing_grid_points < 2)
        throw ValidationError("solver options: sizing_grid_points must be >= 2");
    if (max_outer_iters < 1 || dispatch_max_iters < 1)
        throw ValidationError("solver options: iteration limits must be >= 1");
}

Dispatch solve_dispatch(const Design& design, const Scenario& scenario,
                        const DemandProfile& demand, const Catalog& catalog,
                        const SolverOptions& options) {
    options.validate();
    {
        auto dv = check_design(design, catalog, options.balance_tol);
        if (!dv.empty())
            throw ValidationError("solve_dispatch: design is infeasible: " +
                                  dv.front().describe());
    }

    auto meta = build_device_meta(catalog, design);
    auto avail = renewable_availability(design, catalog, scenario, options.irradiance);
    auto storages = storage_states(catalog, design);

    ScenarioEnv scen;
    scen.policy = scenario.policy;
    scen.co2_price = scenario.co2_price;
    scen.sng_price = scenario.sng_price;
    scen.prices = options.prices;

    auto make_env = [&](int t, double battery_net) {
        HourEnv env;
        env.demand_e = demand.at(Resource::Electricity, t);
        env.demand_h = demand.at(Resource::Heat, t);
        env.sng_floor = demand.at(Resource::Sng, t);
        env.battery_net = battery_net;
        env.avail = avail[static_cast<std::size_t>(t)];
        return env;
    };

    std::vector<double> battery_net(kHoursPerDay, 0.0);
    std::vector<HourSolution> hours(kHoursPerDay);

    auto solve_all_hours = [&](bool warm) {
        double total = 0.0;
        for (int t = 0; t < kHoursPerDay; ++t) {
            HourProblem prob;
            prob.catalog = &catalog;
            prob.meta = &meta;
            prob.env = make_env(t, battery_net[static_cast<std::size_t>(t)]);
            prob.scen = scen;
            prob.tol = options.balance_tol;
            prob.max_sweeps = options.dispatch_max_iters;
            const auto* ws = warm ? &hours[static_cast<std::size_t>(t)].settings : nullptr;
            auto sol = solve_hour(prob, ws);
            if (!sol.feasible) {
                std::string what = "solve_dispatch: scenario '" + scenario.id +
                                   "' hour " + std::to_string(t + 1) +
                                   ": demand cannot be met (";
                what += sol.short_sng > 0.0 ? "sng" : (sol.short_h > 0.0 ? "heat" : "electricity");
                what += " binding)";
                throw InfeasibleDispatch(what);
            }
            hours[static_cast<std::size_t>(t)] = std::move(sol);
            total += hours[static_cast<std::size_t>(t)].day_cost;
        }
        return total;
    };

    double current_cost = solve_all_hours(false);

    // battery pass: greedy arbitrage shifting charge into cheap hours and
    // discharge into expensive ones, within SOC bounds and the daily cycle.
    // The shifted net profile lives on the first installed storage unit;
    // further units stay idle.
    if (!storages.empty()) {
        for (int outer = 0; outer < options.dispatch_max_iters; ++outer) {
            bool improved = false;
            {
                const auto& st = storages.front();
                if (st.rp <= 0.0 || st.cap <= 0.0) break;
                // candidate shift quanta
                double span = st.q_max_rp;
                std::vector<double> quanta = {span, span / 2.0, span / 4.0, span / 8.0};
                for (double q : quanta) {
                    if (q <= options.balance_tol) continue;
                    bool applied = true;
                    while (applied) {
                        applied = false;
                        double best_gain = -1e-9;
                        int best_i = -1, best_j = -1;
                        HourSolution best_sol_i, best_sol_j;
                        for (int i = 0; i < kHoursPerDay; ++i) {
                            double ni = battery_net[static_cast<std::size_t>(i)];
                            if (ni + q > st.q_max_rp + 1e-12) continue;
                            for (int j = 0; j < kHoursPerDay; ++j) {
                                if (j == i) continue;
                                double nj = battery_net[static_cast<std::size_t>(j)];
                                if (nj - q < -st.q_max_rp - 1e-12) continue;
                                // SOC path feasibility for +q at i, -q at j
                                double soc = st.soc_init;
                                bool ok = true;
                                for (int t = 0; t < kHoursPerDay; ++t) {
                                    double n = battery_net[static_cast<std::size_t>(t)];
                                    if (t == i) n += q;
                                    if (t == j) n -= q;
                                    soc += n;
                                    if (soc < st.soc_lo - 1e-9 || soc > st.soc_hi + 1e-9) {
                                        ok = false;
                                        break;
                                    }
                                }
                                if (!ok) continue;
                                // exact re-solve of the two affected hours
                                HourProblem pi;
                                pi.catalog = &catalog;
                                pi.meta = &meta;
                                pi.env = make_env(i, ni + q);
                                pi.scen = scen;
                                pi.tol = options.balance_tol;
                                pi.max_sweeps = options.dispatch_max_iters;
                                auto si = solve_hour(pi, &hours[static_cast<std::size_t>(i)].settings);
                                if (!si.feasible) continue;
                                HourProblem pj = pi;
                                pj.env = make_env(j, nj - q);
                                auto sj = solve_hour(pj, &hours[static_cast<std::size_t>(j)].settings);
                                if (!sj.feasible) continue;
                                double gain = (hours[static_cast<std::size_t>(i)].day_cost +
                                               hours[static_cast<std::size_t>(j)].day_cost) -
                                              (si.day_cost + sj.day_cost);
                                if (gain > best_gain + 1e-12) {
                                    best_gain = gain;
                                    best_i = i;
                                    best_j = j;
                                    best_sol_i = si;
                                    best_sol_j = sj;
                                }
                            }
                        }
                        if (best_i >= 0 && best_gain > 1e-9 * std::max(1.0, std::abs(current_cost))) {
                            battery_net[static_cast<std::size_t>(best_i)] += q;
                            battery_net[static_cast<std::size_t>(best_j)] -= q;
                            current_cost -= best_gain;
                            hours[static_cast<std::size_t>(best_i)] = std::move(best_sol_i);
                            hours[static_cast<std::size_t>(best_j)] = std::move(best_sol_j);
                            applied = true;
                            improved = true;
                        }
                    }
                }
            }
            if (!improved) break;
        }
    }

    // -- assemble the dispatch
    Dispatch dispatch = Dispatch::empty(catalog);
    std::vector<double> soc(storages.size());
    for (std::size_t s = 0; s < storages.size(); ++s) soc[s] = storages[s].soc_init;

    for (int t = 0; t < kHoursPerDay; ++t) {
        auto& hour = dispatch.hours[static_cast<std::size_t>(t)];
        HourEnv env = make_env(t, battery_net[static_cast<std::size_t>(t)]);
        assemble_hour(catalog, meta, env, scen, hours[static_cast<std::size_t>(t)].settings, hour);
        // storage operating points (single storage carries the whole net)
        for (std::size_t s = 0; s < storages.size(); ++s) {
            const auto& st = storages[s];
            auto& op = hour.ops[st.c];
            double net = s == 0 ? battery_net[static_cast<std::size_t>(t)] : 0.0;
            op.charge = std::max(0.0, net);
            op.discharge = std::max(0.0, -net);
            op.on = op.charge > 0.0; // commitment flag selects charging mode
            soc[s] += op.charge - op.discharge;
            op.soc = soc[s];
        }
    }

    auto violations = check_feasibility(design, dispatch, scenario, demand, catalog,
                                        options.balance_tol * 4.0 + 1e-9);
    if (!violations.empty())
        throw MemgError("solve_dispatch: internal consistency failure: " +
                        violations.front().describe());
    return dispatch;
}

// ---------------------------------------------------------------------
// design-level search
// ---------------------------------------------------------------------

namespace {

struct SizingVar {
    std::size_t c;
    enum class Kind { RatedPower, Capacity, Diameter, Tilt } kind;
    double lo = 0.0, hi = 0.0;
};

Design make_design(const Catalog& catalog, const std::vector<bool>& install,
                   const std::vector<SizingVar>& vars, const std::vector<double>& x) {
    Design d = Design::empty(catalog);
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        auto& e = d.entries[c];
        e.install = install[c];
        if (!e.install) continue;
        const auto& spec = catalog[c];
        e.rated_power = spec.rp_min;
        if (spec.kind == EquipmentKind::Storage) e.storage_cap = spec.cap_min;
        if (spec.kind == EquipmentKind::WindFarm) {
            e.rotor_diameter = wind_diameter_for_rated_power(
                std::max(spec.rp_min, 1e-9), spec.wind());
            e.rated_power = wind_rated_power(e.rotor_diameter, spec.wind());
        }
        if (spec.kind == EquipmentKind::SolarArray)
            e.tilt = SolarPhysics::tilt_min_deg * std::numbers::pi / 180.0;
    }
    for (std::size_t k = 0; k < vars.size(); ++k) {
        const auto& v = vars[k];
        auto& e = d.entries[v.c];
        switch (v.kind) {
        case SizingVar::Kind::RatedPower:
            e.rated_power = x[k];
            break;
        case SizingVar::Kind::Capacity:
            e.storage_cap = x[k];
            break;
        case SizingVar::Kind::Diameter:
            e.rotor_diameter = x[k];
            e.rated_power = wind_rated_power(x[k], catalog[v.c].wind());
            break;
        case SizingVar::Kind::Tilt:
            e.tilt = x[k];
            break;
        }
    }
    return d;
}

} // namespace

Solution solve_design(const Catalog& catalog, const std::vector<Scenario>& scenarios,
                      const DemandProfile& demand, const SolverOptions& options) {
    options.validate();
    validate_catalog(catalog);
    validate_scenario_set(scenarios);
    validate_demand(demand);
    if (catalog.empty()) throw ValidationError("solve_design: empty catalog");
    if (catalog.size() > 24)
        throw ValidationError("solve_design: catalog too large for subset enumeration");

    std::vector<bool> forced(catalog.size(), false);
    for (const auto& id : options.forced_install) {
        auto idx = find_spec(catalog, id);
        if (!idx) throw ValidationError("solve_design: forced-install id '" + id +
                                        "' not in catalog");
        forced[*idx] = true;
    }

    const double crf_v = crf(options.annual.interest, options.annual.lifetime_years);

    double peak_e = 0.0, peak_h = 0.0, peak_sng = 0.0;
    for (int t = 0; t < kHoursPerDay; ++t) {
        peak_e = std::max(peak_e, demand.at(Resource::Electricity, t));
        peak_h = std::max(peak_h, demand.at(Resource::Heat, t));
        peak_sng = std::max(peak_sng, demand.at(Resource::Sng, t));
    }

    double max_co2_price = 0.0, max_sng_price = 0.0;
    for (const auto& s : scenarios) {
        max_co2_price = std::max(max_co2_price, s.co2_price);
        max_sng_price = std::max(max_sng_price, s.sng_price);
    }

    // device-level capability bounds used for pruning and the lower bound
    std::vector<double> e_cap(catalog.size(), 0.0), h_cap(catalog.size(), 0.0),
        sng_cap(catalog.size(), 0.0);
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& spec = catalog[c];
        switch (spec.kind) {
        case EquipmentKind::Storage:
            e_cap[c] = spec.storage().q_max * spec.rp_max;
            break;
        case EquipmentKind::HeatPump:
            h_cap[c] = spec.heat_pump().cop * spec.p_max_frac * spec.rp_max;
            break;
        case EquipmentKind::P2G: {
            double xi_max = sabatier_max_extent(spec.p2g());
            sng_cap[c] = xi_max * kMolarMassCh4 * spec.p2g().sng_yield;
            break;
        }
        case EquipmentKind::CHP:
            e_cap[c] = spec.p_max_frac * spec.rp_max;
            h_cap[c] = chp_max_heat(spec.chp());
            break;
        default:
            e_cap[c] = spec.p_max_frac * spec.rp_max;
            break;
        }
    }

    struct Candidate {
        std::uint32_t mask;
        double lower_bound;
        int size;
    };
    std::vector<Candidate> queue;

    const std::size_t n = catalog.size();
    std::uint32_t forced_mask = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (forced[c]) forced_mask |= (1u << c);

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if ((mask & forced_mask) != forced_mask) continue;
        int size = std::popcount(mask);
        if (size > kMaxInstalled) continue;
        double emax = 0.0, hmax = 0.0, sngmax = 0.0;
        double capmin = 0.0, maintmin = 0.0, rpmax_sum = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            emax += e_cap[c];
            hmax += h_cap[c];
            sngmax += sng_cap[c];
            capmin += catalog[c].psi0 * 1e6 * catalog[c].rp_min + catalog[c].gamma0 +
                      (catalog[c].kind == EquipmentKind::Storage
                           ? catalog[c].omega0 * catalog[c].cap_min
                           : 0.0);
            maintmin += catalog[c].psik * catalog[c].rp_min + catalog[c].gammak +
                        (catalog[c].kind == EquipmentKind::Storage
                             ? catalog[c].omegak * catalog[c].cap_min
                             : 0.0);
            if (catalog[c].is_capped_generator()) rpmax_sum += catalog[c].rp_max;
        }
        // quick infeasibility pruning on optimistic capacity
        if (emax < peak_e - 1e-9) continue;
        if (hmax < peak_h - 1e-9) continue;
        if (sngmax < peak_sng - 1e-9) continue;
        // valid optimistic bound: second-stage >= -(allowance sales + SNG revenue)
        double second_stage_floor =
            -kDaysPerYear * kHoursPerDay *
            (kCo2CapPerMw * rpmax_sum * max_co2_price + sngmax * max_sng_price);
        Candidate cand;
        cand.mask = mask;
        cand.size = size;
        cand.lower_bound = crf_v * capmin + maintmin + second_stage_floor;
        queue.push_back(cand);
    }

    std::sort(queue.begin(), queue.end(), [](const Candidate& a, const Candidate& b) {
        if (a.lower_bound != b.lower_bound) return a.lower_bound < b.lower_bound;
        if (a.size != b.size) return a.size < b.size;
        return a.mask < b.mask;
    });

    Solution best;
    best.status = SolveStatus::Infeasible;
    best.design = Design::empty(catalog); // structurally valid even when infeasible
    double incumbent = kInf;
    int explored = 0;
    bool truncated = false;

    for (const auto& cand : queue) {
        if (explored >= options.max_outer_iters) {
            truncated = true;
            break;
        }
        if (cand.lower_bound >= incumbent - options.abs_tol) {
            // best-first order: every later bound is at least as large
            break;
        }
        ++explored;

        std::vector<bool> install(n, false);
        for (std::size_t c = 0; c < n; ++c) install[c] = (cand.mask >> c) & 1u;

        // continuous sizing variables for this subset
        std::vector<SizingVar> vars;
        for (std::size_t c = 0; c < n; ++c) {
            if (!install[c]) continue;
            const auto& spec = catalog[c];
            if (spec.kind == EquipmentKind::WindFarm) {
                vars.push_back({c, SizingVar::Kind::Diameter,
                                wind_diameter_for_rated_power(spec.rp_min, spec.wind()),
                                wind_diameter_for_rated_power(spec.rp_max, spec.wind())});
            } else if (spec.rp_max > spec.rp_min) {
                vars.push_back({c, SizingVar::Kind::RatedPower, spec.rp_min, spec.rp_max});
            }
            if (spec.kind == EquipmentKind::Storage && spec.cap_max > spec.cap_min)
                vars.push_back({c, SizingVar::Kind::Capacity, spec.cap_min, spec.cap_max});
            if (spec.kind == EquipmentKind::SolarArray) {
                vars.push_back({c, SizingVar::Kind::Tilt,
                                SolarPhysics::tilt_min_deg * std::numbers::pi / 180.0,
                                SolarPhysics::tilt_max_deg * std::numbers::pi / 180.0});
            }
        }

        std::vector<Dispatch> eval_dispatches;
        auto objective = [&](const std::vector<double>& x, std::vector<Dispatch>* keep) {
            Design d = make_design(catalog, install, vars, x);
            if (!check_design(d, catalog, options.balance_tol).empty()) return kInf;
            std::vector<Dispatch> dispatches;
            try {
                dispatches = dispatch_all(d, scenarios, demand, catalog, options);
            } catch (const InfeasibleDispatch&) {
                return kInf;
            }
            auto report = total_annualized_cost(d, dispatches, scenarios, catalog,
                                                options.prices, options.annual);
            if (keep) *keep = std::move(dispatches);
            return report.tac;
        };

        // initial samples: per-variable grids (explicit when supplied)
        std::vector<std::vector<double>> grids(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) {
            const auto& v = vars[k];
            auto it = options.sizing_grids.find(catalog[v.c].id);
            if (it != options.sizing_grids.end() &&
                v.kind != SizingVar::Kind::Tilt) {
                for (double g : it->second)
                    if (g >= v.lo - 1e-9 && g <= v.hi + 1e-9)
                        grids[k].push_back(std::clamp(g, v.lo, v.hi));
            }
            if (grids[k].empty()) {
                int pts = options.sizing_grid_points;
                for (int i = 0; i < pts; ++i)
                    grids[k].push_back(v.lo + (v.hi - v.lo) * i / (pts - 1));
            }
        }

        double best_sub = kInf;
        std::vector<double> best_x(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) best_x[k] = vars[k].lo;

        if (vars.empty()) {
            best_sub = objective({}, nullptr);
        } else {
            std::size_t combos = 1;
            bool overflow = false;
            for (const auto& g : grids) {
                combos *= g.size();
                if (combos > 1024) {
                    overflow = true;
                    break;
                }
            }
            if (!overflow) {
                std::vector<std::size_t> idx(vars.size(), 0);
                while (true) {
                    std::vector<double> x(vars.size());
                    for (std::size_t k = 0; k < vars.size(); ++k) x[k] = grids[k][idx[k]];
                    double f = objective(x, nullptr);
                    if (f < best_sub) {
                        best_sub = f;
                        best_x = x;
                    }
                    std::size_t k = 0;
                    while (k < vars.size() && ++idx[k] == grids[k].size()) {
                        idx[k] = 0;
                        ++k;
                    }
                    if (k == vars.size()) break;
                }
            } else {
                // box corners plus axis sweeps around the midpoint; the upper
                // corner guards against discarding subsets that are feasible
                // only with several sizings raised together
                std::vector<double> mid(vars.size()), lo(vars.size()), hi(vars.size());
                for (std::size_t k = 0; k < vars.size(); ++k) {
                    mid[k] = 0.5 * (vars[k].lo + vars[k].hi);
                    lo[k] = vars[k].lo;
                    hi[k] = vars[k].hi;
                }
                for (const auto& x : {hi, mid, lo}) {
                    double f = objective(x, nullptr);
                    if (f < best_sub) {
                        best_sub = f;
                        best_x = x;
                    }
                }
                std::vector<double> base =
                    std::isfinite(best_sub) ? best_x : hi; // sweep around something feasible
                for (std::size_t k = 0; k < vars.size(); ++k) {
                    for (double g : grids[k]) {
                        std::vector<double> x = base;
                        x[k] = g;
                        double f = objective(x, nullptr);
                        if (f < best_sub) {
                            best_sub = f;
                            best_x = x;
                        }
                    }
                }
            }

            // deterministic compass pattern search from the best sample
            if (std::isfinite(best_sub)) {
                std::vector<double> step(vars.size());
                for (std::size_t k = 0; k < vars.size(); ++k)
                    step[k] = (vars[k].hi - vars[k].lo) / 4.0;
                for (int it = 0; it < options.pattern_search_max_iters; ++it) {
                    bool moved = false;
                    for (std::size_t k = 0; k < vars.size(); ++k) {
                        if (step[k] <= 0.0) continue;
                        for (double dir : {+1.0, -1.0}) {
                            std::vector<double> x = best_x;
                            x[k] = std::clamp(x[k] + dir * step[k], vars[k].lo, vars[k].hi);
                            if (x[k] == best_x[k]) continue;
                            double f = objective(x, nullptr);
                            if (f < best_sub - 1e-12) {
                                best_sub = f;
                                best_x = x;
                                moved = true;
                            }
                        }
                    }
                    if (!moved) {
                        double max_step = 0.0;
                        for (std::size_t k = 0; k < vars.size(); ++k) {
                            step[k] *= 0.5;
                            max_step = std::max(max_step,
                                                step[k] / std::max(1e-12, vars[k].hi - vars[k].lo));
                        }
                        if (max_step < 1e-9) break;
                    }
                }
            }
        }

        if (std::isfinite(best_sub) && best_sub < incumbent - 1e-12) {
            std::vector<Dispatch> dispatches;
            double confirm = objective(best_x, &dispatches);
            if (std::isfinite(confirm) && confirm < incumbent - 1e-12) {
                incumbent = confirm;
                best.design = make_design(catalog, install, vars, best_x);
                best.dispatches = std::move(dispatches);
                best.report = total_annualized_cost(best.design, best.dispatches,
                                                    scenarios, catalog, options.prices,
                                                    options.annual);
                best.incumbent_tacs.push_back(incumbent);
            }
        }
        if (options.progress)
            options.progress(explored, static_cast<int>(queue.size()), incumbent);
    }

    best.outer_iterations = explored;
    if (!std::isfinite(incumbent)) {
        best.status = truncated ? SolveStatus::IterLimit : SolveStatus::Infeasible;
        return best;
    }
    best.status = truncated ? SolveStatus::IterLimit : SolveStatus::Optimal;
    if (best.status == SolveStatus::IterLimit && !best.dispatches.empty())
        best.status = SolveStatus::IterLimit; // incumbent exists but search did not close
    return best;
}

Solution solve_deterministic(const Catalog& catalog,
                             const std::vector<Scenario>& scenarios,
                             Policy policy, const DemandProfile& demand,
                             const SolverOptions& options) {
    Scenario avg = averaged_scenario(scenarios, policy);
    std::vector<Scenario> singleton = {avg};
    SolverOptions opts = options;
    opts.mode = SolveMode::Deterministic;
    return solve_design(catalog, singleton, demand, opts);
}

CostReport evaluate_design(const Design& design, const std::vector<Scenario>& scenarios,
                           const DemandProfile& demand, const Catalog& catalog,
                           const SolverOptions& options) {
    CostReport report;
    report.crf = crf(options.annual.interest, options.annual.lifetime_years);
    report.capital = capital_cost(design, catalog);
    report.maintenance = maintenance_cost(design, catalog);
    for (const auto& scenario : scenarios) {
        ScenarioCost sc;
        sc.scenario_id = scenario.id;
        sc.probability = scenario.probability;
        try {
            Dispatch d = solve_dispatch(design, scenario, demand, catalog, options);
            sc.operational = operational_cost(catalog, d, scenario, options.prices);
            if (scenario.policy == Policy::CapAndTrade)
                sc.trading = carbon_trading_cost(catalog, d, scenario);
            else
                sc.tax = emission_tax_cost(catalog, d, scenario);
            sc.revenue = sng_revenue(catalog, d, scenario);
        } catch (const InfeasibleDispatch&) {
            sc.infeasible = true;
        } catch (const ValidationError&) {
            sc.infeasible = true;
        }
        report.scenarios.push_back(std::move(sc));
    }
    report.finalize();
    return report;
}

} // namespace memg
