#include <doctest.h>

#include <cmath>

#include "memg/json_io.hpp"
#include "memg/oracle.hpp"
#include "memg/solver.hpp"
#include "test_support.hpp"

using namespace memg;
using namespace memg::testsupport;

namespace {

// Two affine generators with a common 8 MW rating; demands are multiples
// of 1 MW so the continuum optimum coincides with the eighth-fraction grid.
struct TinyInstance {
    Catalog catalog;
    std::vector<Scenario> scenarios;
    DemandProfile demand;
    SolverOptions options;
    OracleGrids grids;

    TinyInstance() {
        catalog = {affine_gen("G1", 8.0, 8.0, 1.0, 0.3, 1000.0, 0.10),
                   affine_gen("G2", 8.0, 8.0, 2.0, 0.2, 1000.0, 0.05)};
        scenarios = {make_scenario("w1", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0)};
        demand = flat_demand(11.0); // 8 + 3, both on the eighth grid
        options = tiny_options();
        for (int k = 0; k <= 8; ++k)
            grids.power_fractions.push_back(k / 8.0);
    }
};

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("zero demand dispatches everything off at zero cost") {
    Catalog cat = {affine_gen("G1", 0.0, 50.0, 1.0)};
    Design d = Design::empty(cat);
    d.entries[0].install = true;
    d.entries[0].rated_power = 50.0;
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    auto dispatch = solve_dispatch(d, s, flat_demand(0.0), cat, tiny_options());
    for (const auto& hour : dispatch.hours) {
        CHECK_FALSE(hour.ops[0].on);
        CHECK(hour.ops[0].power == 0.0);
    }
    CHECK(operational_cost(cat, dispatch, s, tiny_options().prices) == 0.0);
}

TEST_CASE("min-load surplus is spun off rather than declared infeasible") {
    Catalog cat = {affine_gen("G1", 40.0, 40.0, 1.0)};
    cat[0].p_min_frac = 0.5; // committed minimum 20 MW
    Design d = Design::empty(cat);
    d.entries[0].install = true;
    d.entries[0].rated_power = 40.0;
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    auto dispatch = solve_dispatch(d, s, flat_demand(10.0), cat, tiny_options());
    for (const auto& hour : dispatch.hours) {
        CHECK(hour.ops[0].on);
        CHECK(hour.ops[0].power == doctest::Approx(20.0));
        CHECK(hour.slack[Resource::Electricity] == doctest::Approx(10.0));
    }
}

TEST_CASE("uncoverable demand raises InfeasibleDispatch naming the binding hour") {
    Catalog cat = {affine_gen("G1", 0.0, 5.0, 1.0)};
    Design d = Design::empty(cat);
    d.entries[0].install = true;
    d.entries[0].rated_power = 5.0;
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    CHECK_THROWS_AS(
        solve_dispatch(d, s, flat_demand(50.0), cat, tiny_options()),
        InfeasibleDispatch);
    try {
        solve_dispatch(d, s, flat_demand(50.0), cat, tiny_options());
    } catch (const InfeasibleDispatch& e) {
        std::string what = e.what();
        CHECK(what.find("hour") != std::string::npos);
        CHECK(what.find("electricity") != std::string::npos);
    }
}

TEST_CASE("tiny affine instance matches the brute-force oracle") {
    TinyInstance inst;
    auto sol = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    auto oracle = brute_force_oracle(inst.catalog, inst.scenarios, inst.demand,
                                     inst.grids, inst.options);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(rel_diff(sol.report.tac, oracle.report.tac) <= 1e-6);
    // both dispatch sets are feasible
    for (std::size_t w = 0; w < inst.scenarios.size(); ++w) {
        CHECK(check_feasibility(sol.design, sol.dispatches[w], inst.scenarios[w],
                                inst.demand, inst.catalog)
                  .empty());
        CHECK(check_feasibility(oracle.design, oracle.dispatches[w], inst.scenarios[w],
                                inst.demand, inst.catalog)
                  .empty());
    }
}

TEST_CASE("two-scenario policy mix matches the oracle") {
    TinyInstance inst;
    inst.scenarios = {make_scenario("w1", Policy::CapAndTrade, 100.0, 0.86,
                                    flat_weather(5.0), 0.5),
                      make_scenario("w2", Policy::EmissionTax, 50.0, 1.72,
                                    flat_weather(5.0), 0.5)};
    auto sol = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    auto oracle = brute_force_oracle(inst.catalog, inst.scenarios, inst.demand,
                                     inst.grids, inst.options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(rel_diff(sol.report.tac, oracle.report.tac) <= 1e-6);
}

TEST_CASE("single mandatory generator sizes to the peak and agrees with the oracle") {
    Catalog cat = {affine_gen("G1", 5.0, 50.0, 1.0, 0.5, 1000.0, 0.1)};
    std::vector<Scenario> scen = {make_scenario("w1", Policy::EmissionTax, 50.0, 0.86,
                                                flat_weather(5.0), 1.0)};
    DemandProfile demand = flat_demand(20.0);
    SolverOptions options = tiny_options();
    options.forced_install = {"G1"};
    options.sizing_grids["G1"] = {5.0, 20.0, 50.0}; // contains the analytic optimum

    auto sol = solve_design(cat, scen, demand, options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.design.entries[0].install);
    CHECK(sol.design.entries[0].rated_power == doctest::Approx(20.0));

    OracleGrids grids;
    grids.sizing["G1"] = {5.0, 20.0, 50.0};
    for (int k = 0; k <= 4; ++k) grids.power_fractions.push_back(k / 4.0);
    auto oracle = brute_force_oracle(cat, scen, demand, grids, options);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(rel_diff(sol.report.tac, oracle.report.tac) <= 1e-6);
}

TEST_CASE("valve-point instance at saturated demand agrees with the oracle") {
    ConventionalPhysics cvt;
    cvt.a = 100.0;
    cvt.b = 20.0;
    cvt.c = 0.05;
    cvt.d = 30.0;
    cvt.e = 0.5;
    cvt.p_min = 2.0;
    Catalog cat = {valve_gen("CVT-A", 6.0, 6.0, cvt, 0.4),
                   valve_gen("CVT-B", 4.0, 4.0, cvt, 0.4)};
    // demand saturates both units, pinning the optimum for both solvers
    DemandProfile demand = flat_demand(10.0);
    std::vector<Scenario> scen = {
        make_scenario("w1", Policy::EmissionTax, 50.0, 0.86, flat_weather(5.0), 0.5),
        make_scenario("w2", Policy::CapAndTrade, 100.0, 0.86, flat_weather(5.0), 0.5)};
    SolverOptions options = tiny_options();
    options.forced_install = {"CVT-A", "CVT-B"};
    auto sol = solve_design(cat, scen, demand, options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    OracleGrids grids;
    for (int k = 0; k <= 2; ++k) grids.power_fractions.push_back(k / 2.0);
    auto oracle = brute_force_oracle(cat, scen, demand, grids, options);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(rel_diff(sol.report.tac, oracle.report.tac) <= 1e-6);
}

TEST_CASE("battery arbitrage flattens a quadratic-cost load and matches the oracle") {
    ConventionalPhysics cvt;
    cvt.a = 10.0;
    cvt.b = 5.0;
    cvt.c = 2.0; // strongly convex
    cvt.d = 0.0;
    cvt.e = 1.0;
    cvt.p_min = 0.0;
    Catalog cat = {valve_gen("GEN", 20.0, 20.0, cvt, 0.4),
                   storage_spec("BAT", 4.0, 4.0, 160.0, 160.0)};
    DemandProfile demand;
    for (int t = 0; t < 24; ++t)
        demand.demand[static_cast<std::size_t>(Resource::Electricity)][static_cast<std::size_t>(t)] =
            t < 12 ? 4.0 : 12.0;
    std::vector<Scenario> scen = {make_scenario("w1", Policy::EmissionTax, 50.0, 0.86,
                                                flat_weather(5.0), 1.0)};
    SolverOptions options = tiny_options();
    options.forced_install = {"GEN", "BAT"};

    auto sol = solve_design(cat, scen, demand, options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    // perfect flattening: generator runs at 8 MW every hour
    for (const auto& hour : sol.dispatches[0].hours)
        CHECK(hour.ops[0].power == doctest::Approx(8.0).epsilon(1e-6));

    OracleGrids grids;
    for (int k = 0; k <= 10; ++k) grids.power_fractions.push_back(k / 10.0);
    auto oracle = brute_force_oracle(cat, scen, demand, grids, options);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(rel_diff(sol.report.tac, oracle.report.tac) <= 1e-6);
    CHECK(check_feasibility(oracle.design, oracle.dispatches[0], scen[0], demand, cat)
              .empty());
}

TEST_CASE("chp serves electricity and heat inside its region") {
    EquipmentSpec chp;
    chp.id = "CHP";
    chp.kind = EquipmentKind::CHP;
    chp.rp_min = 247.0;
    chp.rp_max = 247.0;
    chp.psi0 = 1.9;
    chp.psik = 80000.0;
    chp.co2_per_mwh = 0.75;
    chp.physics = simple_chp_region(1.0);
    Catalog cat = {chp};
    Design d = Design::empty(cat);
    d.entries[0].install = true;
    d.entries[0].rated_power = 247.0;
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    auto dispatch = solve_dispatch(d, s, flat_demand(150.0, 60.0), cat, tiny_options());
    for (const auto& hour : dispatch.hours) {
        const auto& op = hour.ops[0];
        CHECK(op.on);
        CHECK(chp_feasible(op.power, op.heat, cat[0].chp(), 1e-6));
        CHECK(op.power >= 150.0 - 1e-6);
        CHECK(op.heat >= 60.0 - 1e-6);
    }
}

TEST_CASE("two committed CHPs split heat toward the cheaper unit") {
    auto cheap_region = simple_chp_region(1.0);
    cheap_region.jj = 1.0; // cheap heat
    cheap_region.yy = 0.0;
    cheap_region.zz = 0.0;
    auto dear_region = simple_chp_region(1.0);
    dear_region.jj = 40.0; // expensive heat
    dear_region.yy = 0.0;
    dear_region.zz = 0.0;
    EquipmentSpec a, b;
    a.id = "CHP-A";
    a.kind = EquipmentKind::CHP;
    a.rp_min = a.rp_max = 247.0;
    a.physics = cheap_region;
    b = a;
    b.id = "CHP-B";
    b.physics = dear_region;
    Catalog cat = {a, b};
    Design d = Design::empty(cat);
    for (auto& e : d.entries) {
        e.install = true;
        e.rated_power = 247.0;
    }
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    // heat demand within one unit's range; electricity low
    auto dispatch = solve_dispatch(d, s, flat_demand(220.0, 100.0), cat, tiny_options());
    for (const auto& hour : dispatch.hours) {
        double heat_cheap = hour.ops[0].heat;
        double heat_dear = hour.ops[1].heat;
        CHECK(heat_cheap + heat_dear >= 100.0 - 1e-6);
        CHECK(heat_cheap >= heat_dear); // the cheap unit carries the load
    }
}

TEST_CASE("heat pump converts electricity to heat at its COP") {
    Catalog cat = {affine_gen("GEN", 0.0, 100.0, 1.0)};
    EquipmentSpec hp;
    hp.id = "HP";
    hp.kind = EquipmentKind::HeatPump;
    hp.rp_min = 0.0;
    hp.rp_max = 20.0;
    hp.psi0 = 1.6;
    hp.psik = 48000.0;
    hp.physics = HeatPumpPhysics{3.0};
    cat.push_back(hp);
    Design d = Design::empty(cat);
    for (auto& e : d.entries) e.install = true;
    d.entries[0].rated_power = 100.0;
    d.entries[1].rated_power = 20.0;
    Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    auto dispatch = solve_dispatch(d, s, flat_demand(30.0, 24.0), cat, tiny_options());
    for (const auto& hour : dispatch.hours) {
        const auto& hp_op = hour.ops[1];
        CHECK(hp_op.heat == doctest::Approx(3.0 * hp_op.power));
        CHECK(hp_op.heat >= 24.0 - 1e-6); // only heat source available
        // the generator carries demand plus the heat pump draw
        CHECK(hour.ops[0].power >= 30.0 + hp_op.power - 1e-6);
    }
}

TEST_CASE("mandatory SNG dispatch keeps the sale floor and rated SOEC draw") {
    Catalog cat = default_catalog();
    // shrink to generator + P2G + CHP for heat-free demand
    Catalog small;
    for (const auto& spec : cat)
        if (spec.id == "BBFB" || spec.id == "P2G") small.push_back(spec);
    std::vector<Scenario> scen = {make_scenario("w1", Policy::CapAndTrade, 50.0, 0.86,
                                                flat_weather(5.0), 1.0)};
    DemandProfile demand = flat_demand(30.0);
    demand.sng_demand_mode = SngDemandMode::Mandatory;
    demand.sng_mandatory = 0.250;
    SolverOptions options = tiny_options();
    options.forced_install = {"BBFB", "P2G"};

    auto sol = solve_design(small, scen, demand, options);
    REQUIRE((sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible));
    auto p2g_idx = find_spec(small, "P2G");
    REQUIRE(p2g_idx.has_value());
    double sng_conv = kMolarMassCh4 * small[*p2g_idx].p2g().sng_yield;
    for (const auto& hour : sol.dispatches[0].hours) {
        const auto& op = hour.ops[*p2g_idx];
        CHECK(op.on);
        CHECK(op.power == doctest::Approx(10.0)); // rated SOEC draw while committed
        CHECK(op.xi * sng_conv >= 0.250 - 1e-9);
    }
}

TEST_CASE("deterministic solve equals solve_design on the averaged singleton") {
    TinyInstance inst;
    inst.scenarios = {make_scenario("w1", Policy::EmissionTax, 50.0, 0.86,
                                    flat_weather(4.0), 0.5),
                      make_scenario("w2", Policy::EmissionTax, 100.0, 0.86,
                                    flat_weather(6.0), 0.5)};
    auto det = solve_deterministic(inst.catalog, inst.scenarios, Policy::EmissionTax,
                                   inst.demand, inst.options);
    Scenario avg = averaged_scenario(inst.scenarios, Policy::EmissionTax);
    auto direct = solve_design(inst.catalog, {avg}, inst.demand, inst.options);
    REQUIRE(det.status == SolveStatus::Optimal);
    REQUIRE(direct.status == SolveStatus::Optimal);
    CHECK(rel_diff(det.report.tac, direct.report.tac) <= 1e-12);
}

TEST_CASE("evaluate_design reproduces a solution's own report") {
    TinyInstance inst;
    auto sol = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    auto eval = evaluate_design(sol.design, inst.scenarios, inst.demand, inst.catalog,
                                inst.options);
    CHECK_FALSE(eval.any_infeasible);
    CHECK(rel_diff(eval.tac, sol.report.tac) <= 1e-12);
}

TEST_CASE("evaluating an empty design with nonzero demand flags infeasibility") {
    TinyInstance inst;
    Design empty = Design::empty(inst.catalog);
    auto eval = evaluate_design(empty, inst.scenarios, inst.demand, inst.catalog,
                                inst.options);
    CHECK(eval.any_infeasible);
}

TEST_CASE("value of the stochastic solution is nonnegative at oracle scale") {
    // calm-vs-storm wind uncertainty against a pinned thermal fallback:
    // wind pays off at the averaged speed only, so the designs differ and
    // the deterministic design costs strictly more in expectation
    Catalog cat = {wind_spec("WF", 5.0, 50.0, 1.2, 15000.0),
                   affine_gen("GEN", 30.0, 50.0, 1.2, 0.3, 1000.0, 0.1)};
    const auto& wp = cat[0].wind();
    double v_anem_rated = wp.v_rated / std::pow(wp.z_hub / wp.z_anemometer, wp.alpha);
    std::vector<Scenario> scen = {
        make_scenario("calm", Policy::EmissionTax, 50.0, 0.86, flat_weather(0.2), 0.5),
        make_scenario("storm", Policy::EmissionTax, 50.0, 0.86,
                      flat_weather(2.0 * v_anem_rated), 0.5)};
    DemandProfile demand = flat_demand(30.0);
    SolverOptions options = tiny_options();
    options.forced_install = {"GEN"};

    auto stochastic = solve_design(cat, scen, demand, options);
    REQUIRE(stochastic.status == SolveStatus::Optimal);
    auto det = solve_deterministic(cat, scen, Policy::EmissionTax, demand, options);
    REQUIRE(det.status == SolveStatus::Optimal);
    // the averaged weather makes wind attractive; the mix does not
    CHECK(det.design.entries[0].install);
    CHECK_FALSE(stochastic.design.entries[0].install);
    auto eev = evaluate_design(det.design, scen, demand, cat, options);
    REQUIRE_FALSE(eev.any_infeasible);
    CHECK(eev.tac >= stochastic.report.tac * (1.0 - 1e-6) - 1e-6);
    CHECK(eev.tac > stochastic.report.tac); // strictly positive VSS here
}

TEST_CASE("selection flips between stable and volatile wind") {
    Catalog cat = {wind_spec("WF", 5.0, 50.0, 1.2, 5000.0),
                   affine_gen("GEN", 0.0, 50.0, 1.2, 0.3, 1000.0, 0.1)};
    DemandProfile demand = flat_demand(30.0);
    SolverOptions options = tiny_options();
    const auto& wp = cat[0].wind();
    double shear_factor = std::pow(wp.z_hub / wp.z_anemometer, wp.alpha);

    // (a) zero variance at rated hub speed: wind output is its rating
    double v_anem_rated = wp.v_rated / shear_factor;
    std::vector<Scenario> stable = {make_scenario("s1", Policy::EmissionTax, 50.0, 0.86,
                                                  flat_weather(v_anem_rated), 1.0)};
    auto sol_a = solve_design(cat, stable, demand, options);
    REQUIRE(sol_a.status == SolveStatus::Optimal);
    CHECK(sol_a.design.entries[0].install);

    // (b) same mean, high variance: calm half the time
    std::vector<Scenario> volatile_set = {
        make_scenario("v1", Policy::EmissionTax, 50.0, 0.86, flat_weather(0.0), 0.5),
        make_scenario("v2", Policy::EmissionTax, 50.0, 0.86,
                      flat_weather(2.0 * v_anem_rated), 0.5)};
    auto sol_b = solve_design(cat, volatile_set, demand, options);
    REQUIRE(sol_b.status == SolveStatus::Optimal);
    CHECK_FALSE(sol_b.design.entries[0].install);
    CHECK(sol_b.design.entries[1].install);
}

TEST_CASE("argmin is invariant to uniform cost scaling") {
    Catalog cat = {wind_spec("WF", 5.0, 50.0, 1.2, 5000.0),
                   affine_gen("GEN", 0.0, 50.0, 1.2, 0.3, 1000.0, 0.1)};
    std::vector<Scenario> scen = {
        make_scenario("v1", Policy::EmissionTax, 50.0, 0.86, flat_weather(0.0), 0.5),
        make_scenario("v2", Policy::EmissionTax, 50.0, 0.86, flat_weather(13.0), 0.5)};
    DemandProfile demand = flat_demand(30.0);
    SolverOptions options = tiny_options();
    auto base = solve_design(cat, scen, demand, options);
    REQUIRE(base.status == SolveStatus::Optimal);

    const double k = 3.0;
    Catalog scaled = cat;
    for (auto& spec : scaled) {
        spec.psi0 *= k;
        spec.gamma0 *= k;
        spec.omega0 *= k;
        spec.psik *= k;
        spec.gammak *= k;
        spec.omegak *= k;
    }
    SolverOptions scaled_options = options;
    scaled_options.prices.coal *= k;
    scaled_options.prices.biomass *= k;
    auto scen_scaled = scen;
    for (auto& s : scen_scaled) {
        s.co2_price *= k;
        s.sng_price *= k;
        s.gas_price_m3 *= k;
    }
    auto scaled_sol = solve_design(scaled, scen_scaled, demand, scaled_options);
    REQUIRE(scaled_sol.status == SolveStatus::Optimal);
    for (std::size_t c = 0; c < cat.size(); ++c)
        CHECK(base.design.entries[c].install == scaled_sol.design.entries[c].install);
    CHECK(rel_diff(k * base.report.tac, scaled_sol.report.tac) <= 1e-9);
}

TEST_CASE("multi-scenario optimum is bounded by the best single scenario") {
    TinyInstance inst;
    std::vector<Scenario> pair = {
        make_scenario("w1", Policy::EmissionTax, 50.0, 0.86, flat_weather(5.0), 0.5),
        make_scenario("w2", Policy::EmissionTax, 100.0, 0.86, flat_weather(5.0), 0.5)};
    auto both = solve_design(inst.catalog, pair, inst.demand, inst.options);
    REQUIRE(both.status == SolveStatus::Optimal);
    double best_single = std::numeric_limits<double>::infinity();
    for (auto one : pair) {
        one.probability = 1.0;
        auto sol = solve_design(inst.catalog, {one}, inst.demand, inst.options);
        REQUIRE(sol.status == SolveStatus::Optimal);
        best_single = std::min(best_single, sol.report.tac);
    }
    CHECK(both.report.tac >= best_single * (1.0 - 1e-9) - 1e-9);
}

TEST_CASE("solutions are deterministic and their incumbents monotone") {
    TinyInstance inst;
    auto a = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    auto b = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    std::string sa = serialize_solution(a, inst.catalog, inst.scenarios, inst.demand,
                                        inst.options);
    std::string sb = serialize_solution(b, inst.catalog, inst.scenarios, inst.demand,
                                        inst.options);
    CHECK(sa == sb);
    for (std::size_t i = 1; i < a.incumbent_tacs.size(); ++i)
        CHECK(a.incumbent_tacs[i] <= a.incumbent_tacs[i - 1] + 1e-12);
}

TEST_CASE("solution files round-trip") {
    TinyInstance inst;
    auto sol = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    std::string text = serialize_solution(sol, inst.catalog, inst.scenarios, inst.demand,
                                          inst.options);
    auto loaded = parse_solution(text, "<round-trip>");
    CHECK(loaded.catalog.size() == inst.catalog.size());
    CHECK(loaded.solution.report.tac == doctest::Approx(sol.report.tac).epsilon(1e-12));
    CHECK(loaded.solution.status == sol.status);
    std::string again = serialize_solution(loaded.solution, loaded.catalog,
                                           loaded.scenarios, loaded.demand,
                                           loaded.options);
    CHECK(again == text);
}

TEST_CASE("oracle rejects oversized instances") {
    Catalog big = {affine_gen("A", 1.0, 2.0, 1.0), affine_gen("B", 1.0, 2.0, 1.0),
                   affine_gen("C", 1.0, 2.0, 1.0), affine_gen("D", 1.0, 2.0, 1.0)};
    std::vector<Scenario> scen = {make_scenario("w1", Policy::EmissionTax, 50.0, 0.86,
                                                flat_weather(5.0), 1.0)};
    OracleGrids grids;
    grids.power_fractions = {0.0, 1.0};
    CHECK_THROWS_AS(brute_force_oracle(big, scen, flat_demand(1.0), grids, tiny_options()),
                    InstanceTooLarge);

    // too many distinct hour patterns
    Catalog small = {affine_gen("A", 1.0, 8.0, 1.0)};
    DemandProfile wavy;
    for (int t = 0; t < 24; ++t)
        wavy.demand[static_cast<std::size_t>(Resource::Electricity)][static_cast<std::size_t>(t)] =
            1.0 + 0.25 * t;
    CHECK_THROWS_AS(brute_force_oracle(small, scen, wavy, grids, tiny_options()),
                    InstanceTooLarge);
}

TEST_CASE("oracle TAC bounds solve_design on the grid-restricted problem") {
    // sizing pinned to grid values: the oracle's grid optimum cannot beat
    // the continuum search, and the continuum optimum here lies on the grid
    TinyInstance inst;
    auto sol = solve_design(inst.catalog, inst.scenarios, inst.demand, inst.options);
    auto oracle = brute_force_oracle(inst.catalog, inst.scenarios, inst.demand,
                                     inst.grids, inst.options);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    CHECK(sol.report.tac <= oracle.report.tac * (1.0 + 1e-6) + 1e-6);
}
