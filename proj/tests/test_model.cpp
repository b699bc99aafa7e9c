#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "memg/json_io.hpp"
#include "memg/model.hpp"
#include "test_support.hpp"

using namespace memg;
using namespace memg::testsupport;

TEST_CASE("capital recovery factor") {
    CHECK(std::abs(crf(0.15, 20.0) - 0.15976) < 1e-4);
    CHECK(crf(0.15, 1.0) == doctest::Approx(1.15));
    CHECK(std::abs(crf(0.15, 500.0) - 0.15) < 1e-9); // long-lifetime asymptote
    CHECK_THROWS_AS(crf(0.0, 20.0), DomainError);
    CHECK_THROWS_AS(crf(-0.1, 20.0), DomainError);
    CHECK_THROWS_AS(crf(0.15, 0.5), DomainError);
}

TEST_CASE("capital and maintenance costs") {
    Catalog cat = {affine_gen("G1", 0.0, 50.0, 1.0, /*psi0=*/2.0, /*psik=*/46523.0),
                   storage_spec("ES", 1.0, 50.0, 100.0, 500.0)};
    cat[1].omega0 = 1.4;
    cat[1].omegak = 38769.0;

    SUBCASE("empty design costs nothing") {
        Design d = Design::empty(cat);
        CHECK(capital_cost(d, cat) == 0.0);
        CHECK(maintenance_cost(d, cat) == 0.0);
    }
    SUBCASE("storage term uses the capacity coefficient") {
        Design d = Design::empty(cat);
        d.entries[1].install = true;
        d.entries[1].rated_power = 10.0;
        d.entries[1].storage_cap = 200.0;
        CHECK(capital_cost(d, cat) == doctest::Approx(1.4 * 200.0)); // psi0(ES)=0
        CHECK(maintenance_cost(d, cat) ==
              doctest::Approx(cat[1].psik * 10.0 + 38769.0 * 200.0));
    }
    SUBCASE("rated-power term scales linearly") {
        Design d = Design::empty(cat);
        d.entries[0].install = true;
        d.entries[0].rated_power = 20.0;
        double base = capital_cost(d, cat);
        d.entries[0].rated_power = 40.0;
        CHECK(capital_cost(d, cat) == doctest::Approx(2.0 * base));
        d.entries[0].rated_power = 61.0;
        // psik * rp with the published wind maintenance coefficient
        CHECK(maintenance_cost(d, cat) == doctest::Approx(2837903.0));
    }
}

namespace {

// A feasible single-generator dispatch built by hand: one affine device
// covering a flat load, everything else zero.
struct Fixture {
    Catalog catalog;
    Design design;
    Dispatch dispatch;
    DemandProfile demand;

    Fixture(double load, double em_rate, double fuel_rate = 1.0) {
        catalog = {affine_gen("G1", 0.0, 100.0, fuel_rate, 0.5, 1000.0, em_rate)};
        design = Design::empty(catalog);
        design.entries[0].install = true;
        design.entries[0].rated_power = 100.0;
        demand = flat_demand(load);
        dispatch = Dispatch::empty(catalog);
        for (auto& hour : dispatch.hours) {
            auto& op = hour.ops[0];
            op.on = load > 0.0;
            op.power = load;
            hour.purchase[Resource::Biomass] = fuel_rate * load;
            hour.excess[Resource::Co2] = em_rate * load;
        }
    }
};

} // namespace

TEST_CASE("operational cost") {
    Catalog cat = {affine_gen("G1", 0.0, 100.0, 1.0)};
    Prices prices;
    prices.coal = 100.0;

    SUBCASE("all-zero dispatch costs nothing") {
        Dispatch d = Dispatch::empty(cat);
        Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
        CHECK(operational_cost(cat, d, s, prices) == 0.0);
    }
    SUBCASE("purchases are priced per resource and annualized") {
        Dispatch d = Dispatch::empty(cat);
        d.hours[3].purchase[Resource::Coal] = 5.0; // one hour, 5 t coal
        Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
        CHECK(operational_cost(cat, d, s, prices) == doctest::Approx(365.0 * 500.0));
    }
    SUBCASE("valve-point and CHP fuel is priced by the curve, not by purchases") {
        ConventionalPhysics cvt;
        cvt.a = 100.0;
        cvt.b = 20.0;
        cvt.c = 0.05;
        cvt.d = 0.0;
        cvt.e = 0.5;
        cvt.p_min = 10.0;
        Catalog cat2 = {valve_gen("CVT", 10.0, 50.0, cvt)};
        Dispatch d = Dispatch::empty(cat2);
        d.hours[0].ops[0].on = true;
        d.hours[0].ops[0].power = 20.0;
        Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
        // no coal purchase appears; the cost curve already prices the fuel
        CHECK(operational_cost(cat2, d, s, prices) ==
              doctest::Approx(365.0 * cvt_cost(20.0, cvt)));
        // a committed-but-idle hour still pays the no-load cost
        d.hours[1].ops[0].on = true;
        d.hours[1].ops[0].power = 10.0;
        CHECK(operational_cost(cat2, d, s, prices) ==
              doctest::Approx(365.0 * (cvt_cost(20.0, cvt) + cvt_cost(10.0, cvt))));
    }
}

TEST_CASE("carbon trading cost") {
    // single hour with controlled cap: emission rate 0.4 t/MWh at 100 MW
    // gives excess 40 t/h against cap 30 t/h
    Fixture fx(100.0, 0.4);
    Scenario trade = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
    // keep only hour 0 active to match the one-hour example
    for (int t = 1; t < 24; ++t) {
        fx.dispatch.hours[static_cast<std::size_t>(t)] = HourDispatch{};
        fx.dispatch.hours[static_cast<std::size_t>(t)].ops.resize(fx.catalog.size());
    }
    CHECK(carbon_trading_cost(fx.catalog, fx.dispatch, trade) ==
          doctest::Approx(365.0 * (40.0 - 30.0) * 50.0));

    SUBCASE("excess equal to the cap balances to zero") {
        Fixture eq(100.0, 0.3);
        CHECK(carbon_trading_cost(eq.catalog, eq.dispatch, trade) ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("staying under the cap earns revenue") {
        Fixture under(100.0, 0.2);
        for (int t = 1; t < 24; ++t) {
            under.dispatch.hours[static_cast<std::size_t>(t)] = HourDispatch{};
            under.dispatch.hours[static_cast<std::size_t>(t)].ops.resize(1);
        }
        CHECK(carbon_trading_cost(under.catalog, under.dispatch, trade) ==
              doctest::Approx(-365.0 * 10.0 * 50.0));
    }
    SUBCASE("policy mismatch throws") {
        Scenario tax = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                                     flat_weather(5.0), 1.0);
        CHECK_THROWS_AS(carbon_trading_cost(fx.catalog, fx.dispatch, tax),
                        PolicyMismatch);
    }
}

TEST_CASE("emission tax cost and the trading identity") {
    Fixture fx(100.0, 0.4);
    Scenario tax = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                                 flat_weather(5.0), 1.0);
    Scenario trade = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
    for (int t = 1; t < 24; ++t) {
        fx.dispatch.hours[static_cast<std::size_t>(t)] = HourDispatch{};
        fx.dispatch.hours[static_cast<std::size_t>(t)].ops.resize(1);
    }
    CHECK(emission_tax_cost(fx.catalog, fx.dispatch, tax) ==
          doctest::Approx(365.0 * 40.0 * 50.0)); // 730,000
    SUBCASE("zero emissions cost nothing") {
        Fixture clean(100.0, 0.0);
        CHECK(emission_tax_cost(clean.catalog, clean.dispatch, tax) == 0.0);
    }
    SUBCASE("et - ct equals the annualized cap value") {
        double et = emission_tax_cost(fx.catalog, fx.dispatch, tax);
        double ct = carbon_trading_cost(fx.catalog, fx.dispatch, trade);
        double cap_value = 0.0;
        for (double cap : co2_cap_series(fx.catalog, fx.dispatch))
            cap_value += 365.0 * cap * 50.0;
        CHECK(std::abs((et - ct) - cap_value) <= 1e-9 * std::abs(cap_value));
    }
    SUBCASE("policy mismatch throws") {
        CHECK_THROWS_AS(emission_tax_cost(fx.catalog, fx.dispatch, trade),
                        PolicyMismatch);
    }
}

TEST_CASE("sng revenue") {
    Catalog cat = default_catalog();
    auto p2g_idx = find_spec(cat, "P2G");
    REQUIRE(p2g_idx.has_value());
    Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    Dispatch d = Dispatch::empty(cat);
    SUBCASE("no p2g activity means no revenue") {
        CHECK(sng_revenue(cat, d, s) == 0.0);
    }
    SUBCASE("constant sale all day") {
        double xi = 0.250 / (kMolarMassCh4 * cat[*p2g_idx].p2g().sng_yield);
        for (auto& hour : d.hours) {
            hour.ops[*p2g_idx].on = true;
            hour.ops[*p2g_idx].xi = xi;
        }
        CHECK(sng_revenue(cat, d, s) ==
              doctest::Approx(365.0 * 24.0 * 0.250 * s.sng_price));
    }
}

TEST_CASE("total annualized cost decomposition") {
    SUBCASE("empty design and zero demand gives zero TAC") {
        Catalog cat = {affine_gen("G1", 0.0, 100.0, 1.0)};
        Design d = Design::empty(cat);
        Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
        auto report = total_annualized_cost(d, {Dispatch::empty(cat)}, {s}, cat, Prices{});
        CHECK(report.tac == 0.0);
        CHECK(report.capital == 0.0);
    }
    SUBCASE("single scenario with unit probability is deterministic") {
        Fixture fx(50.0, 0.2);
        Scenario s = make_scenario("w", Policy::EmissionTax, 50.0, 0.86,
                                   flat_weather(5.0), 1.0);
        auto report =
            total_annualized_cost(fx.design, {fx.dispatch}, {s}, fx.catalog, Prices{});
        double manual = report.crf * report.capital + report.maintenance +
                        report.scenarios[0].operational + report.scenarios[0].tax -
                        report.scenarios[0].revenue;
        CHECK(std::abs(report.tac - manual) <= 1e-9 * std::abs(manual));
    }
    SUBCASE("splitting one scenario into two identical halves changes nothing") {
        Fixture fx(50.0, 0.2);
        Scenario s1 = make_scenario("a", Policy::EmissionTax, 50.0, 0.86,
                                    flat_weather(5.0), 1.0);
        auto one =
            total_annualized_cost(fx.design, {fx.dispatch}, {s1}, fx.catalog, Prices{});
        Scenario h1 = s1, h2 = s1;
        h1.probability = h2.probability = 0.5;
        h2.id = "b";
        auto two = total_annualized_cost(fx.design, {fx.dispatch, fx.dispatch},
                                         {h1, h2}, fx.catalog, Prices{});
        CHECK(two.tac == doctest::Approx(one.tac).epsilon(1e-12));
    }
    SUBCASE("TAC is affine in the CO2 price") {
        Fixture fx(80.0, 0.35);
        auto tac_at = [&](double price) {
            Scenario s = make_scenario("w", Policy::EmissionTax, price, 0.86,
                                       flat_weather(5.0), 1.0);
            return total_annualized_cost(fx.design, {fx.dispatch}, {s}, fx.catalog,
                                         Prices{})
                .tac;
        };
        double t50 = tac_at(50.0), t75 = tac_at(75.0), t100 = tac_at(100.0);
        CHECK(std::abs(t75 - 0.5 * (t50 + t100)) <= 1e-9 * std::abs(t75));
    }
    SUBCASE("scenario permutation leaves TAC unchanged") {
        Fixture fx(60.0, 0.25);
        Scenario s1 = make_scenario("a", Policy::EmissionTax, 50.0, 0.86,
                                    flat_weather(5.0), 0.25);
        Scenario s2 = make_scenario("b", Policy::CapAndTrade, 100.0, 1.72,
                                    flat_weather(5.0), 0.75);
        auto fwd = total_annualized_cost(fx.design, {fx.dispatch, fx.dispatch},
                                         {s1, s2}, fx.catalog, Prices{});
        auto rev = total_annualized_cost(fx.design, {fx.dispatch, fx.dispatch},
                                         {s2, s1}, fx.catalog, Prices{});
        CHECK(std::abs(fwd.tac - rev.tac) <= 1e-12 * std::abs(fwd.tac));
    }
}

TEST_CASE("design checks") {
    Catalog cat = default_catalog();
    SUBCASE("more than nine installs is flagged") {
        Design d = Design::empty(cat);
        int installed = 0;
        for (std::size_t c = 0; c < cat.size() && installed < 10; ++c) {
            auto& e = d.entries[c];
            e.install = true;
            e.rated_power = cat[c].rp_min;
            if (cat[c].kind == EquipmentKind::Storage) e.storage_cap = cat[c].cap_min;
            if (cat[c].kind == EquipmentKind::WindFarm) {
                e.rotor_diameter =
                    wind_diameter_for_rated_power(cat[c].rp_min, cat[c].wind());
                e.rated_power = wind_rated_power(e.rotor_diameter, cat[c].wind());
            }
            if (cat[c].kind == EquipmentKind::SolarArray) e.tilt = 0.5;
            ++installed;
        }
        auto v = check_design(d, cat);
        bool cap_hit = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.constraint == "installation_count_cap";
        });
        CHECK(cap_hit);
    }
    SUBCASE("wind rating must match the stored rotor diameter") {
        Design d = Design::empty(cat);
        auto idx = find_spec(cat, "WT-1");
        REQUIRE(idx.has_value());
        auto& e = d.entries[*idx];
        e.install = true;
        e.rotor_diameter = wind_diameter_for_rated_power(40.0, cat[*idx].wind());
        e.rated_power = 50.0; // inconsistent with the diameter
        auto v = check_design(d, cat);
        bool hit = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.constraint == "wind_rating_diameter_consistency";
        });
        CHECK(hit);
    }
    SUBCASE("tilt outside 20-70 degrees is flagged") {
        Design d = Design::empty(cat);
        auto idx = find_spec(cat, "SPA-1");
        REQUIRE(idx.has_value());
        auto& e = d.entries[*idx];
        e.install = true;
        e.rated_power = 16.5;
        e.tilt = 1.5; // ~86 deg
        auto v = check_design(d, cat);
        bool hit = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.constraint == "tilt_upper_bound";
        });
        CHECK(hit);
    }
}

TEST_CASE("violation lists serialize with indices and residuals") {
    Catalog cat = {affine_gen("G1", 0.0, 100.0, 1.0)};
    Design d = Design::empty(cat);
    Dispatch disp = Dispatch::empty(cat);
    disp.hours[4].ops[0].on = true;
    disp.hours[4].ops[0].power = 10.0;
    Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                               flat_weather(5.0), 1.0);
    auto v = check_feasibility(d, disp, s, flat_demand(0.0), cat);
    REQUIRE_FALSE(v.empty());
    std::string text = serialize_violations(v);
    CHECK(text.find("\"constraint\"") != std::string::npos);
    CHECK(text.find("\"hour\": 4") != std::string::npos);
    CHECK(text.find("\"residual\"") != std::string::npos);
    CHECK(text.find("G1") != std::string::npos);
}

TEST_CASE("feasibility checking") {
    Fixture fx(50.0, 0.2);
    Scenario s = make_scenario("w", Policy::CapAndTrade, 50.0, 0.86,
                               flat_weather(5.0), 1.0);

    SUBCASE("hand-built consistent dispatch passes") {
        auto v = check_feasibility(fx.design, fx.dispatch, s, fx.demand, fx.catalog);
        for (const auto& violation : v) CAPTURE(violation.describe());
        CHECK(v.empty());
    }
    SUBCASE("simultaneous charge and discharge is flagged") {
        Catalog cat = {affine_gen("G1", 0.0, 100.0, 1.0),
                       storage_spec("ES", 1.0, 50.0, 100.0, 500.0)};
        Design d = Design::empty(cat);
        d.entries[0].install = true;
        d.entries[0].rated_power = 100.0;
        d.entries[1].install = true;
        d.entries[1].rated_power = 10.0;
        d.entries[1].storage_cap = 100.0;
        Dispatch disp = Dispatch::empty(cat);
        disp.hours[2].ops[1].charge = 5.0;
        disp.hours[2].ops[1].discharge = 5.0;
        auto v = check_feasibility(d, disp, s, flat_demand(0.0), cat);
        bool found = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.constraint == "charge_discharge_exclusivity";
        });
        CHECK(found);
    }
    SUBCASE("operating a non-installed device is flagged") {
        Dispatch d = Dispatch::empty(fx.catalog);
        Design empty = Design::empty(fx.catalog);
        d.hours[0].ops[0].on = true;
        d.hours[0].ops[0].power = 10.0;
        auto v = check_feasibility(empty, d, s, flat_demand(0.0), fx.catalog);
        bool commit = std::any_of(v.begin(), v.end(), [](const Violation& x) {
            return x.constraint == "power_commitment_bound" ||
                   x.constraint == "operation_without_install";
        });
        CHECK(commit);
    }
    SUBCASE("violations are monotone in the tolerance") {
        // break the balance slightly at several magnitudes
        Dispatch broken = fx.dispatch;
        broken.hours[0].ops[0].power += 3e-6;
        broken.hours[5].ops[0].power += 2e-4;
        auto key = [](const Violation& v) {
            return v.constraint + "|" + v.equipment_id + "|" + std::to_string(v.hour) +
                   "|" + v.resource;
        };
        auto tight = check_feasibility(fx.design, broken, s, fx.demand, fx.catalog, 1e-6);
        auto loose = check_feasibility(fx.design, broken, s, fx.demand, fx.catalog, 1e-3);
        for (const auto& lv : loose) {
            bool in_tight = std::any_of(tight.begin(), tight.end(), [&](const Violation& tv) {
                return key(tv) == key(lv);
            });
            CHECK(in_tight);
        }
        CHECK(loose.size() <= tight.size());
    }
}
