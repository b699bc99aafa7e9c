#include <doctest.h>

#include <cmath>

#include "memg/defaults.hpp"
#include "memg/scenarios.hpp"
#include "test_support.hpp"

using namespace memg;

namespace {

struct Row {
    const char* season;
    Policy policy;
    double co2;
    double gas;
};

// The published 32-row scenario table, frozen for row-for-row comparison.
const Row kTable[32] = {
    {"Winter", Policy::CapAndTrade, 50, 0.86},  {"Winter", Policy::CapAndTrade, 100, 0.86},
    {"Winter", Policy::EmissionTax, 50, 0.86},  {"Winter", Policy::EmissionTax, 100, 0.86},
    {"Spring", Policy::CapAndTrade, 50, 0.86},  {"Spring", Policy::CapAndTrade, 100, 0.86},
    {"Spring", Policy::EmissionTax, 50, 0.86},  {"Spring", Policy::EmissionTax, 100, 0.86},
    {"Summer", Policy::CapAndTrade, 50, 0.86},  {"Summer", Policy::CapAndTrade, 100, 0.86},
    {"Summer", Policy::EmissionTax, 50, 0.86},  {"Summer", Policy::EmissionTax, 100, 0.86},
    {"Autumn", Policy::CapAndTrade, 50, 0.86},  {"Autumn", Policy::CapAndTrade, 100, 0.86},
    {"Autumn", Policy::EmissionTax, 50, 0.86},  {"Autumn", Policy::EmissionTax, 100, 0.86},
    {"Winter", Policy::CapAndTrade, 50, 1.72},  {"Spring", Policy::EmissionTax, 100, 1.72},
    {"Summer", Policy::CapAndTrade, 50, 1.72},  {"Autumn", Policy::EmissionTax, 100, 1.72},
    {"Winter", Policy::EmissionTax, 50, 1.72},  {"Spring", Policy::CapAndTrade, 100, 1.72},
    {"Summer", Policy::EmissionTax, 50, 1.72},  {"Autumn", Policy::CapAndTrade, 100, 1.72},
    {"Winter", Policy::EmissionTax, 100, 1.72}, {"Spring", Policy::CapAndTrade, 50, 1.72},
    {"Summer", Policy::EmissionTax, 100, 1.72}, {"Autumn", Policy::CapAndTrade, 50, 1.72},
    {"Winter", Policy::CapAndTrade, 100, 1.72}, {"Spring", Policy::EmissionTax, 50, 1.72},
    {"Summer", Policy::CapAndTrade, 100, 1.72}, {"Autumn", Policy::EmissionTax, 50, 1.72},
};

} // namespace

TEST_CASE("scenario table is emitted row-for-row") {
    auto seasons = default_season_profiles();
    auto set = build_scenarios(seasons);
    REQUIRE(set.size() == 32);
    double sum = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& s = set[i];
        const auto& row = kTable[i];
        CHECK(s.id == "w" + std::to_string(i + 1));
        CHECK(std::string(season_name(s.season)) == row.season);
        CHECK(s.policy == row.policy);
        CHECK(s.co2_price == doctest::Approx(row.co2));
        CHECK(s.gas_price_m3 == doctest::Approx(row.gas));
        CHECK(s.probability == doctest::Approx(1.0 / 32.0));
        CHECK(s.weather.size() == 24);
        sum += s.probability;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

TEST_CASE("scenario construction is deterministic") {
    auto seasons = default_season_profiles();
    auto a = build_scenarios(seasons);
    auto b = build_scenarios(seasons);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].co2_price == b[i].co2_price);
        CHECK(a[i].gas_price_m3 == b[i].gas_price_m3);
        CHECK(a[i].sng_price == b[i].sng_price);
        CHECK(a[i].probability == b[i].probability);
        for (std::size_t t = 0; t < 24; ++t)
            CHECK(a[i].weather[t].v_anemometer == b[i].weather[t].v_anemometer);
    }
}

TEST_CASE("policy-restricted builds and filters") {
    auto seasons = default_season_profiles();
    auto trading_only = build_scenarios(seasons, PriceGrid{}, {Policy::CapAndTrade});
    CHECK(trading_only.size() == 16);
    for (const auto& s : trading_only) {
        CHECK(s.policy == Policy::CapAndTrade);
        CHECK(s.probability == doctest::Approx(1.0 / 16.0));
    }

    auto all = build_scenarios(seasons);
    auto taxing = filter_by_policy(all, Policy::EmissionTax);
    CHECK(taxing.size() == 16);
    for (const auto& s : taxing) CHECK(s.probability == doctest::Approx(1.0 / 16.0));

    auto winter = filter_by_season(all, Season::Winter);
    CHECK(winter.size() == 8);

    CHECK_THROWS_AS(filter_scenarios(all, [](const Scenario&) { return false; }),
                    EmptySetError);
}

TEST_CASE("co2 cap is linear in generation power") {
    CHECK(co2_cap(100.0) == doctest::Approx(30.0));
    CHECK(co2_cap(0.0) == 0.0);
    CHECK(co2_cap(173.2) == doctest::Approx(51.96));
    for (double p : {13.0, 57.5, 202.0})
        CHECK(co2_cap(3.0 * p) == doctest::Approx(3.0 * co2_cap(p)));
    CHECK_THROWS_AS(co2_cap(-1.0), DomainError);
}

TEST_CASE("averaged scenario") {
    auto seasons = default_season_profiles();
    auto all = build_scenarios(seasons);
    auto avg = averaged_scenario(all, Policy::CapAndTrade);
    CHECK(avg.gas_price_m3 == doctest::Approx(1.29));  // mean of 16x0.86 and 16x1.72
    CHECK(avg.co2_price == doctest::Approx(75.0));     // equal counts of 50 and 100
    CHECK(avg.probability == doctest::Approx(1.0));
    CHECK(avg.policy == Policy::CapAndTrade);

    SUBCASE("weather is the probability-weighted mean") {
        double mean_v = 0.0;
        for (const auto& s : all) mean_v += s.probability * s.weather[7].v_anemometer;
        CHECK(avg.weather[7].v_anemometer == doctest::Approx(mean_v));
    }

    SUBCASE("singleton set averages to itself") {
        std::vector<Scenario> one = {all[4]};
        one[0].probability = 1.0;
        auto same = averaged_scenario(one, one[0].policy);
        CHECK(same.co2_price == doctest::Approx(all[4].co2_price));
        CHECK(same.gas_price_m3 == doctest::Approx(all[4].gas_price_m3));
        for (std::size_t t = 0; t < 24; ++t)
            CHECK(same.weather[t].g_horizontal ==
                  doctest::Approx(all[4].weather[t].g_horizontal));
    }

    CHECK_THROWS_AS(averaged_scenario({}, Policy::EmissionTax), EmptySetError);
}

TEST_CASE("demand csv") {
    std::string good = "hour,electricity,heat,sng\n";
    for (int t = 1; t <= 24; ++t) good += std::to_string(t) + ",100.0,40.0,0.1\n";
    auto d = parse_demand_csv(good, "<test>");
    CHECK(d.at(Resource::Electricity, 0) == doctest::Approx(100.0));
    CHECK(d.at(Resource::Sng, 5) == doctest::Approx(0.1));

    SUBCASE("mandatory mode floors the sng column") {
        d.sng_demand_mode = SngDemandMode::Mandatory;
        d.sng_mandatory = 0.25;
        CHECK(d.at(Resource::Sng, 5) == doctest::Approx(0.25));
        d.sng_mandatory = 0.05;
        CHECK(d.at(Resource::Sng, 5) == doctest::Approx(0.1)); // csv larger
    }
    CHECK_THROWS_AS(parse_demand_csv("hour,electricity\n", "<test>"), ParseError);
}

TEST_CASE("scenario validation") {
    auto seasons = default_season_profiles();
    auto all = build_scenarios(seasons);
    SUBCASE("probability sum enforced") {
        all[0].probability += 1e-6;
        CHECK_THROWS_AS(validate_scenario_set(all), ValidationError);
    }
    SUBCASE("nonpositive price rejected") {
        all[0].co2_price = 0.0;
        CHECK_THROWS_AS(validate_scenario(all[0]), ValidationError);
    }
    SUBCASE("wrong weather length rejected") {
        all[0].weather.pop_back();
        CHECK_THROWS_AS(validate_scenario(all[0]), ValidationError);
    }
}
