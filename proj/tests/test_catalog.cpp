#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "memg/catalog.hpp"
#include "memg/defaults.hpp"

using namespace memg;

TEST_CASE("default catalog encodes the candidate table") {
    Catalog cat = default_catalog();
    // 17 device rows: WT-1..P2G (the CNL/CL split lists 10 + 7 members)
    CHECK(cat.size() == 17);

    auto at = [&](const std::string& id) -> const EquipmentSpec& {
        auto idx = find_spec(cat, id);
        REQUIRE(idx.has_value());
        return cat[*idx];
    };

    CHECK(at("WT-1").rp_min == doctest::Approx(35.4));
    CHECK(at("WT-1").rp_max == doctest::Approx(61.0));
    CHECK(at("WT-1").psik == doctest::Approx(46523.0));
    CHECK(at("WT-2").rp_max == doctest::Approx(108.0));
    CHECK(at("CHP-2").psi0 == doctest::Approx(1.903));
    CHECK(at("CHP-2").co2_per_mwh == doctest::Approx(0.750));
    // CVT installation cost printed with a comma decimal, read as 0.83
    CHECK(at("CVT-1").psi0 == doctest::Approx(0.83));
    CHECK(at("ES").cap_min == doctest::Approx(100.0));
    CHECK(at("ES").cap_max == doctest::Approx(500.0));
    CHECK(at("ES").omega0 == doctest::Approx(1.4));
    CHECK(at("ES").omegak == doctest::Approx(38769.0));
    CHECK(at("P2G").rp_min == doctest::Approx(10.0));
    CHECK(at("P2G").rp_max == doctest::Approx(10.0));
    CHECK(at("HP").psi0 == doctest::Approx(1.60));
    CHECK(at("IGCC-2").psi0 == doctest::Approx(2.60));
    CHECK(at("BCC-1").psik == doctest::Approx(310777.0));
    CHECK(at("BBFB").co2_per_mwh == doctest::Approx(0.079));
}

TEST_CASE("load_catalog equals the bundled default") {
    std::string path = "test_catalog_tmp.json";
    {
        std::ofstream out(path);
        out << default_catalog_json();
    }
    Catalog loaded = load_catalog(path);
    Catalog def = default_catalog();
    REQUIRE(loaded.size() == def.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) CHECK(loaded[i] == def[i]);
    std::remove(path.c_str());
}

TEST_CASE("catalog round-trips through serialization") {
    Catalog def = default_catalog();
    Catalog again = parse_catalog(serialize_catalog(def), "<round-trip>");
    REQUIRE(again.size() == def.size());
    for (std::size_t i = 0; i < def.size(); ++i) CHECK(again[i] == def[i]);
}

TEST_CASE("invariant violations are rejected with the field named") {
    Catalog def = default_catalog();

    SUBCASE("rp_min above rp_max") {
        def[0].rp_min = def[0].rp_max + 1.0;
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
        try {
            validate_catalog(def);
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("rp_min") != std::string::npos);
            CHECK(std::string(e.what()).find(def[0].id) != std::string::npos);
        }
    }
    SUBCASE("duplicate ids") {
        def[1].id = def[0].id;
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
    SUBCASE("negative cost coefficient") {
        def[2].psik = -1.0;
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
    SUBCASE("wind rotor efficiency beyond the Betz limit") {
        for (auto& spec : def)
            if (spec.kind == EquipmentKind::WindFarm)
                std::get<WindPhysics>(spec.physics).cp = 0.7;
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
    SUBCASE("wind speed ordering") {
        for (auto& spec : def)
            if (spec.kind == EquipmentKind::WindFarm)
                std::get<WindPhysics>(spec.physics).v_rated = 30.0; // above cut-out
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
    SUBCASE("storage SOC envelope") {
        for (auto& spec : def)
            if (spec.kind == EquipmentKind::Storage) {
                std::get<StoragePhysics>(spec.physics).soc_lo = 0.9;
                std::get<StoragePhysics>(spec.physics).soc_hi = 0.8;
            }
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
    SUBCASE("collinear CHP corners") {
        for (auto& spec : def)
            if (spec.kind == EquipmentKind::CHP) {
                auto& chp = std::get<ChpPhysics>(spec.physics);
                // place B on the segment A-C
                chp.b.power = 0.5 * (chp.a.power + chp.c.power);
                chp.b.heat = 0.5 * (chp.a.heat + chp.c.heat);
            }
        CHECK_THROWS_AS(validate_catalog(def), ValidationError);
    }
}

TEST_CASE("fuzzed invalid files raise ParseError or ValidationError, never a spec") {
    const std::string good = default_catalog_json();
    // structured corruptions of the bundled file
    std::vector<std::pair<std::string, std::string>> edits = {
        {"\"rp_min\": 35.4", "\"rp_min\": 100.0"},        // ordering violation
        {"\"cp\": 0.45", "\"cp\": 0.99"},                 // Betz
        {"\"psik\": 46523.0", "\"psik\": -46523.0"},      // negative cost
        {"\"kind\": \"WindFarm\"", "\"kind\": \"Fusion\""}, // unknown kind
        {"\"soc_lo\": 0.2", "\"soc_lo\": 0.95"},          // SOC envelope
        {"\"eta_inverter\": 0.95", "\"eta_inverter\": 1.5"},
        {"\"id\": \"WT-2\"", "\"id\": \"WT-1\""},         // duplicate id
    };
    for (const auto& [from, to] : edits) {
        std::string text = good;
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        CHECK_THROWS_AS(parse_catalog(text, "<fuzz>"), MemgError);
    }
    // syntactically broken file
    CHECK_THROWS_AS(parse_catalog("{not json", "<fuzz>"), ParseError);
    CHECK_THROWS_AS(parse_catalog("{\"a\": 1}", "<fuzz>"), ParseError);
    CHECK_THROWS_AS(load_catalog("no_such_file.json"), ParseError);
}

TEST_CASE("randomized numeric corruption never yields an invalid catalog") {
    // every parse either raises or returns a catalog that re-validates and
    // survives a serialization round trip
    Catalog def = default_catalog();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> magnitude(-1e6, 1e6);
    int parsed = 0, rejected = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Catalog mutated = def;
        auto& spec = mutated[rng() % mutated.size()];
        double value = magnitude(rng);
        switch (rng() % 10) {
        case 0: spec.rp_min = value; break;
        case 1: spec.rp_max = value; break;
        case 2: spec.psi0 = value; break;
        case 3: spec.psik = value; break;
        case 4: spec.co2_per_mwh = value; break;
        case 5: spec.p_min_frac = value; break;
        case 6: spec.p_max_frac = value; break;
        case 7: spec.cap_min = value; break;
        case 8: spec.cap_max = value; break;
        case 9:
            if (std::holds_alternative<WindPhysics>(spec.physics))
                std::get<WindPhysics>(spec.physics).cp = value;
            else
                spec.gamma0 = value;
            break;
        }
        std::string text = serialize_catalog(mutated);
        try {
            Catalog out = parse_catalog(text, "<mutated>");
            ++parsed;
            validate_catalog(out); // must hold for anything that parsed
            Catalog again = parse_catalog(serialize_catalog(out), "<round-trip>");
            REQUIRE(again.size() == out.size());
            for (std::size_t i = 0; i < out.size(); ++i) CHECK(again[i] == out[i]);
        } catch (const MemgError&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 400);
    CHECK(rejected > 100); // most random magnitudes violate an invariant
}
