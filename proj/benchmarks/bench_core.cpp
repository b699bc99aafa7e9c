#include <benchmark/benchmark.h>

#include "memg/defaults.hpp"
#include "memg/devices.hpp"
#include "memg/environment.hpp"
#include "memg/model.hpp"
#include "memg/oracle.hpp"
#include "memg/solver.hpp"

using namespace memg;

namespace {

WeatherHour daylight_hour() {
    WeatherHour h;
    h.g_horizontal = 620.0;
    h.h0 = 1010.0;
    h.theta_a = 21.0;
    h.theta = 0.32;
    h.theta_z = 0.52;
    h.v_anemometer = 6.2;
    return h;
}

EquipmentSpec bench_gen(const std::string& id, double fuel_per_mwh) {
    EquipmentSpec spec;
    spec.id = id;
    spec.kind = EquipmentKind::BiomassFired;
    spec.rp_min = 8.0;
    spec.rp_max = 8.0;
    spec.psi0 = 0.4;
    spec.psik = 2000.0;
    spec.co2_per_mwh = 0.1;
    LinearGenPhysics phys;
    phys.fuel = Resource::Biomass;
    phys.fuel_per_mwh = fuel_per_mwh;
    spec.physics = phys;
    return spec;
}

DemandProfile bench_demand(double level) {
    DemandProfile d;
    for (int t = 0; t < 24; ++t)
        d.demand[static_cast<std::size_t>(Resource::Electricity)][static_cast<std::size_t>(t)] = level;
    return d;
}

Scenario bench_scenario() {
    Scenario s;
    s.id = "bench";
    s.policy = Policy::CapAndTrade;
    s.co2_price = 50.0;
    s.gas_price_m3 = 0.86;
    s.sng_price = 1199.4;
    s.probability = 1.0;
    for (int t = 0; t < 24; ++t) s.weather.push_back(daylight_hour());
    return s;
}

} // namespace

static void BM_TiltedIrradiance(benchmark::State& state) {
    WeatherHour hour = daylight_hour();
    double beta = 0.6;
    for (auto _ : state) {
        auto t = tilted_irradiance(hour, beta, 0.2);
        benchmark::DoNotOptimize(t.g_beta);
    }
}
BENCHMARK(BM_TiltedIrradiance);

static void BM_PvEfficiency(benchmark::State& state) {
    SolarPhysics coeffs;
    for (auto _ : state) {
        double eta = pv_efficiency(760.0, 42.0, 1.7, coeffs);
        benchmark::DoNotOptimize(eta);
    }
}
BENCHMARK(BM_PvEfficiency);

static void BM_SabatierMaxExtent(benchmark::State& state) {
    P2GPhysics phys;
    for (auto _ : state) {
        double xi = sabatier_max_extent(phys);
        benchmark::DoNotOptimize(xi);
    }
}
BENCHMARK(BM_SabatierMaxExtent);

static void BM_CvtCost(benchmark::State& state) {
    ConventionalPhysics phys;
    double p = 23.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvt_cost(p, phys));
        p = p < 49.0 ? p + 0.1 : 10.0;
    }
}
BENCHMARK(BM_CvtCost);

static void BM_ChpFeasible(benchmark::State& state) {
    ChpPhysics phys;
    phys.a = {105.0, 0.0};
    phys.b = {91.4, 76.5};
    phys.c = {34.4, 44.6};
    phys.d = {42.0, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(chp_feasible(70.0, 30.0, phys));
    }
}
BENCHMARK(BM_ChpFeasible);

static void BM_SolveDispatchDay(benchmark::State& state) {
    Catalog cat = {bench_gen("G1", 1.0), bench_gen("G2", 1.7), bench_gen("G3", 2.3)};
    Design design = Design::empty(cat);
    for (auto& e : design.entries) {
        e.install = true;
        e.rated_power = 8.0;
    }
    Scenario scen = bench_scenario();
    DemandProfile demand = bench_demand(17.0);
    SolverOptions options;
    options.max_outer_iters = 8;
    for (auto _ : state) {
        Dispatch d = solve_dispatch(design, scen, demand, cat, options);
        benchmark::DoNotOptimize(d.hours.front().ops.front().power);
    }
}
BENCHMARK(BM_SolveDispatchDay);

static void BM_CheckFeasibility(benchmark::State& state) {
    Catalog cat = {bench_gen("G1", 1.0), bench_gen("G2", 1.7)};
    Design design = Design::empty(cat);
    for (auto& e : design.entries) {
        e.install = true;
        e.rated_power = 8.0;
    }
    Scenario scen = bench_scenario();
    DemandProfile demand = bench_demand(12.0);
    SolverOptions options;
    Dispatch d = solve_dispatch(design, scen, demand, cat, options);
    for (auto _ : state) {
        auto v = check_feasibility(design, d, scen, demand, cat);
        benchmark::DoNotOptimize(v.size());
    }
}
BENCHMARK(BM_CheckFeasibility);

static void BM_OracleTiny(benchmark::State& state) {
    Catalog cat = {bench_gen("G1", 1.0), bench_gen("G2", 1.7)};
    Scenario scen = bench_scenario();
    DemandProfile demand = bench_demand(12.0);
    SolverOptions options;
    OracleGrids grids;
    for (int k = 0; k <= 8; ++k) grids.power_fractions.push_back(k / 8.0);
    for (auto _ : state) {
        Solution s = brute_force_oracle(cat, {scen}, demand, grids, options);
        benchmark::DoNotOptimize(s.report.tac);
    }
}
BENCHMARK(BM_OracleTiny);

BENCHMARK_MAIN();
