// memg: design and schedule a multi-energy microgrid under carbon-policy,
// weather and price uncertainty. Subcommands: run, compare, oracle.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "memg/defaults.hpp"
#include "memg/json_io.hpp"
#include "memg/oracle.hpp"
#include "memg/solver.hpp"

namespace fs = std::filesystem;
using namespace memg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIterLimit = 4;
constexpr int kExitIo = 5;

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
}

struct RunConfig {
    int case_id = 0; // 0 = custom
    std::string catalog_path;
    std::string weather_dir;
    std::string demand_path;
    std::string scenario_path;
    std::string policy = "both";
    std::string out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> force_install;
    bool deterministic = false;
    double sng_demand = -1.0; // <0: from case preset
    SolverOptions solver;
};

SeasonProfiles load_seasons(const std::string& dir) {
    if (dir.empty()) return default_season_profiles();
    SeasonProfiles p;
    p.winter = load_weather_csv((fs::path(dir) / "weather_winter.csv").string());
    p.spring = load_weather_csv((fs::path(dir) / "weather_spring.csv").string());
    p.summer = load_weather_csv((fs::path(dir) / "weather_summer.csv").string());
    p.autumn = load_weather_csv((fs::path(dir) / "weather_autumn.csv").string());
    return p;
}

void write_series_csvs(const fs::path& out_dir, const Catalog& catalog,
                       const std::vector<Scenario>& scenarios,
                       const Solution& solution) {
    // hourly electricity generation per device per scenario
    {
        std::string csv = "scenario,hour";
        for (const auto& spec : catalog) csv += "," + spec.id;
        csv += "\n";
        for (std::size_t w = 0; w < solution.dispatches.size(); ++w) {
            for (int t = 0; t < kHoursPerDay; ++t) {
                csv += scenarios[w].id + "," + std::to_string(t + 1);
                for (std::size_t c = 0; c < catalog.size(); ++c) {
                    const auto& op = solution.dispatches[w].hours[static_cast<std::size_t>(t)].ops[c];
                    double gen = op.power;
                    if (catalog[c].kind == EquipmentKind::Storage)
                        gen = op.discharge - op.charge;
                    if (catalog[c].kind == EquipmentKind::HeatPump ||
                        catalog[c].kind == EquipmentKind::P2G)
                        gen = -op.power;
                    csv += "," + fmt_num(gen);
                }
                csv += "\n";
            }
        }
        write_file(out_dir / "generation_electricity.csv", csv);
    }
    // hourly heat generation per device per scenario
    {
        std::string csv = "scenario,hour";
        for (const auto& spec : catalog) csv += "," + spec.id;
        csv += "\n";
        for (std::size_t w = 0; w < solution.dispatches.size(); ++w) {
            for (int t = 0; t < kHoursPerDay; ++t) {
                csv += scenarios[w].id + "," + std::to_string(t + 1);
                for (std::size_t c = 0; c < catalog.size(); ++c)
                    csv += "," + fmt_num(solution.dispatches[w]
                                             .hours[static_cast<std::size_t>(t)]
                                             .ops[c]
                                             .heat);
                csv += "\n";
            }
        }
        write_file(out_dir / "heat_generation.csv", csv);
    }
    // hourly excess CO2, cap, and trading cost/revenue
    std::string excess_csv = "scenario,hour,excess_co2\n";
    std::string cap_csv = "scenario,hour,co2_cap\n";
    std::string trade_csv = "scenario,hour,trading_cost\n";
    for (std::size_t w = 0; w < solution.dispatches.size(); ++w) {
        auto caps = co2_cap_series(catalog, solution.dispatches[w]);
        for (int t = 0; t < kHoursPerDay; ++t) {
            const auto& hour = solution.dispatches[w].hours[static_cast<std::size_t>(t)];
            double yx = hour.excess[Resource::Co2];
            excess_csv += scenarios[w].id + "," + std::to_string(t + 1) + "," +
                          fmt_num(yx) + "\n";
            cap_csv += scenarios[w].id + "," + std::to_string(t + 1) + "," +
                       fmt_num(caps[static_cast<std::size_t>(t)]) + "\n";
            double trade = scenarios[w].policy == Policy::CapAndTrade
                               ? kDaysPerYear * (yx - caps[static_cast<std::size_t>(t)]) *
                                     scenarios[w].co2_price
                               : 0.0;
            trade_csv += scenarios[w].id + "," + std::to_string(t + 1) + "," +
                         fmt_num(trade) + "\n";
        }
    }
    write_file(out_dir / "excess_co2.csv", excess_csv);
    write_file(out_dir / "co2_cap.csv", cap_csv);
    write_file(out_dir / "trading_cost.csv", trade_csv);
}

int cmd_run(const RunConfig& cfg) {
    Catalog catalog =
        cfg.catalog_path.empty() ? default_catalog() : load_catalog(cfg.catalog_path);
    SeasonProfiles seasons = load_seasons(cfg.weather_dir);
    DemandProfile demand =
        cfg.demand_path.empty() ? default_demand() : load_demand_csv(cfg.demand_path);

    SolverOptions options = cfg.solver;
    options.seed = cfg.seed;

    // case presets
    if (cfg.case_id == 2) {
        demand.sng_demand_mode = SngDemandMode::Mandatory;
        demand.sng_mandatory = cfg.sng_demand >= 0.0 ? cfg.sng_demand : 0.250;
    } else if (cfg.sng_demand >= 0.0) {
        demand.sng_demand_mode = SngDemandMode::Mandatory;
        demand.sng_mandatory = cfg.sng_demand;
    }
    if (cfg.case_id == 3)
        options.forced_install = {"WT-1", "WT-2", "SPA-1", "SPA-2"};
    for (const auto& id : cfg.force_install)
        options.forced_install.push_back(id);

    std::vector<Policy> policies;
    if (cfg.policy == "trade") {
        policies = {Policy::CapAndTrade};
    } else if (cfg.policy == "tax") {
        policies = {Policy::EmissionTax};
    } else if (cfg.policy == "both") {
        policies = {Policy::CapAndTrade, Policy::EmissionTax};
    } else {
        std::cerr << "error: --policy must be trade, tax or both\n";
        return kExitConfig;
    }

    std::vector<Scenario> scenarios;
    if (!cfg.scenario_path.empty()) {
        scenarios = load_scenario_rows(cfg.scenario_path, seasons);
        if (policies.size() == 1)
            scenarios = filter_by_policy(scenarios, policies.front());
    } else {
        scenarios = build_scenarios(seasons, PriceGrid{}, policies);
    }

    fs::create_directories(cfg.out_dir);
    fs::path out_dir(cfg.out_dir);

    options.progress = [](int explored, int queued, double incumbent) {
        std::fprintf(stderr, "\r[memg] subset %d/%d  incumbent %s    ", explored,
                     queued,
                     std::isfinite(incumbent) ? fmt_num(incumbent).c_str() : "-");
        if (explored == queued) std::fprintf(stderr, "\n");
    };

    Solution solution;
    if (cfg.deterministic) {
        if (policies.size() != 1) {
            std::cerr << "error: --deterministic requires --policy trade or tax\n";
            return kExitConfig;
        }
        solution = solve_deterministic(catalog, scenarios, policies.front(), demand,
                                       options);
        // the report reflects the singleton averaged scenario
        scenarios = {averaged_scenario(scenarios, policies.front())};
    } else {
        solution = solve_design(catalog, scenarios, demand, options);
    }

    write_file(out_dir / "solution.json",
               serialize_solution(solution, catalog, scenarios, demand, options));
    write_file(out_dir / "cost_report.json", serialize_cost_report(solution.report));
    if (!solution.dispatches.empty())
        write_series_csvs(out_dir, catalog, scenarios, solution);

    std::cout << "status: " << status_name(solution.status) << "\n";
    std::cout << "scenarios: " << scenarios.size() << "\n";
    if (solution.status == SolveStatus::Optimal ||
        solution.status == SolveStatus::Feasible ||
        (solution.status == SolveStatus::IterLimit && !solution.dispatches.empty())) {
        std::cout << "tac: " << fmt_num(solution.report.tac) << " $/yr ("
                  << fmt_num(solution.report.tac / 1e6) << " M$/yr)\n";
        std::cout << "selected:";
        for (std::size_t c = 0; c < catalog.size(); ++c)
            if (solution.design.entries[c].install)
                std::cout << " " << catalog[c].id << "("
                          << fmt_num(solution.design.entries[c].rated_power) << ")";
        std::cout << "\n";
    }

    switch (solution.status) {
    case SolveStatus::Optimal:
    case SolveStatus::Feasible:
        return kExitOk;
    case SolveStatus::IterLimit:
        return kExitIterLimit;
    case SolveStatus::Infeasible:
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& out_dir) {
    LoadedSolution a = load_solution(path_a);
    LoadedSolution b = load_solution(path_b);

    if (a.catalog.size() != b.catalog.size())
        throw IncompatibleInstances("compare: catalogs differ in size");
    for (std::size_t c = 0; c < a.catalog.size(); ++c)
        if (!(a.catalog[c] == b.catalog[c]))
            throw IncompatibleInstances("compare: catalogs differ at '" +
                                        a.catalog[c].id + "'");
    for (Resource r : kAllResources)
        for (int t = 0; t < kHoursPerDay; ++t)
            if (a.demand.at(r, t) != b.demand.at(r, t))
                throw IncompatibleInstances("compare: demand profiles differ");

    // cross-evaluation: each design under the other's scenario set
    CostReport a_under_b =
        evaluate_design(a.solution.design, b.scenarios, b.demand, b.catalog, b.options);
    CostReport b_under_a =
        evaluate_design(b.solution.design, a.scenarios, a.demand, a.catalog, a.options);

    std::string report = "{\n";
    report += "  \"tac_a\": " + fmt_num(a.solution.report.tac) + ",\n";
    report += "  \"tac_b\": " + fmt_num(b.solution.report.tac) + ",\n";
    report += "  \"tac_a_under_b_scenarios\": " + fmt_num(a_under_b.tac) + ",\n";
    report += "  \"tac_b_under_a_scenarios\": " + fmt_num(b_under_a.tac) + ",\n";
    report += "  \"a_under_b_infeasible\": ";
    report += a_under_b.any_infeasible ? "true" : "false";
    report += ",\n  \"b_under_a_infeasible\": ";
    report += b_under_a.any_infeasible ? "true" : "false";
    report += ",\n  \"selection_differences\": [";
    bool first = true;
    std::cout << "id          rp_a       rp_b\n";
    for (std::size_t c = 0; c < a.catalog.size(); ++c) {
        const auto& ea = a.solution.design.entries[c];
        const auto& eb = b.solution.design.entries[c];
        if (ea.install || eb.install) {
            std::printf("%-10s %10.4f %10.4f\n", a.catalog[c].id.c_str(),
                        ea.install ? ea.rated_power : 0.0,
                        eb.install ? eb.rated_power : 0.0);
        }
        if (ea.install != eb.install) {
            if (!first) report += ", ";
            report += "\"" + a.catalog[c].id + "\"";
            first = false;
        }
    }
    report += "]\n}\n";
    std::cout << "tac_a=" << fmt_num(a.solution.report.tac)
              << " tac_b=" << fmt_num(b.solution.report.tac) << "\n";

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "compare.json", report);
    }
    return kExitOk;
}

int cmd_oracle(const std::string& instance_path, const std::string& out_dir) {
    OracleInstance inst = load_oracle_instance(instance_path);
    Solution solution = brute_force_oracle(inst.catalog, inst.scenarios, inst.demand,
                                           inst.grids, inst.options);
    std::cout << "status: " << status_name(solution.status) << "\n";
    if (solution.status == SolveStatus::Optimal)
        std::cout << "tac: " << fmt_num(solution.report.tac) << " $/yr\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "oracle_solution.json",
                   serialize_solution(solution, inst.catalog, inst.scenarios,
                                      inst.demand, inst.options));
        write_file(fs::path(out_dir) / "oracle_report.json",
                   serialize_cost_report(solution.report));
    }
    return solution.status == SolveStatus::Optimal ? kExitOk : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-energy microgrid design and dispatch under policy uncertainty"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string case_str = "custom";
    auto* run = app.add_subcommand("run", "solve a case study or custom configuration");
    run->add_option("--case", case_str, "1|2|3|custom")->default_str("custom");
    run->add_option("--catalog", cfg.catalog_path, "catalog JSON (default: bundled)");
    run->add_option("--weather", cfg.weather_dir,
                    "directory with weather_<season>.csv files (default: bundled)");
    run->add_option("--demand", cfg.demand_path, "demand CSV (default: bundled)");
    run->add_option("--scenarios", cfg.scenario_path, "scenario override JSON");
    run->add_option("--policy", cfg.policy, "trade|tax|both")->default_str("both");
    run->add_option("--out", cfg.out_dir, "output directory")->required();
    run->add_option("--seed", cfg.seed, "seed recorded in outputs");
    run->add_option("--force-install", cfg.force_install, "equipment ids pinned on");
    run->add_flag("--deterministic", cfg.deterministic,
                  "solve the averaged deterministic counterpart");
    run->add_option("--sng-demand", cfg.sng_demand, "mandatory SNG sale floor t/h");
    run->add_option("--max-outer", cfg.solver.max_outer_iters, "subset budget");
    run->add_option("--grid-points", cfg.solver.sizing_grid_points,
                    "sizing samples per variable");
    run->add_option("--dispatch-iters", cfg.solver.dispatch_max_iters,
                    "dispatch refinement sweeps");
    run->add_option("--pattern-iters", cfg.solver.pattern_search_max_iters,
                    "pattern search iterations");
    run->add_option("--coal-price", cfg.solver.prices.coal, "$/t");
    run->add_option("--biomass-price", cfg.solver.prices.biomass, "$/t");
    run->add_flag("--klucher-standard", cfg.solver.irradiance.klucher_standard_tilt_term,
                  "use the 0.5*(1+cos b) tilted-diffuse bracket");

    std::string cmp_a, cmp_b, cmp_out;
    auto* cmp = app.add_subcommand("compare", "compare two solution files");
    cmp->add_option("a", cmp_a, "first solution.json")->required();
    cmp->add_option("b", cmp_b, "second solution.json")->required();
    cmp->add_option("--out", cmp_out, "output directory for compare.json");

    std::string oracle_instance, oracle_out;
    auto* orc = app.add_subcommand("oracle", "exhaustive grid optimum for tiny instances");
    orc->add_option("--instance", oracle_instance, "instance JSON")->required();
    orc->add_option("--out", oracle_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (case_str == "1") cfg.case_id = 1;
            else if (case_str == "2") cfg.case_id = 2;
            else if (case_str == "3") cfg.case_id = 3;
            else if (case_str == "custom") cfg.case_id = 0;
            else {
                std::cerr << "error: --case must be 1, 2, 3 or custom\n";
                return kExitConfig;
            }
            return cmd_run(cfg);
        }
        if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_out);
        if (orc->parsed()) return cmd_oracle(oracle_instance, oracle_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InfeasibleDispatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const MemgError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
