#include "memg/json_io.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace memg {

using nlohmann::json;

namespace {

json design_to_json(const Design& design, const Catalog& catalog) {
    json arr = json::array();
    for (std::size_t c = 0; c < catalog.size(); ++c) {
        const auto& e = design.entries[c];
        json j;
        j["id"] = catalog[c].id;
        j["install"] = e.install;
        j["rated_power"] = e.rated_power;
        j["storage_cap"] = e.storage_cap;
        j["rotor_diameter"] = e.rotor_diameter;
        j["tilt_deg"] = e.tilt * 180.0 / std::numbers::pi;
        arr.push_back(std::move(j));
    }
    return arr;
}

Design design_from_json(const json& arr, const Catalog& catalog) {
    Design d = Design::empty(catalog);
    if (!arr.is_array() || arr.size() != catalog.size())
        throw ParseError("solution design must list every catalog entry");
    for (const auto& j : arr) {
        auto idx = find_spec(catalog, j.at("id").get<std::string>());
        if (!idx) throw ParseError("solution design references unknown id");
        auto& e = d.entries[*idx];
        e.install = j.at("install").get<bool>();
        e.rated_power = j.at("rated_power").get<double>();
        e.storage_cap = j.at("storage_cap").get<double>();
        e.rotor_diameter = j.at("rotor_diameter").get<double>();
        e.tilt = j.at("tilt_deg").get<double>() * std::numbers::pi / 180.0;
    }
    return d;
}

json resource_map_to_json(const ResourceMap& m) {
    json j;
    for (Resource r : kAllResources) j[resource_name(r)] = m[r];
    return j;
}

ResourceMap resource_map_from_json(const json& j) {
    ResourceMap m;
    for (Resource r : kAllResources)
        if (j.contains(resource_name(r))) m[r] = j.at(resource_name(r)).get<double>();
    return m;
}

json dispatch_to_json(const Dispatch& dispatch, const Catalog& catalog) {
    json hours = json::array();
    for (const auto& hour : dispatch.hours) {
        json h;
        json ops = json::array();
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const auto& op = hour.ops[c];
            json o;
            o["id"] = catalog[c].id;
            o["on"] = op.on;
            o["power"] = op.power;
            o["heat"] = op.heat;
            o["charge"] = op.charge;
            o["discharge"] = op.discharge;
            o["soc"] = op.soc;
            o["xi"] = op.xi;
            ops.push_back(std::move(o));
        }
        h["ops"] = std::move(ops);
        h["purchase"] = resource_map_to_json(hour.purchase);
        h["excess"] = resource_map_to_json(hour.excess);
        h["slack"] = resource_map_to_json(hour.slack);
        hours.push_back(std::move(h));
    }
    return hours;
}

Dispatch dispatch_from_json(const json& hours, const Catalog& catalog) {
    Dispatch d = Dispatch::empty(catalog);
    if (!hours.is_array() || hours.size() != d.hours.size())
        throw ParseError("dispatch must have 24 hours");
    for (std::size_t t = 0; t < d.hours.size(); ++t) {
        const auto& h = hours.at(t);
        auto& hour = d.hours[t];
        for (const auto& o : h.at("ops")) {
            auto idx = find_spec(catalog, o.at("id").get<std::string>());
            if (!idx) throw ParseError("dispatch references unknown id");
            auto& op = hour.ops[*idx];
            op.on = o.at("on").get<bool>();
            op.power = o.at("power").get<double>();
            op.heat = o.at("heat").get<double>();
            op.charge = o.at("charge").get<double>();
            op.discharge = o.at("discharge").get<double>();
            op.soc = o.at("soc").get<double>();
            op.xi = o.at("xi").get<double>();
        }
        hour.purchase = resource_map_from_json(h.at("purchase"));
        hour.excess = resource_map_from_json(h.at("excess"));
        hour.slack = resource_map_from_json(h.at("slack"));
    }
    return d;
}

json report_to_json(const CostReport& report) {
    json j;
    j["crf"] = report.crf;
    j["capital"] = report.capital;
    j["maintenance"] = report.maintenance;
    j["expected_second_stage"] = report.expected_second_stage;
    j["tac"] = report.tac;
    j["any_infeasible"] = report.any_infeasible;
    json sc = json::array();
    for (const auto& s : report.scenarios) {
        json e;
        e["scenario_id"] = s.scenario_id;
        e["probability"] = s.probability;
        e["operational"] = s.operational;
        e["trading"] = s.trading;
        e["tax"] = s.tax;
        e["revenue"] = s.revenue;
        e["infeasible"] = s.infeasible;
        sc.push_back(std::move(e));
    }
    j["scenarios"] = std::move(sc);
    return j;
}

CostReport report_from_json(const json& j) {
    CostReport r;
    r.crf = j.at("crf").get<double>();
    r.capital = j.at("capital").get<double>();
    r.maintenance = j.at("maintenance").get<double>();
    r.expected_second_stage = j.at("expected_second_stage").get<double>();
    r.tac = j.at("tac").get<double>();
    r.any_infeasible = j.at("any_infeasible").get<bool>();
    for (const auto& e : j.at("scenarios")) {
        ScenarioCost s;
        s.scenario_id = e.at("scenario_id").get<std::string>();
        s.probability = e.at("probability").get<double>();
        s.operational = e.at("operational").get<double>();
        s.trading = e.at("trading").get<double>();
        s.tax = e.at("tax").get<double>();
        s.revenue = e.at("revenue").get<double>();
        s.infeasible = e.at("infeasible").get<bool>();
        r.scenarios.push_back(std::move(s));
    }
    return r;
}

json weather_to_json(const WeatherDay& day) {
    json arr = json::array();
    for (const auto& h : day) {
        json j;
        j["v_anemometer"] = h.v_anemometer;
        j["g_horizontal"] = h.g_horizontal;
        j["theta_a"] = h.theta_a;
        j["h0"] = h.h0;
        j["theta"] = h.theta;
        j["theta_z"] = h.theta_z;
        arr.push_back(std::move(j));
    }
    return arr;
}

WeatherDay weather_from_json(const json& arr) {
    WeatherDay day;
    for (const auto& j : arr) {
        WeatherHour h;
        h.v_anemometer = j.at("v_anemometer").get<double>();
        h.g_horizontal = j.at("g_horizontal").get<double>();
        h.theta_a = j.at("theta_a").get<double>();
        h.h0 = j.at("h0").get<double>();
        h.theta = j.at("theta").get<double>();
        h.theta_z = j.at("theta_z").get<double>();
        day.push_back(h);
    }
    return day;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["id"] = s.id;
    j["season"] = season_name(s.season);
    j["policy"] = policy_name(s.policy);
    j["co2_price"] = s.co2_price;
    j["gas_price_m3"] = s.gas_price_m3;
    j["sng_price"] = s.sng_price;
    j["probability"] = s.probability;
    j["weather"] = weather_to_json(s.weather);
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.id = j.at("id").get<std::string>();
    s.season = season_from_name(j.at("season").get<std::string>());
    s.policy = policy_from_name(j.at("policy").get<std::string>());
    s.co2_price = j.at("co2_price").get<double>();
    s.gas_price_m3 = j.at("gas_price_m3").get<double>();
    s.sng_price = j.at("sng_price").get<double>();
    s.probability = j.at("probability").get<double>();
    s.weather = weather_from_json(j.at("weather"));
    return s;
}

json demand_to_json(const DemandProfile& d) {
    json j;
    for (Resource r : kAllResources) {
        json col = json::array();
        for (int t = 0; t < 24; ++t)
            col.push_back(d.demand[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)]);
        j[resource_name(r)] = std::move(col);
    }
    j["sng_demand_mode"] =
        d.sng_demand_mode == SngDemandMode::Mandatory ? "mandatory" : "none";
    j["sng_mandatory"] = d.sng_mandatory;
    return j;
}

DemandProfile demand_from_json(const json& j) {
    DemandProfile d;
    for (Resource r : kAllResources) {
        if (!j.contains(resource_name(r))) continue;
        const auto& col = j.at(resource_name(r));
        for (int t = 0; t < 24; ++t)
            d.demand[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)] =
                col.at(static_cast<std::size_t>(t)).get<double>();
    }
    d.sng_demand_mode = j.at("sng_demand_mode").get<std::string>() == "mandatory"
                            ? SngDemandMode::Mandatory
                            : SngDemandMode::None;
    d.sng_mandatory = j.at("sng_mandatory").get<double>();
    return d;
}

json options_to_json(const SolverOptions& o) {
    json j;
    j["rel_tol"] = o.rel_tol;
    j["abs_tol"] = o.abs_tol;
    j["max_outer_iters"] = o.max_outer_iters;
    j["sizing_grid_points"] = o.sizing_grid_points;
    j["dispatch_max_iters"] = o.dispatch_max_iters;
    j["seed"] = o.seed;
    j["mode"] = o.mode == SolveMode::Deterministic ? "deterministic" : "stochastic";
    j["forced_install"] = o.forced_install;
    j["prices"] = {{"coal", o.prices.coal}, {"biomass", o.prices.biomass}};
    j["interest"] = o.annual.interest;
    j["lifetime_years"] = o.annual.lifetime_years;
    j["balance_tol"] = o.balance_tol;
    j["pattern_search_max_iters"] = o.pattern_search_max_iters;
    json grids;
    for (const auto& [id, g] : o.sizing_grids) grids[id] = g;
    j["sizing_grids"] = std::move(grids);
    return j;
}

SolverOptions options_from_json(const json& j) {
    SolverOptions o;
    o.rel_tol = j.at("rel_tol").get<double>();
    o.abs_tol = j.at("abs_tol").get<double>();
    o.max_outer_iters = j.at("max_outer_iters").get<int>();
    o.sizing_grid_points = j.at("sizing_grid_points").get<int>();
    o.dispatch_max_iters = j.at("dispatch_max_iters").get<int>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.mode = j.at("mode").get<std::string>() == "deterministic"
                 ? SolveMode::Deterministic
                 : SolveMode::Stochastic;
    o.forced_install = j.at("forced_install").get<std::vector<std::string>>();
    o.prices.coal = j.at("prices").at("coal").get<double>();
    o.prices.biomass = j.at("prices").at("biomass").get<double>();
    o.annual.interest = j.at("interest").get<double>();
    o.annual.lifetime_years = j.at("lifetime_years").get<double>();
    o.balance_tol = j.at("balance_tol").get<double>();
    o.pattern_search_max_iters = j.at("pattern_search_max_iters").get<int>();
    if (j.contains("sizing_grids"))
        for (const auto& [id, g] : j.at("sizing_grids").items())
            o.sizing_grids[id] = g.get<std::vector<double>>();
    return o;
}

} // namespace

std::string serialize_design(const Design& design, const Catalog& catalog) {
    return design_to_json(design, catalog).dump(2) + "\n";
}

std::string serialize_dispatch(const Dispatch& dispatch, const Catalog& catalog) {
    return dispatch_to_json(dispatch, catalog).dump(2) + "\n";
}

std::string serialize_cost_report(const CostReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string serialize_violations(const std::vector<Violation>& violations) {
    json arr = json::array();
    for (const auto& v : violations) {
        json j;
        j["constraint"] = v.constraint;
        j["equipment_id"] = v.equipment_id;
        j["hour"] = v.hour;
        j["resource"] = v.resource;
        j["residual"] = v.residual;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string serialize_solution(const Solution& solution, const Catalog& catalog,
                               const std::vector<Scenario>& scenarios,
                               const DemandProfile& demand,
                               const SolverOptions& options) {
    json j;
    j["status"] = status_name(solution.status);
    j["outer_iterations"] = solution.outer_iterations;
    j["incumbent_tacs"] = solution.incumbent_tacs;
    j["design"] = design_to_json(solution.design, catalog);
    json dispatches = json::array();
    for (const auto& d : solution.dispatches)
        dispatches.push_back(dispatch_to_json(d, catalog));
    j["dispatches"] = std::move(dispatches);
    j["report"] = report_to_json(solution.report);
    json instance;
    instance["catalog"] = json::parse(serialize_catalog(catalog));
    json sc = json::array();
    for (const auto& s : scenarios) sc.push_back(scenario_to_json(s));
    instance["scenarios"] = std::move(sc);
    instance["demand"] = demand_to_json(demand);
    instance["options"] = options_to_json(options);
    j["instance"] = std::move(instance);
    return j.dump(2) + "\n";
}

LoadedSolution parse_solution(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError("failed to parse solution " + origin + ": " + e.what());
    }
    LoadedSolution out;
    try {
        out.catalog = parse_catalog(j.at("instance").at("catalog").dump(), origin);
        for (const auto& s : j.at("instance").at("scenarios"))
            out.scenarios.push_back(scenario_from_json(s));
        out.demand = demand_from_json(j.at("instance").at("demand"));
        out.options = options_from_json(j.at("instance").at("options"));
        out.solution.design = design_from_json(j.at("design"), out.catalog);
        for (const auto& d : j.at("dispatches"))
            out.solution.dispatches.push_back(dispatch_from_json(d, out.catalog));
        out.solution.report = report_from_json(j.at("report"));
        out.solution.outer_iterations = j.at("outer_iterations").get<int>();
        out.solution.incumbent_tacs = j.at("incumbent_tacs").get<std::vector<double>>();
        std::string st = j.at("status").get<std::string>();
        for (SolveStatus s : {SolveStatus::Optimal, SolveStatus::Feasible,
                              SolveStatus::Infeasible, SolveStatus::IterLimit})
            if (st == status_name(s)) out.solution.status = s;
    } catch (const json::exception& e) {
        throw ParseError("malformed solution " + origin + ": " + e.what());
    }
    return out;
}

LoadedSolution load_solution(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open solution file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_solution(buf.str(), "'" + path + "'");
}

OracleInstance load_oracle_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open oracle instance file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("failed to parse oracle instance '" + path + "': " + e.what());
    }
    OracleInstance out;
    try {
        out.catalog = parse_catalog(j.at("catalog").dump(), "'" + path + "'");
        for (const auto& s : j.at("scenarios"))
            out.scenarios.push_back(scenario_from_json(s));
        out.demand = demand_from_json(j.at("demand"));
        if (j.contains("options")) out.options = options_from_json(j.at("options"));
        out.grids.power_fractions =
            j.at("grids").at("power_fractions").get<std::vector<double>>();
        if (j.at("grids").contains("sizing"))
            for (const auto& [id, g] : j.at("grids").at("sizing").items())
                out.grids.sizing[id] = g.get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ParseError("malformed oracle instance '" + path + "': " + e.what());
    }
    return out;
}

} // namespace memg
