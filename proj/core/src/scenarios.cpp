#include "memg/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace memg {

using nlohmann::json;

const char* season_name(Season s) {
    switch (s) {
    case Season::Winter: return "Winter";
    case Season::Spring: return "Spring";
    case Season::Summer: return "Summer";
    case Season::Autumn: return "Autumn";
    }
    return "?";
}

Season season_from_name(const std::string& name) {
    for (Season s : {Season::Winter, Season::Spring, Season::Summer, Season::Autumn})
        if (name == season_name(s)) return s;
    throw ParseError("unknown season: " + name);
}

const char* policy_name(Policy p) {
    switch (p) {
    case Policy::CapAndTrade: return "CapAndTrade";
    case Policy::EmissionTax: return "EmissionTax";
    }
    return "?";
}

Policy policy_from_name(const std::string& name) {
    for (Policy p : {Policy::CapAndTrade, Policy::EmissionTax})
        if (name == policy_name(p)) return p;
    throw ParseError("unknown policy: " + name);
}

const WeatherDay& SeasonProfiles::of(Season s) const {
    switch (s) {
    case Season::Winter: return winter;
    case Season::Spring: return spring;
    case Season::Summer: return summer;
    case Season::Autumn: return autumn;
    }
    return winter;
}

void validate_scenario(const Scenario& s) {
    if (s.co2_price <= 0.0)
        throw ValidationError("scenario '" + s.id + "': co2_price must be > 0");
    if (s.gas_price_m3 <= 0.0)
        throw ValidationError("scenario '" + s.id + "': gas price must be > 0");
    if (s.weather.size() != 24)
        throw ValidationError("scenario '" + s.id + "': weather must have exactly 24 hours");
    if (!(s.probability > 0.0 && s.probability <= 1.0))
        throw ValidationError("scenario '" + s.id + "': probability must lie in (0, 1]");
    for (const auto& h : s.weather) validate_weather_hour(h);
}

void validate_scenario_set(const std::vector<Scenario>& set) {
    double sum = 0.0;
    for (const auto& s : set) {
        validate_scenario(s);
        sum += s.probability;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("scenario set probabilities sum to " + std::to_string(sum) +
                              ", expected 1");
}

namespace {

struct ScenarioRow {
    Season season;
    Policy policy;
    int co2_idx;  // index into PriceGrid::co2_prices
    int gas_idx;  // index into PriceGrid::gas_prices
};

// Rows w17..w32 are not a factorial; they follow the published pattern
// verbatim (season cycling Winter/Spring/Summer/Autumn with the listed
// policy and price columns at the second gas price).
constexpr ScenarioRow kSecondBlock[16] = {
    {Season::Winter, Policy::CapAndTrade, 0, 1}, // w17
    {Season::Spring, Policy::EmissionTax, 1, 1}, // w18
    {Season::Summer, Policy::CapAndTrade, 0, 1}, // w19
    {Season::Autumn, Policy::EmissionTax, 1, 1}, // w20
    {Season::Winter, Policy::EmissionTax, 0, 1}, // w21
    {Season::Spring, Policy::CapAndTrade, 1, 1}, // w22
    {Season::Summer, Policy::EmissionTax, 0, 1}, // w23
    {Season::Autumn, Policy::CapAndTrade, 1, 1}, // w24
    {Season::Winter, Policy::EmissionTax, 1, 1}, // w25
    {Season::Spring, Policy::CapAndTrade, 0, 1}, // w26
    {Season::Summer, Policy::EmissionTax, 1, 1}, // w27
    {Season::Autumn, Policy::CapAndTrade, 0, 1}, // w28
    {Season::Winter, Policy::CapAndTrade, 1, 1}, // w29
    {Season::Spring, Policy::EmissionTax, 0, 1}, // w30
    {Season::Summer, Policy::CapAndTrade, 1, 1}, // w31
    {Season::Autumn, Policy::EmissionTax, 0, 1}, // w32
};

double sng_price_per_ton(double price_m3, double density_kg_per_m3) {
    // $/m^3 -> $/t via mass density: 1 t = 1000 kg = 1000/density m^3
    return price_m3 * 1000.0 / density_kg_per_m3;
}

} // namespace

std::vector<Scenario> build_scenarios(const SeasonProfiles& seasons,
                                      const PriceGrid& prices,
                                      const std::vector<Policy>& policies) {
    if (prices.co2_prices.size() != 2 || prices.gas_prices.size() != 2)
        throw ValidationError("build_scenarios: the scenario table needs 2 CO2 prices and 2 gas prices");
    if (policies.empty()) throw ValidationError("build_scenarios: no policies given");
    for (Season s : {Season::Winter, Season::Spring, Season::Summer, Season::Autumn})
        if (seasons.of(s).size() != 24)
            throw ValidationError(std::string("build_scenarios: season profile ") +
                                  season_name(s) + " must have 24 hours");

    std::vector<ScenarioRow> rows;
    // w1..w16: season-major factorial over (policy, co2 price) at gas price 0
    for (Season s : {Season::Winter, Season::Spring, Season::Summer, Season::Autumn}) {
        rows.push_back({s, Policy::CapAndTrade, 0, 0});
        rows.push_back({s, Policy::CapAndTrade, 1, 0});
        rows.push_back({s, Policy::EmissionTax, 0, 0});
        rows.push_back({s, Policy::EmissionTax, 1, 0});
    }
    rows.insert(rows.end(), std::begin(kSecondBlock), std::end(kSecondBlock));

    const bool want_trade = std::find(policies.begin(), policies.end(),
                                      Policy::CapAndTrade) != policies.end();
    const bool want_tax = std::find(policies.begin(), policies.end(),
                                    Policy::EmissionTax) != policies.end();

    std::vector<Scenario> set;
    int table_index = 0;
    for (const auto& row : rows) {
        ++table_index;
        if (row.policy == Policy::CapAndTrade && !want_trade) continue;
        if (row.policy == Policy::EmissionTax && !want_tax) continue;
        Scenario s;
        s.id = "w" + std::to_string(table_index);
        s.season = row.season;
        s.policy = row.policy;
        s.co2_price = prices.co2_prices[static_cast<std::size_t>(row.co2_idx)];
        s.gas_price_m3 = prices.gas_prices[static_cast<std::size_t>(row.gas_idx)];
        s.sng_price = sng_price_per_ton(s.gas_price_m3, prices.sng_density_kg_per_m3);
        s.weather = seasons.of(row.season);
        set.push_back(std::move(s));
    }
    if (set.empty()) throw ValidationError("build_scenarios: policy filter matched nothing");
    for (auto& s : set) s.probability = 1.0 / static_cast<double>(set.size());
    validate_scenario_set(set);
    return set;
}

std::vector<Scenario> filter_scenarios(const std::vector<Scenario>& set,
                                       const std::function<bool(const Scenario&)>& predicate) {
    std::vector<Scenario> subset;
    double kept = 0.0;
    for (const auto& s : set) {
        if (!predicate(s)) continue;
        subset.push_back(s);
        kept += s.probability;
    }
    if (subset.empty()) throw EmptySetError("filter_scenarios: no scenario matches the predicate");
    for (auto& s : subset) s.probability /= kept;
    return subset;
}

std::vector<Scenario> filter_by_policy(const std::vector<Scenario>& set, Policy policy) {
    return filter_scenarios(set, [policy](const Scenario& s) { return s.policy == policy; });
}

std::vector<Scenario> filter_by_season(const std::vector<Scenario>& set, Season season) {
    return filter_scenarios(set, [season](const Scenario& s) { return s.season == season; });
}

double co2_cap(double total_generation_power) {
    if (total_generation_power < 0.0)
        throw DomainError("co2_cap: generation power must be >= 0");
    return kCo2CapPerMw * total_generation_power;
}

Scenario averaged_scenario(const std::vector<Scenario>& set, Policy policy) {
    if (set.empty()) throw EmptySetError("averaged_scenario: empty scenario set");
    double total_p = 0.0;
    for (const auto& s : set) total_p += s.probability;

    Scenario avg;
    avg.id = "avg";
    avg.season = set.front().season;
    avg.policy = policy;
    avg.probability = 1.0;
    avg.weather.assign(24, WeatherHour{});
    for (const auto& s : set) {
        double w = s.probability / total_p;
        avg.co2_price += w * s.co2_price;
        avg.gas_price_m3 += w * s.gas_price_m3;
        avg.sng_price += w * s.sng_price;
        for (std::size_t t = 0; t < 24; ++t) {
            avg.weather[t].v_anemometer += w * s.weather[t].v_anemometer;
            avg.weather[t].g_horizontal += w * s.weather[t].g_horizontal;
            avg.weather[t].theta_a += w * s.weather[t].theta_a;
            avg.weather[t].h0 += w * s.weather[t].h0;
            avg.weather[t].theta += w * s.weather[t].theta;
            avg.weather[t].theta_z += w * s.weather[t].theta_z;
        }
    }
    validate_scenario(avg);
    return avg;
}

std::vector<Scenario> load_scenario_rows(const std::string& path,
                                         const SeasonProfiles& seasons,
                                         double sng_density_kg_per_m3) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("failed to parse scenario file '" + path + "': " + e.what());
    }
    if (!doc.is_array()) throw ParseError("scenario file '" + path + "': top level must be an array");
    std::vector<Scenario> set;
    for (const auto& row : doc) {
        Scenario s;
        s.id = row.at("id").get<std::string>();
        s.season = season_from_name(row.at("season").get<std::string>());
        s.policy = policy_from_name(row.at("policy").get<std::string>());
        s.co2_price = row.at("co2_price").get<double>();
        s.gas_price_m3 = row.at("gas_price_m3").get<double>();
        s.sng_price = sng_price_per_ton(s.gas_price_m3, sng_density_kg_per_m3);
        s.weather = seasons.of(s.season);
        if (row.contains("probability"))
            s.probability = row.at("probability").get<double>();
        set.push_back(std::move(s));
    }
    if (set.empty()) throw ParseError("scenario file '" + path + "': no rows");
    bool any_missing = std::any_of(set.begin(), set.end(),
                                   [](const Scenario& s) { return s.probability <= 0.0; });
    if (any_missing)
        for (auto& s : set) s.probability = 1.0 / static_cast<double>(set.size());
    validate_scenario_set(set);
    return set;
}

void validate_demand(const DemandProfile& demand) {
    for (std::size_t r = 0; r < kResourceCount; ++r)
        for (int t = 0; t < 24; ++t)
            if (demand.demand[r][static_cast<std::size_t>(t)] < 0.0)
                throw ValidationError("demand profile: negative demand");
    if (demand.sng_mandatory < 0.0)
        throw ValidationError("demand profile: negative mandatory SNG floor");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

} // namespace

DemandProfile parse_demand_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(origin + ": empty demand file");
    if (split_line(line) != std::vector<std::string>{"hour", "electricity", "heat", "sng"})
        throw ParseError(origin + ": demand header must be hour,electricity,heat,sng");
    DemandProfile profile;
    int rows = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (fields.size() != 4)
            throw ParseError(origin + ": line " + std::to_string(line_no) + ": expected 4 fields");
        try {
            int hour = std::stoi(fields[0]);
            if (hour != rows + 1)
                throw ParseError(origin + ": hours must run 1..24 in order");
            std::size_t t = static_cast<std::size_t>(rows);
            profile.demand[static_cast<std::size_t>(Resource::Electricity)][t] = std::stod(fields[1]);
            profile.demand[static_cast<std::size_t>(Resource::Heat)][t] = std::stod(fields[2]);
            profile.demand[static_cast<std::size_t>(Resource::Sng)][t] = std::stod(fields[3]);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(origin + ": line " + std::to_string(line_no) + ": bad number");
        }
        ++rows;
    }
    if (rows != 24)
        throw ParseError(origin + ": demand profile must have 24 rows, got " + std::to_string(rows));
    validate_demand(profile);
    return profile;
}

DemandProfile load_demand_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open demand file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_demand_csv(buf.str(), "'" + path + "'");
}

} // namespace memg
