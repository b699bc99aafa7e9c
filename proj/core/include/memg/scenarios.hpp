#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "memg/environment.hpp"
#include "memg/resources.hpp"

namespace memg {

enum class Season : int { Winter = 0, Spring = 1, Summer = 2, Autumn = 3 };
enum class Policy : int { CapAndTrade = 0, EmissionTax = 1 };

const char* season_name(Season s);
Season season_from_name(const std::string& name);
const char* policy_name(Policy p);
Policy policy_from_name(const std::string& name);

// Tons of CO2 allowed per MW of generator operating power (cap basis).
inline constexpr double kCo2CapPerMw = 0.3;

// Default SNG density used to convert the tabulated $/m^3 gas price to
// $/t; overridable where scenarios are built.
inline constexpr double kDefaultSngDensityKgPerM3 = 0.717;

struct Scenario {
    std::string id;      // w1..wN
    Season season = Season::Winter;
    Policy policy = Policy::CapAndTrade;
    double co2_price = 0.0;        // $/t, trading price or tax
    double gas_price_m3 = 0.0;     // $/m^3 as tabulated
    double sng_price = 0.0;        // $/t, Prc(SNG) after density conversion
    WeatherDay weather;            // exactly 24 hours
    double probability = 0.0;      // pi_w in (0, 1]
};

void validate_scenario(const Scenario& s);
// Probabilities over a set must sum to 1 within 1e-12.
void validate_scenario_set(const std::vector<Scenario>& set);

struct SeasonProfiles {
    WeatherDay winter, spring, summer, autumn;
    const WeatherDay& of(Season s) const;
};

struct PriceGrid {
    std::vector<double> co2_prices = {50.0, 100.0}; // $/t
    std::vector<double> gas_prices = {0.86, 1.72};  // $/m^3
    double sng_density_kg_per_m3 = kDefaultSngDensityKgPerM3;
};

// The 32-row scenario table: rows w1..w16 are the season x policy x
// CO2-price factorial at the first gas price; rows w17..w32 follow the
// published pattern at the second gas price verbatim. Equal probabilities.
std::vector<Scenario> build_scenarios(const SeasonProfiles& seasons,
                                      const PriceGrid& prices = {},
                                      const std::vector<Policy>& policies = {Policy::CapAndTrade, Policy::EmissionTax});

// Subset matching the predicate, probabilities renormalised to 1.
std::vector<Scenario> filter_scenarios(const std::vector<Scenario>& set,
                                       const std::function<bool(const Scenario&)>& predicate);
std::vector<Scenario> filter_by_policy(const std::vector<Scenario>& set, Policy policy);
std::vector<Scenario> filter_by_season(const std::vector<Scenario>& set, Season season);

// Hourly CO2 cap from total generator operating power.
double co2_cap(double total_generation_power);

// Probability-weighted mean of weather columns and prices across the set;
// the single resulting scenario carries the given policy and probability 1.
Scenario averaged_scenario(const std::vector<Scenario>& set, Policy policy);

// Scenario override file: JSON array of rows mirroring the published
// table columns (id, season, policy, co2_price, gas_price_m3).
std::vector<Scenario> load_scenario_rows(const std::string& path,
                                         const SeasonProfiles& seasons,
                                         double sng_density_kg_per_m3 = kDefaultSngDensityKgPerM3);

// --- demand ---

enum class SngDemandMode : int { None = 0, Mandatory = 1 };

struct DemandProfile {
    // demand[resource][hour], quantity per hour; electricity/heat MW, sng t/h.
    std::array<std::array<double, 24>, kResourceCount> demand{};
    SngDemandMode sng_demand_mode = SngDemandMode::None;
    double sng_mandatory = 0.0; // t/h floor applied to every hour when Mandatory

    double at(Resource r, int hour) const {
        double base = demand[static_cast<std::size_t>(r)][static_cast<std::size_t>(hour)];
        if (r == Resource::Sng && sng_demand_mode == SngDemandMode::Mandatory)
            return std::max(base, sng_mandatory);
        return base;
    }
};

void validate_demand(const DemandProfile& demand);

// CSV with header hour,electricity,heat,sng; 24 rows.
DemandProfile load_demand_csv(const std::string& path);
DemandProfile parse_demand_csv(const std::string& text, const std::string& origin);

} // namespace memg
