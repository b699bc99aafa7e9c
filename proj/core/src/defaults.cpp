#include "memg/defaults.hpp"

namespace memg {

namespace embedded {
extern const std::string kDefaultCatalogJson;
extern const std::string kWeatherWinterCsv;
extern const std::string kWeatherSpringCsv;
extern const std::string kWeatherSummerCsv;
extern const std::string kWeatherAutumnCsv;
extern const std::string kDemandDefaultCsv;
} // namespace embedded

const std::string& default_catalog_json() { return embedded::kDefaultCatalogJson; }

const std::string& default_weather_csv(Season season) {
    switch (season) {
    case Season::Winter: return embedded::kWeatherWinterCsv;
    case Season::Spring: return embedded::kWeatherSpringCsv;
    case Season::Summer: return embedded::kWeatherSummerCsv;
    case Season::Autumn: return embedded::kWeatherAutumnCsv;
    }
    return embedded::kWeatherWinterCsv;
}

const std::string& default_demand_csv() { return embedded::kDemandDefaultCsv; }

SeasonProfiles default_season_profiles() {
    SeasonProfiles p;
    p.winter = parse_weather_csv(default_weather_csv(Season::Winter), "<bundled winter>");
    p.spring = parse_weather_csv(default_weather_csv(Season::Spring), "<bundled spring>");
    p.summer = parse_weather_csv(default_weather_csv(Season::Summer), "<bundled summer>");
    p.autumn = parse_weather_csv(default_weather_csv(Season::Autumn), "<bundled autumn>");
    return p;
}

DemandProfile default_demand() {
    return parse_demand_csv(default_demand_csv(), "<bundled demand>");
}

} // namespace memg
