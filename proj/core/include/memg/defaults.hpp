#pragma once

#include "memg/scenarios.hpp"

namespace memg {

// Synthetic bundled inputs (see core/data/README.md for provenance): the
// candidate-equipment catalog ships published table values with
// provisional physics blocks; weather and demand profiles are synthetic
// placeholders for the measured data the original study used.

const std::string& default_catalog_json();
const std::string& default_weather_csv(Season season);
const std::string& default_demand_csv();

SeasonProfiles default_season_profiles();
DemandProfile default_demand();

} // namespace memg
