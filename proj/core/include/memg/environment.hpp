#pragma once

#include <vector>

#include "memg/catalog.hpp"
#include "memg/errors.hpp"

namespace memg {

// One hour of measured weather plus the solar-geometry columns consumed
// as data (no ephemeris is computed here). Angles in radians.
struct WeatherHour {
    double v_anemometer = 0.0; // m/s at anemometer height
    double g_horizontal = 0.0; // W/m^2 global horizontal irradiance
    double theta_a = 0.0;      // degC ambient temperature
    double h0 = 0.0;           // W/m^2 extraterrestrial radiation
    // Some sources label this column a declination angle, but the tilted
    // decomposition consumes it as the beam-incidence angle on the plane;
    // the column name is kept as-is.
    double theta = 0.0;   // rad
    double theta_z = 0.0; // rad zenith angle
};

void validate_weather_hour(const WeatherHour& hour);

// Decomposed irradiance on the tilted plane; g_beta is the exact sum of
// the three components.
struct TiltedIrradiance {
    double ci = 0.0;       // clearness index
    double f = 0.0;        // diffuse fraction
    double f_mod = 0.0;    // F = 1 - f^2
    double g_d = 0.0;      // W/m^2 diffuse horizontal
    double g_d_beta = 0.0; // W/m^2 tilted diffuse
    double g_b_beta = 0.0; // W/m^2 tilted beam
    double g_r_beta = 0.0; // W/m^2 tilted reflected
    double g_beta = 0.0;   // W/m^2 total tilted
    double am = 0.0;       // air mass
    bool clamped = false;  // some component was lifted to zero from below
};

struct IrradianceOptions {
    // The tilted-diffuse bracket is implemented as typeset,
    // 0.5*(1 + cos(beta/2)); this switch selects the standard Klucher
    // form 0.5*(1 + cos(beta)) instead.
    bool klucher_standard_tilt_term = false;
    // cos(theta_z) at or below this is treated as sun at the horizon.
    double cos_zenith_tolerance = 1e-9;
};

// v * (z_hub/z_anemometer)^alpha
double shear_wind_speed(double v_anemometer, double z_anemometer, double z_hub,
                        double alpha);

// G/H0, with 0/0 read as night (returns 0).
double clearness_index(double g, double h0);

// Piecewise diffuse fraction: linear below CI 0.21, cubic on [0.21, 0.76],
// constant 0.18 above.
double diffuse_fraction(double ci);

// Kasten-Young air mass; domain is zenith angle in [0, pi/2).
double air_mass(double theta_z);

// theta_a + h_spa * g_beta
double cell_temperature(double theta_a, double h_spa, double g_beta);

// Full horizontal-to-tilted decomposition. Night (G = 0) short-circuits
// to all zeros. Components are clamped at 0 from below.
TiltedIrradiance tilted_irradiance(const WeatherHour& hour, double beta,
                                   double albedo,
                                   const IrradianceOptions& options = {});

// Cell efficiency as a fraction in [0, 1]; the underlying curve yields
// percent and is scaled down here. Zero irradiance gives zero.
double pv_efficiency(double g_beta, double theta_cell, double am,
                     const SolarPhysics& coeffs);

using WeatherDay = std::vector<WeatherHour>; // exactly 24 entries

// CSV with header hour,v_anemometer,g_horizontal,theta_a,h0,theta,theta_z;
// angles in degrees in the file, radians in memory.
WeatherDay load_weather_csv(const std::string& path);
WeatherDay parse_weather_csv(const std::string& text, const std::string& origin);
std::string serialize_weather_csv(const WeatherDay& day);

} // namespace memg
