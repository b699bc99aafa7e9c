#include "memg/environment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace memg {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDegPerRad = 180.0 / kPi;
} // namespace

void validate_weather_hour(const WeatherHour& hour) {
    if (hour.v_anemometer < 0.0)
        throw ValidationError("weather hour: v_anemometer must be >= 0");
    if (hour.g_horizontal < 0.0)
        throw ValidationError("weather hour: g_horizontal must be >= 0");
    if (hour.h0 < 0.0) throw ValidationError("weather hour: h0 must be >= 0");
    if (hour.theta_z < 0.0 || hour.theta_z > kPi)
        throw ValidationError("weather hour: theta_z must lie in [0, pi]");
}

double shear_wind_speed(double v_anemometer, double z_anemometer, double z_hub,
                        double alpha) {
    if (z_anemometer <= 0.0 || z_hub <= 0.0)
        throw DomainError("shear_wind_speed: heights must be > 0");
    if (v_anemometer < 0.0)
        throw DomainError("shear_wind_speed: wind speed must be >= 0");
    if (alpha < 0.0) throw DomainError("shear_wind_speed: alpha must be >= 0");
    return v_anemometer * std::pow(z_hub / z_anemometer, alpha);
}

double clearness_index(double g, double h0) {
    if (h0 <= 0.0) {
        if (g > 0.0)
            throw DomainError("clearness_index: positive irradiance with zero extraterrestrial radiation");
        return 0.0; // night
    }
    return g / h0;
}

double diffuse_fraction(double ci) {
    if (ci < 0.0) throw DomainError("diffuse_fraction: clearness index must be >= 0");
    if (ci < 0.21) return 0.995 - 0.081 * ci;
    if (ci <= 0.76)
        return 0.724 + 2.738 * ci - 8.32 * ci * ci + 4.967 * ci * ci * ci;
    return 0.18;
}

double air_mass(double theta_z) {
    if (theta_z < 0.0 || theta_z >= kPi / 2.0)
        throw DomainError("air_mass: zenith angle must lie in [0, pi/2)");
    double deg = theta_z * kDegPerRad;
    return 1.0 / (std::cos(theta_z) + 0.50572 * std::pow(96.07995 - deg, -1.6364));
}

double cell_temperature(double theta_a, double h_spa, double g_beta) {
    if (g_beta < 0.0) throw DomainError("cell_temperature: irradiance must be >= 0");
    return theta_a + h_spa * g_beta;
}

TiltedIrradiance tilted_irradiance(const WeatherHour& hour, double beta,
                                   double albedo, const IrradianceOptions& options) {
    if (beta < 0.0 || beta > kPi / 2.0)
        throw DomainError("tilted_irradiance: tilt must lie in [0, pi/2]");
    validate_weather_hour(hour);

    TiltedIrradiance out;
    const double g = hour.g_horizontal;
    if (g <= 0.0) return out; // night: skip the whole pipeline

    out.ci = clearness_index(g, hour.h0);
    out.f = diffuse_fraction(out.ci);
    out.f_mod = 1.0 - out.f * out.f;
    out.g_d = out.f * g;

    const double tilt_bracket = options.klucher_standard_tilt_term
                                    ? 0.5 * (1.0 + std::cos(beta))
                                    : 0.5 * (1.0 + std::cos(beta / 2.0));
    const double s_half = std::sin(beta / 2.0);
    const double horizon_brightening = 1.0 + out.f_mod * s_half * s_half * s_half;
    const double cos_theta = std::cos(hour.theta);
    const double sin_tz = std::sin(hour.theta_z);
    const double circumsolar =
        1.0 + out.f_mod * cos_theta * cos_theta * sin_tz * sin_tz * sin_tz;
    out.g_d_beta = out.g_d * tilt_bracket * horizon_brightening * circumsolar;

    const double beam_horizontal = g - out.g_d;
    const double cos_tz = std::cos(hour.theta_z);
    if (beam_horizontal > 0.0) {
        if (cos_tz <= options.cos_zenith_tolerance)
            throw DomainError("tilted_irradiance: sun at or below the horizon with nonzero beam radiation");
        out.g_b_beta = beam_horizontal * cos_theta / cos_tz;
    } else {
        out.g_b_beta = 0.0;
    }
    out.g_r_beta = albedo * g * (1.0 - std::cos(beta)) / 2.0;

    // Components are physical; clamp rounding-induced negatives at zero and
    // flag the occurrence for callers that want to warn about it.
    out.clamped = out.g_d_beta < 0.0 || out.g_b_beta < 0.0 || out.g_r_beta < 0.0;
    out.g_d_beta = std::max(0.0, out.g_d_beta);
    out.g_b_beta = std::max(0.0, out.g_b_beta);
    out.g_r_beta = std::max(0.0, out.g_r_beta);
    out.g_beta = out.g_d_beta + out.g_b_beta + out.g_r_beta;

    out.am = hour.theta_z < kPi / 2.0 ? air_mass(hour.theta_z) : 0.0;
    return out;
}

double pv_efficiency(double g_beta, double theta_cell, double am,
                     const SolarPhysics& coeffs) {
    if (g_beta < 0.0) throw DomainError("pv_efficiency: irradiance must be >= 0");
    if (g_beta == 0.0) return 0.0;
    const double g = g_beta / SolarPhysics::g_beta0;
    const double tc = theta_cell / SolarPhysics::theta_cell0;
    const double m = am / SolarPhysics::am0;
    const double irradiance_term = coeffs.q_spa * g + std::pow(g, coeffs.m_spa);
    const double ambient_term =
        1.0 + coeffs.r_spa * tc + coeffs.s_spa * m + std::pow(m, coeffs.u_spa);
    const double percent = coeffs.p_spa * irradiance_term * ambient_term;
    return std::clamp(percent / 100.0, 0.0, 1.0);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& origin, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(origin + ": line " + std::to_string(line_no) +
                         ": not a number: '" + s + "'");
    }
}

} // namespace

WeatherDay parse_weather_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(origin + ": empty weather file");
    auto header = split_csv_line(line);
    const std::vector<std::string> expected = {"hour",    "v_anemometer", "g_horizontal",
                                               "theta_a", "h0",           "theta",
                                               "theta_z"};
    if (header != expected)
        throw ParseError(origin + ": weather header must be hour,v_anemometer,g_horizontal,theta_a,h0,theta,theta_z");

    WeatherDay day;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 7)
            throw ParseError(origin + ": line " + std::to_string(line_no) +
                             ": expected 7 fields");
        WeatherHour h;
        int hour_idx = static_cast<int>(parse_double(fields[0], origin, line_no));
        if (hour_idx != static_cast<int>(day.size()) + 1)
            throw ParseError(origin + ": line " + std::to_string(line_no) +
                             ": hours must run 1..24 in order");
        h.v_anemometer = parse_double(fields[1], origin, line_no);
        h.g_horizontal = parse_double(fields[2], origin, line_no);
        h.theta_a = parse_double(fields[3], origin, line_no);
        h.h0 = parse_double(fields[4], origin, line_no);
        h.theta = parse_double(fields[5], origin, line_no) / kDegPerRad;
        h.theta_z = parse_double(fields[6], origin, line_no) / kDegPerRad;
        validate_weather_hour(h);
        day.push_back(h);
    }
    if (day.size() != 24)
        throw ParseError(origin + ": weather profile must have exactly 24 rows, got " +
                         std::to_string(day.size()));
    return day;
}

WeatherDay load_weather_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open weather file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_weather_csv(buf.str(), "'" + path + "'");
}

std::string serialize_weather_csv(const WeatherDay& day) {
    std::ostringstream out;
    out << "hour,v_anemometer,g_horizontal,theta_a,h0,theta,theta_z\n";
    out.precision(10);
    for (std::size_t i = 0; i < day.size(); ++i) {
        const auto& h = day[i];
        out << (i + 1) << ',' << h.v_anemometer << ',' << h.g_horizontal << ','
            << h.theta_a << ',' << h.h0 << ',' << h.theta * kDegPerRad << ','
            << h.theta_z * kDegPerRad << '\n';
    }
    return out.str();
}

} // namespace memg
