#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "memg/errors.hpp"
#include "memg/resources.hpp"

namespace memg {

enum class EquipmentKind : int {
    WindFarm,
    SolarArray,
    BiomassCC,
    BiomassFired,
    Conventional,
    CHP,
    IGCC,
    Storage,
    HeatPump,
    P2G,
};

const char* kind_name(EquipmentKind k);
EquipmentKind kind_from_name(const std::string& name);

// Wind farm: identical turbines behind one shear/profile configuration.
// The rotor diameter is the sizing variable; rated power follows from it.
struct WindPhysics {
    double v_cut_in = 3.0;   // m/s
    double v_rated = 13.0;   // m/s
    double v_cut_out = 25.0; // m/s
    double cp = 0.45;        // rotor efficiency, < Betz limit
    double rho_air = 1.225;  // kg/m^3
    double z_hub = 80.0;     // m
    double z_anemometer = 10.0; // m
    double alpha = 1.0 / 7.0;   // shear friction coefficient
    int turbines_per_farm = 10;
};

// Tilted PV array. Efficiency-curve coefficients are the provisional
// defaults documented in core/data/README; the curve shape is
//   eta(%) = p*[q*g + g^m]*[1 + r*tc + s*am + am^u]
// with g, tc, am normalised by the standard-condition constants below.
struct SolarPhysics {
    double area = 1.0e5;      // m^2
    double eta_inverter = 0.95;
    double p_spa = 4.7;
    double q_spa = 1.0;
    double m_spa = 0.4;
    double r_spa = -0.05;
    double s_spa = -0.02;
    double u_spa = -0.5;
    double h_spa = 0.028;     // K*m^2/W cell-temperature rise
    double albedo = 0.2;
    // standard-condition constants (fixed, not configurable)
    static constexpr double g_beta0 = 1000.0;    // W/m^2
    static constexpr double theta_cell0 = 25.0;  // degC
    static constexpr double am0 = 1.5;
    static constexpr double tilt_min_deg = 20.0;
    static constexpr double tilt_max_deg = 70.0;
};

// Conventional (valve-point) generator: cost c*p^2 + b*p + a + |d*sin(e*(p_min - p))|,
// emission ef*(h*p^2 + g*p + f).
struct ConventionalPhysics {
    double a = 200.0;
    double b = 35.0;
    double c = 0.08;
    double d = 50.0;
    double e = 0.25;
    double ef = 1.0;
    double f_co2 = 0.8;
    double g_co2 = 0.85;
    double h_co2 = 0.0012;
    double p_min = 10.0; // MW
};

struct ChpCorner {
    double power = 0.0; // MW
    double heat = 0.0;  // MW
};

// Tetragonal feasible operation region with corners A (max power, zero
// heat), B, C, D (min power, zero heat), plus the quadratic fuel-cost
// coefficients.
struct ChpPhysics {
    ChpCorner a, b, c, d;
    double kk = 0.0, ll = 0.0, ii = 0.0; // const, p, p^2
    double jj = 0.0, yy = 0.0, zz = 0.0; // h, h^2, h*p
};

// Power-to-gas train: SOEC electrolyzer at fixed rated draw feeding a
// Sabatier methanation reactor bounded by thermodynamic equilibrium.
struct P2GPhysics {
    double soec_rated_power = 10.0; // MW
    double t_in = 573.15;           // K
    double pp_in = 20.0;            // bar
    // molar inlet flows, mol/h: CO2, H2, H2O, CH4
    std::array<double, 4> n_in = {31000.0, 124000.0, 0.0, 0.0};
    // ln K_eq = A/T + B*ln T + C*T + D
    std::array<double, 4> keq_coeffs = {19846.0, 0.0, 0.0, -20.0};
    double cc = 45.0;            // $/t CO2 capture operating cost
    double h2_per_mwh = 0.025;   // t H2 per MWh electrolyzer input
    double co2_per_t_sng = 2.744; // t CO2 per t SNG
    double sng_yield = 1.0;       // t SNG per t CH4 after upgrading
};

struct StoragePhysics {
    double q_min = 0.0;   // charge/discharge lower fraction of rated power
    double q_max = 1.0;   // upper fraction
    double soc_lo = 0.20; // SOC envelope, fraction of capacity
    double soc_hi = 0.80;
    // Initial stored energy in MWh; a non-positive value means "midpoint
    // of the SOC envelope at the dispatched capacity" (capacity is a
    // decision variable, so a fixed MWh default cannot be validated here).
    double soc_init = -1.0;
};

// Linear dispatchable generator (IGCC, biomass CC, biomass-fired): fuel
// burned at a fixed rate and purchased at the configured resource price.
struct LinearGenPhysics {
    Resource fuel = Resource::Biomass;
    double fuel_per_mwh = 1.0; // t fuel per MWh electricity
};

struct HeatPumpPhysics {
    double cop = 3.0; // MW heat per MW electricity
};

using Physics = std::variant<WindPhysics, SolarPhysics, ConventionalPhysics,
                             ChpPhysics, P2GPhysics, StoragePhysics,
                             LinearGenPhysics, HeatPumpPhysics>;

// One catalog row: cost/rating data straight from the candidate table,
// plus the kind-specific physics block.
struct EquipmentSpec {
    std::string id;
    EquipmentKind kind = EquipmentKind::Conventional;
    double rp_min = 0.0;  // MW
    double rp_max = 0.0;  // MW
    double cap_min = 0.0; // MWh, storage only
    double cap_max = 0.0; // MWh, storage only
    double psi0 = 0.0;    // installation M$/MW
    double gamma0 = 0.0;  // fixed installation $
    double omega0 = 0.0;  // storage installation $/MWh
    double psik = 0.0;    // maintenance $/MW/yr
    double gammak = 0.0;  // fixed maintenance $/yr
    double omegak = 0.0;  // storage maintenance $/MWh/yr
    double co2_per_mwh = 0.0; // t/MWh for constant-emission devices
    double p_min_frac = 0.0;  // committed minimum-load fraction of rated power
    double p_max_frac = 1.0;  // maximum-load fraction of rated power
    Physics physics;

    const WindPhysics& wind() const { return std::get<WindPhysics>(physics); }
    const SolarPhysics& solar() const { return std::get<SolarPhysics>(physics); }
    const ConventionalPhysics& conventional() const { return std::get<ConventionalPhysics>(physics); }
    const ChpPhysics& chp() const { return std::get<ChpPhysics>(physics); }
    const P2GPhysics& p2g() const { return std::get<P2GPhysics>(physics); }
    const StoragePhysics& storage() const { return std::get<StoragePhysics>(physics); }
    const LinearGenPhysics& linear_gen() const { return std::get<LinearGenPhysics>(physics); }
    const HeatPumpPhysics& heat_pump() const { return std::get<HeatPumpPhysics>(physics); }

    // Electricity generators whose operating power counts toward the
    // carbon cap (G u WTF u SPA): everything except storage, heat pump
    // and the P2G load.
    bool is_capped_generator() const {
        return kind != EquipmentKind::Storage && kind != EquipmentKind::HeatPump &&
               kind != EquipmentKind::P2G;
    }
};

using Catalog = std::vector<EquipmentSpec>;

// Throws ValidationError naming the field and spec id on the first
// violated invariant.
void validate_spec(const EquipmentSpec& spec);
void validate_catalog(const Catalog& catalog);

// Loads and validates a JSON catalog file (top-level array of specs).
Catalog load_catalog(const std::string& path);

// Parses a catalog from an in-memory JSON string; load_catalog is this
// plus file I/O.
Catalog parse_catalog(const std::string& json_text, const std::string& origin);

// Serialises a catalog back to the file schema; parse(serialize(c)) == c.
std::string serialize_catalog(const Catalog& catalog);

// The bundled candidate-equipment table with provisional physics blocks;
// identical to load_catalog on core/data/default_catalog.json.
Catalog default_catalog();

std::optional<std::size_t> find_spec(const Catalog& catalog, const std::string& id);

bool operator==(const WindPhysics&, const WindPhysics&);
bool operator==(const SolarPhysics&, const SolarPhysics&);
bool operator==(const ConventionalPhysics&, const ConventionalPhysics&);
bool operator==(const ChpCorner&, const ChpCorner&);
bool operator==(const ChpPhysics&, const ChpPhysics&);
bool operator==(const P2GPhysics&, const P2GPhysics&);
bool operator==(const StoragePhysics&, const StoragePhysics&);
bool operator==(const LinearGenPhysics&, const LinearGenPhysics&);
bool operator==(const HeatPumpPhysics&, const HeatPumpPhysics&);
bool operator==(const EquipmentSpec&, const EquipmentSpec&);

} // namespace memg
