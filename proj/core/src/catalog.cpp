#include "memg/catalog.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "memg/defaults.hpp"

namespace memg {

using nlohmann::json;

namespace {

constexpr double kBetzLimit = 0.593;

[[noreturn]] void invalid(const std::string& id, const std::string& field,
                          const std::string& why) {
    throw ValidationError("catalog spec '" + id + "': field '" + field + "' " + why);
}

double cross_z(const ChpCorner& o, const ChpCorner& p, const ChpCorner& q) {
    return (p.heat - o.heat) * (q.power - o.power) -
           (p.power - o.power) * (q.heat - o.heat);
}

void validate_physics(const EquipmentSpec& spec) {
    const std::string& id = spec.id;
    switch (spec.kind) {
    case EquipmentKind::WindFarm: {
        if (!std::holds_alternative<WindPhysics>(spec.physics))
            invalid(id, "physics", "must be a wind block for kind WindFarm");
        const auto& w = spec.wind();
        if (!(0.0 < w.v_cut_in && w.v_cut_in < w.v_rated && w.v_rated < w.v_cut_out))
            invalid(id, "v_cut_in/v_rated/v_cut_out", "must satisfy 0 < cut-in < rated < cut-out");
        if (!(w.cp > 0.0 && w.cp < kBetzLimit))
            invalid(id, "cp", "must lie in (0, 0.593)");
        if (w.rho_air <= 0.0) invalid(id, "rho_air", "must be > 0");
        if (w.z_hub <= 0.0 || w.z_anemometer <= 0.0)
            invalid(id, "z_hub/z_anemometer", "must be > 0");
        if (w.alpha < 0.0) invalid(id, "alpha", "must be >= 0");
        if (w.turbines_per_farm < 1) invalid(id, "turbines_per_farm", "must be >= 1");
        break;
    }
    case EquipmentKind::SolarArray: {
        if (!std::holds_alternative<SolarPhysics>(spec.physics))
            invalid(id, "physics", "must be a solar block for kind SolarArray");
        const auto& s = spec.solar();
        if (s.area <= 0.0) invalid(id, "area", "must be > 0");
        if (!(s.eta_inverter > 0.0 && s.eta_inverter <= 1.0))
            invalid(id, "eta_inverter", "must lie in (0, 1]");
        if (s.albedo < 0.0 || s.albedo > 1.0) invalid(id, "albedo", "must lie in [0, 1]");
        break;
    }
    case EquipmentKind::Conventional: {
        if (!std::holds_alternative<ConventionalPhysics>(spec.physics))
            invalid(id, "physics", "must be a conventional block for kind Conventional");
        const auto& c = spec.conventional();
        if (c.c < 0.0) invalid(id, "c", "must be >= 0 (convex quadratic base)");
        if (c.e < 0.0) invalid(id, "e", "must be >= 0");
        if (c.p_min < 0.0) invalid(id, "p_min", "must be >= 0");
        break;
    }
    case EquipmentKind::CHP: {
        if (!std::holds_alternative<ChpPhysics>(spec.physics))
            invalid(id, "physics", "must be a chp block for kind CHP");
        const auto& c = spec.chp();
        const ChpCorner corners[4] = {c.a, c.b, c.c, c.d};
        for (const auto& corner : corners) {
            if (corner.power < 0.0 || corner.heat < 0.0)
                invalid(id, "corners", "corner powers and heats must be >= 0");
        }
        // Convexity with no three collinear: every consecutive triple must
        // turn in the same strict direction.
        double sign = 0.0;
        for (int i = 0; i < 4; ++i) {
            double cz = cross_z(corners[i], corners[(i + 1) % 4], corners[(i + 2) % 4]);
            if (std::abs(cz) < 1e-12)
                invalid(id, "corners", "must form a non-degenerate quadrilateral (three corners are collinear)");
            if (sign == 0.0)
                sign = cz > 0 ? 1.0 : -1.0;
            else if (sign * cz < 0.0)
                invalid(id, "corners", "must form a convex quadrilateral");
        }
        // The edge constraints divide by these heat differences.
        if (std::abs(c.d.heat - c.c.heat) < 1e-12 || std::abs(c.a.heat - c.b.heat) < 1e-12 ||
            std::abs(c.b.heat - c.c.heat) < 1e-12)
            invalid(id, "corners", "edge corner pairs (D,C), (A,B), (B,C) must differ in heat");
        break;
    }
    case EquipmentKind::P2G: {
        if (!std::holds_alternative<P2GPhysics>(spec.physics))
            invalid(id, "physics", "must be a p2g block for kind P2G");
        const auto& p = spec.p2g();
        if (p.soec_rated_power <= 0.0) invalid(id, "soec_rated_power", "must be > 0");
        if (p.t_in <= 0.0) invalid(id, "t_in", "must be > 0");
        if (p.pp_in <= 0.0) invalid(id, "pp_in", "must be > 0");
        for (double n : p.n_in)
            if (n < 0.0) invalid(id, "n_in", "must be >= 0 componentwise");
        break;
    }
    case EquipmentKind::Storage: {
        if (!std::holds_alternative<StoragePhysics>(spec.physics))
            invalid(id, "physics", "must be a storage block for kind Storage");
        const auto& s = spec.storage();
        if (!(0.0 <= s.q_min && s.q_min < s.q_max && s.q_max <= 1.0))
            invalid(id, "q_min/q_max", "must satisfy 0 <= q_min < q_max <= 1");
        if (!(0.0 <= s.soc_lo && s.soc_lo < s.soc_hi && s.soc_hi <= 1.0))
            invalid(id, "soc_lo/soc_hi", "must satisfy 0 <= soc_lo < soc_hi <= 1");
        break;
    }
    case EquipmentKind::HeatPump: {
        if (!std::holds_alternative<HeatPumpPhysics>(spec.physics))
            invalid(id, "physics", "must be a heat_pump block for kind HeatPump");
        if (spec.heat_pump().cop <= 0.0) invalid(id, "cop", "must be > 0");
        break;
    }
    case EquipmentKind::BiomassCC:
    case EquipmentKind::BiomassFired:
    case EquipmentKind::IGCC: {
        if (!std::holds_alternative<LinearGenPhysics>(spec.physics))
            invalid(id, "physics", "must be a linear_gen block for kind " +
                                      std::string(kind_name(spec.kind)));
        const auto& l = spec.linear_gen();
        if (l.fuel != Resource::Coal && l.fuel != Resource::Biomass)
            invalid(id, "fuel", "must be coal or biomass");
        if (l.fuel_per_mwh < 0.0) invalid(id, "fuel_per_mwh", "must be >= 0");
        break;
    }
    }
}

} // namespace

const char* kind_name(EquipmentKind k) {
    switch (k) {
    case EquipmentKind::WindFarm: return "WindFarm";
    case EquipmentKind::SolarArray: return "SolarArray";
    case EquipmentKind::BiomassCC: return "BiomassCC";
    case EquipmentKind::BiomassFired: return "BiomassFired";
    case EquipmentKind::Conventional: return "Conventional";
    case EquipmentKind::CHP: return "CHP";
    case EquipmentKind::IGCC: return "IGCC";
    case EquipmentKind::Storage: return "Storage";
    case EquipmentKind::HeatPump: return "HeatPump";
    case EquipmentKind::P2G: return "P2G";
    }
    return "?";
}

EquipmentKind kind_from_name(const std::string& name) {
    static const std::array<EquipmentKind, 10> kinds = {
        EquipmentKind::WindFarm,  EquipmentKind::SolarArray,
        EquipmentKind::BiomassCC, EquipmentKind::BiomassFired,
        EquipmentKind::Conventional, EquipmentKind::CHP,
        EquipmentKind::IGCC,      EquipmentKind::Storage,
        EquipmentKind::HeatPump,  EquipmentKind::P2G};
    for (EquipmentKind k : kinds)
        if (name == kind_name(k)) return k;
    throw ParseError("unknown equipment kind: " + name);
}

void validate_spec(const EquipmentSpec& spec) {
    if (spec.id.empty()) throw ValidationError("catalog spec with empty id");
    if (spec.rp_min > spec.rp_max)
        invalid(spec.id, "rp_min/rp_max", "must satisfy rp_min <= rp_max");
    if (spec.cap_min > spec.cap_max)
        invalid(spec.id, "cap_min/cap_max", "must satisfy cap_min <= cap_max");
    if (spec.rp_min < 0.0) invalid(spec.id, "rp_min", "must be >= 0");
    if (spec.cap_min < 0.0) invalid(spec.id, "cap_min", "must be >= 0");
    const struct { const char* name; double value; } costs[] = {
        {"psi0", spec.psi0},   {"gamma0", spec.gamma0}, {"omega0", spec.omega0},
        {"psik", spec.psik},   {"gammak", spec.gammak}, {"omegak", spec.omegak},
    };
    for (const auto& c : costs)
        if (c.value < 0.0) invalid(spec.id, c.name, "must be >= 0");
    if (spec.co2_per_mwh < 0.0) invalid(spec.id, "co2_per_mwh", "must be >= 0");
    if (!(0.0 <= spec.p_min_frac && spec.p_min_frac <= spec.p_max_frac && spec.p_max_frac <= 1.0))
        invalid(spec.id, "p_min_frac/p_max_frac", "must satisfy 0 <= min <= max <= 1");
    validate_physics(spec);
}

void validate_catalog(const Catalog& catalog) {
    std::set<std::string> seen;
    for (const auto& spec : catalog) {
        validate_spec(spec);
        if (!seen.insert(spec.id).second)
            throw ValidationError("catalog contains duplicate id '" + spec.id + "'");
    }
}

std::optional<std::size_t> find_spec(const Catalog& catalog, const std::string& id) {
    for (std::size_t i = 0; i < catalog.size(); ++i)
        if (catalog[i].id == id) return i;
    return std::nullopt;
}

namespace {

double get_num(const json& j, const std::string& key, const std::string& id,
               std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ParseError("catalog spec '" + id + "': missing field '" + key + "'");
    }
    if (!j.at(key).is_number())
        throw ParseError("catalog spec '" + id + "': field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

Physics parse_physics(EquipmentKind kind, const json& p, const std::string& id) {
    switch (kind) {
    case EquipmentKind::WindFarm: {
        WindPhysics w;
        w.v_cut_in = get_num(p, "v_cut_in", id);
        w.v_rated = get_num(p, "v_rated", id);
        w.v_cut_out = get_num(p, "v_cut_out", id);
        w.cp = get_num(p, "cp", id);
        w.rho_air = get_num(p, "rho_air", id);
        w.z_hub = get_num(p, "z_hub", id);
        w.z_anemometer = get_num(p, "z_anemometer", id);
        w.alpha = get_num(p, "alpha", id);
        w.turbines_per_farm = static_cast<int>(get_num(p, "turbines_per_farm", id));
        return w;
    }
    case EquipmentKind::SolarArray: {
        SolarPhysics s;
        s.area = get_num(p, "area", id);
        s.eta_inverter = get_num(p, "eta_inverter", id);
        s.p_spa = get_num(p, "p_spa", id);
        s.q_spa = get_num(p, "q_spa", id);
        s.m_spa = get_num(p, "m_spa", id);
        s.r_spa = get_num(p, "r_spa", id);
        s.s_spa = get_num(p, "s_spa", id);
        s.u_spa = get_num(p, "u_spa", id);
        s.h_spa = get_num(p, "h_spa", id);
        s.albedo = get_num(p, "albedo", id);
        return s;
    }
    case EquipmentKind::Conventional: {
        ConventionalPhysics c;
        c.a = get_num(p, "a", id);
        c.b = get_num(p, "b", id);
        c.c = get_num(p, "c", id);
        c.d = get_num(p, "d", id);
        c.e = get_num(p, "e", id);
        c.ef = get_num(p, "ef", id);
        c.f_co2 = get_num(p, "f_co2", id);
        c.g_co2 = get_num(p, "g_co2", id);
        c.h_co2 = get_num(p, "h_co2", id);
        c.p_min = get_num(p, "p_min", id);
        return c;
    }
    case EquipmentKind::CHP: {
        ChpPhysics c;
        auto corner = [&](const char* key) {
            if (!p.contains(key) || !p.at(key).is_array() || p.at(key).size() != 2)
                throw ParseError("catalog spec '" + id + "': corner '" + key +
                                 "' must be a [power, heat] pair");
            ChpCorner out;
            out.power = p.at(key).at(0).get<double>();
            out.heat = p.at(key).at(1).get<double>();
            return out;
        };
        c.a = corner("corner_a");
        c.b = corner("corner_b");
        c.c = corner("corner_c");
        c.d = corner("corner_d");
        c.kk = get_num(p, "kk", id);
        c.ll = get_num(p, "ll", id);
        c.ii = get_num(p, "ii", id);
        c.jj = get_num(p, "jj", id);
        c.yy = get_num(p, "yy", id);
        c.zz = get_num(p, "zz", id);
        return c;
    }
    case EquipmentKind::P2G: {
        P2GPhysics g;
        g.soec_rated_power = get_num(p, "soec_rated_power", id);
        g.t_in = get_num(p, "t_in", id);
        g.pp_in = get_num(p, "pp_in", id);
        auto vec4 = [&](const char* key, std::array<double, 4>& out) {
            if (!p.contains(key) || !p.at(key).is_array() || p.at(key).size() != 4)
                throw ParseError("catalog spec '" + id + "': field '" + key +
                                 "' must be an array of 4 numbers");
            for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = p.at(key).at(i).get<double>();
        };
        vec4("n_in", g.n_in);
        vec4("keq_coeffs", g.keq_coeffs);
        g.cc = get_num(p, "cc", id);
        g.h2_per_mwh = get_num(p, "h2_per_mwh", id);
        g.co2_per_t_sng = get_num(p, "co2_per_t_sng", id);
        g.sng_yield = get_num(p, "sng_yield", id, 1.0);
        return g;
    }
    case EquipmentKind::Storage: {
        StoragePhysics s;
        s.q_min = get_num(p, "q_min", id, 0.0);
        s.q_max = get_num(p, "q_max", id, 1.0);
        s.soc_lo = get_num(p, "soc_lo", id, 0.20);
        s.soc_hi = get_num(p, "soc_hi", id, 0.80);
        s.soc_init = get_num(p, "soc_init", id, -1.0);
        return s;
    }
    case EquipmentKind::HeatPump: {
        HeatPumpPhysics h;
        h.cop = get_num(p, "cop", id);
        return h;
    }
    case EquipmentKind::BiomassCC:
    case EquipmentKind::BiomassFired:
    case EquipmentKind::IGCC: {
        LinearGenPhysics l;
        if (!p.contains("fuel") || !p.at("fuel").is_string())
            throw ParseError("catalog spec '" + id + "': missing 'fuel' in linear_gen physics");
        l.fuel = resource_from_name(p.at("fuel").get<std::string>());
        l.fuel_per_mwh = get_num(p, "fuel_per_mwh", id);
        return l;
    }
    }
    throw ParseError("catalog spec '" + id + "': unhandled kind");
}

json physics_to_json(const EquipmentSpec& spec) {
    json p = json::object();
    switch (spec.kind) {
    case EquipmentKind::WindFarm: {
        const auto& w = spec.wind();
        p["v_cut_in"] = w.v_cut_in;
        p["v_rated"] = w.v_rated;
        p["v_cut_out"] = w.v_cut_out;
        p["cp"] = w.cp;
        p["rho_air"] = w.rho_air;
        p["z_hub"] = w.z_hub;
        p["z_anemometer"] = w.z_anemometer;
        p["alpha"] = w.alpha;
        p["turbines_per_farm"] = w.turbines_per_farm;
        break;
    }
    case EquipmentKind::SolarArray: {
        const auto& s = spec.solar();
        p["area"] = s.area;
        p["eta_inverter"] = s.eta_inverter;
        p["p_spa"] = s.p_spa;
        p["q_spa"] = s.q_spa;
        p["m_spa"] = s.m_spa;
        p["r_spa"] = s.r_spa;
        p["s_spa"] = s.s_spa;
        p["u_spa"] = s.u_spa;
        p["h_spa"] = s.h_spa;
        p["albedo"] = s.albedo;
        break;
    }
    case EquipmentKind::Conventional: {
        const auto& c = spec.conventional();
        p["a"] = c.a;
        p["b"] = c.b;
        p["c"] = c.c;
        p["d"] = c.d;
        p["e"] = c.e;
        p["ef"] = c.ef;
        p["f_co2"] = c.f_co2;
        p["g_co2"] = c.g_co2;
        p["h_co2"] = c.h_co2;
        p["p_min"] = c.p_min;
        break;
    }
    case EquipmentKind::CHP: {
        const auto& c = spec.chp();
        p["corner_a"] = {c.a.power, c.a.heat};
        p["corner_b"] = {c.b.power, c.b.heat};
        p["corner_c"] = {c.c.power, c.c.heat};
        p["corner_d"] = {c.d.power, c.d.heat};
        p["kk"] = c.kk;
        p["ll"] = c.ll;
        p["ii"] = c.ii;
        p["jj"] = c.jj;
        p["yy"] = c.yy;
        p["zz"] = c.zz;
        break;
    }
    case EquipmentKind::P2G: {
        const auto& g = spec.p2g();
        p["soec_rated_power"] = g.soec_rated_power;
        p["t_in"] = g.t_in;
        p["pp_in"] = g.pp_in;
        p["n_in"] = g.n_in;
        p["keq_coeffs"] = g.keq_coeffs;
        p["cc"] = g.cc;
        p["h2_per_mwh"] = g.h2_per_mwh;
        p["co2_per_t_sng"] = g.co2_per_t_sng;
        p["sng_yield"] = g.sng_yield;
        break;
    }
    case EquipmentKind::Storage: {
        const auto& s = spec.storage();
        p["q_min"] = s.q_min;
        p["q_max"] = s.q_max;
        p["soc_lo"] = s.soc_lo;
        p["soc_hi"] = s.soc_hi;
        p["soc_init"] = s.soc_init;
        break;
    }
    case EquipmentKind::HeatPump: {
        p["cop"] = spec.heat_pump().cop;
        break;
    }
    case EquipmentKind::BiomassCC:
    case EquipmentKind::BiomassFired:
    case EquipmentKind::IGCC: {
        const auto& l = spec.linear_gen();
        p["fuel"] = resource_name(l.fuel);
        p["fuel_per_mwh"] = l.fuel_per_mwh;
        break;
    }
    }
    return p;
}

EquipmentSpec parse_spec(const json& j) {
    if (!j.is_object()) throw ParseError("catalog entry must be an object");
    if (!j.contains("id") || !j.at("id").is_string())
        throw ParseError("catalog entry missing string 'id'");
    EquipmentSpec spec;
    spec.id = j.at("id").get<std::string>();
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw ParseError("catalog spec '" + spec.id + "': missing string 'kind'");
    spec.kind = kind_from_name(j.at("kind").get<std::string>());
    spec.rp_min = get_num(j, "rp_min", spec.id);
    spec.rp_max = get_num(j, "rp_max", spec.id);
    spec.cap_min = get_num(j, "cap_min", spec.id, 0.0);
    spec.cap_max = get_num(j, "cap_max", spec.id, 0.0);
    spec.psi0 = get_num(j, "psi0", spec.id, 0.0);
    spec.gamma0 = get_num(j, "gamma0", spec.id, 0.0);
    spec.omega0 = get_num(j, "omega0", spec.id, 0.0);
    spec.psik = get_num(j, "psik", spec.id, 0.0);
    spec.gammak = get_num(j, "gammak", spec.id, 0.0);
    spec.omegak = get_num(j, "omegak", spec.id, 0.0);
    spec.co2_per_mwh = get_num(j, "co2_per_mwh", spec.id, 0.0);
    spec.p_min_frac = get_num(j, "p_min_frac", spec.id, 0.0);
    spec.p_max_frac = get_num(j, "p_max_frac", spec.id, 1.0);
    if (!j.contains("physics") || !j.at("physics").is_object())
        throw ParseError("catalog spec '" + spec.id + "': missing 'physics' object");
    spec.physics = parse_physics(spec.kind, j.at("physics"), spec.id);
    return spec;
}

} // namespace

Catalog parse_catalog(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ParseError("failed to parse catalog " + origin + ": " + e.what());
    }
    if (!doc.is_array())
        throw ParseError("catalog " + origin + ": top level must be an array of specs");
    Catalog catalog;
    catalog.reserve(doc.size());
    for (const auto& entry : doc) catalog.push_back(parse_spec(entry));
    validate_catalog(catalog);
    return catalog;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), "'" + path + "'");
}

std::string serialize_catalog(const Catalog& catalog) {
    json doc = json::array();
    for (const auto& spec : catalog) {
        json j = json::object();
        j["id"] = spec.id;
        j["kind"] = kind_name(spec.kind);
        j["rp_min"] = spec.rp_min;
        j["rp_max"] = spec.rp_max;
        j["cap_min"] = spec.cap_min;
        j["cap_max"] = spec.cap_max;
        j["psi0"] = spec.psi0;
        j["gamma0"] = spec.gamma0;
        j["omega0"] = spec.omega0;
        j["psik"] = spec.psik;
        j["gammak"] = spec.gammak;
        j["omegak"] = spec.omegak;
        j["co2_per_mwh"] = spec.co2_per_mwh;
        j["p_min_frac"] = spec.p_min_frac;
        j["p_max_frac"] = spec.p_max_frac;
        j["physics"] = physics_to_json(spec);
        doc.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

Catalog default_catalog() {
    return parse_catalog(default_catalog_json(), "<bundled default>");
}

bool operator==(const WindPhysics& a, const WindPhysics& b) {
    return a.v_cut_in == b.v_cut_in && a.v_rated == b.v_rated &&
           a.v_cut_out == b.v_cut_out && a.cp == b.cp && a.rho_air == b.rho_air &&
           a.z_hub == b.z_hub && a.z_anemometer == b.z_anemometer &&
           a.alpha == b.alpha && a.turbines_per_farm == b.turbines_per_farm;
}
bool operator==(const SolarPhysics& a, const SolarPhysics& b) {
    return a.area == b.area && a.eta_inverter == b.eta_inverter &&
           a.p_spa == b.p_spa && a.q_spa == b.q_spa && a.m_spa == b.m_spa &&
           a.r_spa == b.r_spa && a.s_spa == b.s_spa && a.u_spa == b.u_spa &&
           a.h_spa == b.h_spa && a.albedo == b.albedo;
}
bool operator==(const ConventionalPhysics& a, const ConventionalPhysics& b) {
    return a.a == b.a && a.b == b.b && a.c == b.c && a.d == b.d && a.e == b.e &&
           a.ef == b.ef && a.f_co2 == b.f_co2 && a.g_co2 == b.g_co2 &&
           a.h_co2 == b.h_co2 && a.p_min == b.p_min;
}
bool operator==(const ChpCorner& a, const ChpCorner& b) {
    return a.power == b.power && a.heat == b.heat;
}
bool operator==(const ChpPhysics& a, const ChpPhysics& b) {
    return a.a == b.a && a.b == b.b && a.c == b.c && a.d == b.d && a.kk == b.kk &&
           a.ll == b.ll && a.ii == b.ii && a.jj == b.jj && a.yy == b.yy && a.zz == b.zz;
}
bool operator==(const P2GPhysics& a, const P2GPhysics& b) {
    return a.soec_rated_power == b.soec_rated_power && a.t_in == b.t_in &&
           a.pp_in == b.pp_in && a.n_in == b.n_in && a.keq_coeffs == b.keq_coeffs &&
           a.cc == b.cc && a.h2_per_mwh == b.h2_per_mwh &&
           a.co2_per_t_sng == b.co2_per_t_sng && a.sng_yield == b.sng_yield;
}
bool operator==(const StoragePhysics& a, const StoragePhysics& b) {
    return a.q_min == b.q_min && a.q_max == b.q_max && a.soc_lo == b.soc_lo &&
           a.soc_hi == b.soc_hi && a.soc_init == b.soc_init;
}
bool operator==(const LinearGenPhysics& a, const LinearGenPhysics& b) {
    return a.fuel == b.fuel && a.fuel_per_mwh == b.fuel_per_mwh;
}
bool operator==(const HeatPumpPhysics& a, const HeatPumpPhysics& b) {
    return a.cop == b.cop;
}
bool operator==(const EquipmentSpec& a, const EquipmentSpec& b) {
    return a.id == b.id && a.kind == b.kind && a.rp_min == b.rp_min &&
           a.rp_max == b.rp_max && a.cap_min == b.cap_min && a.cap_max == b.cap_max &&
           a.psi0 == b.psi0 && a.gamma0 == b.gamma0 && a.omega0 == b.omega0 &&
           a.psik == b.psik && a.gammak == b.gammak && a.omegak == b.omegak &&
           a.co2_per_mwh == b.co2_per_mwh && a.p_min_frac == b.p_min_frac &&
           a.p_max_frac == b.p_max_frac && a.physics == b.physics;
}

} // namespace memg
