#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "memg/errors.hpp"

namespace memg {

// Resources flowing through the microgrid balance. Electricity and heat
// are MW, the material resources are t/h.
enum class Resource : int {
    Electricity = 0,
    Heat = 1,
    Sng = 2,
    Co2 = 3,
    Coal = 4,
    Biomass = 5,
};

inline constexpr std::size_t kResourceCount = 6;

inline constexpr std::array<Resource, kResourceCount> kAllResources = {
    Resource::Electricity, Resource::Heat, Resource::Sng,
    Resource::Co2,         Resource::Coal, Resource::Biomass,
};

inline const char* resource_name(Resource r) {
    switch (r) {
    case Resource::Electricity: return "electricity";
    case Resource::Heat: return "heat";
    case Resource::Sng: return "sng";
    case Resource::Co2: return "co2";
    case Resource::Coal: return "coal";
    case Resource::Biomass: return "biomass";
    }
    return "?";
}

inline Resource resource_from_name(const std::string& name) {
    for (Resource r : kAllResources) {
        if (name == resource_name(r)) return r;
    }
    throw ParseError("unknown resource name: " + name);
}

// Fixed-size per-resource vector, zero-initialised.
struct ResourceMap {
    std::array<double, kResourceCount> v{};

    double& operator[](Resource r) { return v[static_cast<std::size_t>(r)]; }
    double operator[](Resource r) const { return v[static_cast<std::size_t>(r)]; }

    ResourceMap& operator+=(const ResourceMap& o) {
        for (std::size_t i = 0; i < kResourceCount; ++i) v[i] += o.v[i];
        return *this;
    }
};

} // namespace memg
