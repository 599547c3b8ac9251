#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpomdp {

enum class PlannerId { CpomcpDpw, Cpomcpow, CpftDpw, Pomcpow, PftDpw };

enum class SearchFamily { Dpw, Pow, Pft };

inline SearchFamily family_of(PlannerId id) {
    switch (id) {
        case PlannerId::CpomcpDpw: return SearchFamily::Dpw;
        case PlannerId::Cpomcpow:
        case PlannerId::Pomcpow: return SearchFamily::Pow;
        case PlannerId::CpftDpw:
        case PlannerId::PftDpw: return SearchFamily::Pft;
    }
    throw std::logic_error("unknown planner id");
}

inline bool is_constrained(PlannerId id) {
    return id == PlannerId::CpomcpDpw || id == PlannerId::Cpomcpow || id == PlannerId::CpftDpw;
}

inline std::string_view planner_name(PlannerId id) {
    switch (id) {
        case PlannerId::CpomcpDpw: return "cpomcp-dpw";
        case PlannerId::Cpomcpow: return "cpomcpow";
        case PlannerId::CpftDpw: return "cpft-dpw";
        case PlannerId::Pomcpow: return "pomcpow";
        case PlannerId::PftDpw: return "pft-dpw";
    }
    throw std::logic_error("unknown planner id");
}

// Seed streams are keyed by the widening family, not the planner id, so a
// constrained planner and its unconstrained counterpart see identical
// episode randomness.
inline std::string_view seed_family_tag(PlannerId id) {
    switch (family_of(id)) {
        case SearchFamily::Dpw: return "pomcp-dpw";
        case SearchFamily::Pow: return "pomcpow";
        case SearchFamily::Pft: return "pft-dpw";
    }
    throw std::logic_error("unknown family");
}

inline PlannerId parse_planner(std::string_view name) {
    if (name == "cpomcp-dpw") return PlannerId::CpomcpDpw;
    if (name == "cpomcpow") return PlannerId::Cpomcpow;
    if (name == "cpft-dpw") return PlannerId::CpftDpw;
    if (name == "pomcpow") return PlannerId::Pomcpow;
    if (name == "pft-dpw") return PlannerId::PftDpw;
    throw std::invalid_argument("unknown planner id: " + std::string(name));
}

}  // namespace cpomdp
