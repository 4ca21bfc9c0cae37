// JSON envelope construction for the command-line surface.  All numbers are
// serialized as exact decimal strings; rationals as {"num", "den"} pairs;
// Kodaira types as an "I_v" string plus the integer index.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "semiabel/classify.hpp"
#include "semiabel/verify.hpp"

namespace semiabel {

using nlohmann::json;

inline std::string int_str(const Int& x) { return x.get_str(); }

inline json rat_json(const Rat& r) {
    return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

inline json kodaira_json(unsigned long v) {
    return json{{"symbol", "I_" + std::to_string(v)}, {"v", v}};
}

inline std::string twist_str(Twist t) {
    switch (t) {
        case Twist::good: return "good";
        case Twist::split: return "split";
        default: return "nonsplit";
    }
}

inline json point_json(const CurvePoint& p) {
    if (p.inf) return json{{"infinity", true}};
    return json{{"x", rat_json(p.x)}, {"y", rat_json(p.y)}};
}

inline json chain_json(const FiberChain& ch) {
    json comps = json::array();
    for (const auto& [deg, kind] : ch.components)
        comps.push_back(json{{"field_degree", deg},
                             {"kind", kind == ComponentKind::pinched_line ? "pinched_line"
                                                                         : "line"}});
    return json{{"components", comps}, {"intersection_degrees", ch.intersections}};
}

inline json fiber_json(const FiberReport& r) {
    json j{{"p", int_str(r.p)},
           {"kodaira", kodaira_json(r.kodaira_v)},
           {"twist", twist_str(r.twist)},
           {"P_component_trivial", r.P_component_trivial}};
    if (r.singular_point) {
        j["singular_point"] = json{{"x", int_str(r.singular_point->first)},
                                   {"y", int_str(r.singular_point->second)}};
        j["legendre_4m_plus_1"] = r.legendre_4m1;
        j["legendre_minus_2"] = r.legendre_minus2;
        j["chain"] = chain_json(fiber_chain(r.kodaira_v, r.twist));
    }
    return j;
}

inline json envelope(const std::string& command, json input, json result,
                     std::vector<std::string> provenance) {
    return json{{"schema_version", "1"},
                {"command", command},
                {"input", std::move(input)},
                {"result", std::move(result)},
                {"provenance", std::move(provenance)}};
}

/// One canonical serialization; the round-trip contract (parse then re-dump
/// is byte-identical) holds for this form.
inline std::string dump_envelope(const json& j) { return j.dump(2) + "\n"; }

}  // namespace semiabel
