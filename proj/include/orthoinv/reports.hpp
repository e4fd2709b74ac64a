#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "orthoinv/invariants.hpp"
#include "orthoinv/oracle.hpp"

namespace orthoinv {

using Json = nlohmann::ordered_json;

inline Json scalar_json(const Rational& v) { return scalar_to_string(v); }
inline Json scalar_json(double v) { return v; }

template <class S>
Json values_json(const std::vector<S>& values) {
    Json out = Json::array();
    for (auto& v : values) out.push_back(scalar_json(v));
    return out;
}

inline Json flags_json(const std::vector<GenericityFlag>& flags) {
    Json out = Json::array();
    for (auto& f : flags) {
        Json j;
        j["kind"] = f.kind;
        j["block"] = f.block;
        j["a"] = f.a;
        if (!f.b.empty()) j["b"] = f.b;
        out.push_back(std::move(j));
    }
    return out;
}

template <class S>
Json fingerprint_json(const Fingerprint<S>& fp) {
    Json out;
    out["n"] = fp.n;
    out["degree"] = fp.two_d;
    out["mode"] = scalar_traits<S>::mode_name();
    out["variant"] = fp.variant.name();
    out["q"] = values_json(fp.q_block);
    out["r0"] = values_json(fp.r0);
    Json r;
    for (auto& [lambda, values] : fp.r_blocks) r[lambda.to_string()] = values_json(values);
    out["r"] = std::move(r);
    out["flags"] = flags_json(fp.flags);
    return out;
}

inline Json invariance_json(const InvarianceReport& r) {
    Json out;
    out["n"] = r.n;
    out["degree"] = r.two_d;
    out["variant"] = r.variant;
    out["seed"] = r.seed;
    out["points"] = r.points;
    out["group_order"] = r.group_order;
    out["pairs_checked"] = r.pairs_checked;
    Json v = Json::array();
    for (auto& viol : r.violations) {
        Json j;
        j["point_index"] = viol.point_index;
        j["group_index"] = viol.group_index;
        j["group_element"] = viol.group_element;
        j["detail"] = viol.detail;
        v.push_back(std::move(j));
    }
    out["violations"] = std::move(v);
    return out;
}

inline Json separation_json(const SeparationReport& r) {
    Json out;
    out["n"] = r.n;
    out["degree"] = r.two_d;
    out["variant"] = r.variant;
    out["seed"] = r.seed;
    out["trials"] = r.trials;
    out["same_orbit_pairs"] = r.same_orbit_pairs;
    out["distinct_orbit_pairs"] = r.distinct_orbit_pairs;
    out["separated"] = r.separated;
    out["flagged_collisions"] = r.flagged_collisions;
    Json f = Json::array();
    for (auto& fail : r.failures) {
        Json j;
        j["trial"] = fail.trial;
        j["detail"] = fail.detail;
        f.push_back(std::move(j));
    }
    out["failures"] = std::move(f);
    return out;
}

inline Json graph_demo_json(const GraphDemoReport& r) {
    Json out;
    out["vertices"] = r.vertices;
    out["edges"] = r.edges;
    out["graphs"] = Json::array({"K_3,3", "triangular prism"});
    out["p"] = Json{{"K_3,3", values_json(r.p_values_k33)}, {"prism", values_json(r.p_values_prism)}};
    out["q"] = Json{{"K_3,3", values_json(r.q_values_k33)}, {"prism", values_json(r.q_values_prism)}};
    out["z"] = Json{{"K_3,3", scalar_json(r.z_k33)}, {"prism", scalar_json(r.z_prism)}};
    out["w1_values_equal"] = r.w1_values_equal;
    out["isomorphic"] = r.isomorphic;
    out["permutations_checked"] = r.permutations_checked;
    return out;
}

} // namespace orthoinv
