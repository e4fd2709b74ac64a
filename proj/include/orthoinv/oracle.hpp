#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orthoinv/group.hpp"
#include "orthoinv/invariants.hpp"
#include "orthoinv/rng.hpp"

namespace orthoinv {

constexpr int kMaxExactSweep = 4;

// ---------------------------------------------------------------------------
// Invariance sweep: fingerprint must be constant on every B(n) orbit.
// ---------------------------------------------------------------------------

struct InvarianceViolation {
    int point_index = 0;
    int group_index = 0;
    std::string group_element;
    std::string detail;
};

struct InvarianceReport {
    int n = 0;
    int two_d = 0;
    std::string variant;
    uint64_t seed = 0;
    int points = 0;
    int group_order = 0;
    long long pairs_checked = 0;
    std::vector<InvarianceViolation> violations;

    bool clean() const { return violations.empty(); }
};

inline InvarianceReport invariance_sweep(const std::vector<SliceCoordinates<Rational>>& points,
                                         const InvariantVariant& variant, uint64_t seed = 0) {
    InvarianceReport report;
    report.variant = variant.name();
    report.seed = seed;
    report.points = static_cast<int>(points.size());
    if (points.empty()) return report;

    const int n = points.front().n();
    if (n > kMaxExactSweep)
        throw GuardError("invariance_sweep: exact full sweeps limited to n <= " +
                         std::to_string(kMaxExactSweep));
    report.n = n;
    report.two_d = points.front().two_d();
    auto group = enumerate_group(n);
    report.group_order = static_cast<int>(group.size());

    for (size_t p = 0; p < points.size(); ++p) {
        Fingerprint<Rational> base = fingerprint(points[p], variant);
        for (size_t gi = 0; gi < group.size(); ++gi) {
            ++report.pairs_checked;
            Fingerprint<Rational> moved = fingerprint(act_coords(group[gi], points[p]), variant);
            if (moved != base)
                report.violations.push_back({static_cast<int>(p), static_cast<int>(gi),
                                             group[gi].to_string(),
                                             "fingerprint changed under group action"});
        }
    }
    return report;
}

inline InvarianceReport invariance_sweep(int n, int two_d, int num_points, uint64_t seed,
                                         const InvariantVariant& variant) {
    auto index = SliceIndex::get(n, two_d);
    Rng rng(mix_seed(seed, 0xC0));
    std::vector<SliceCoordinates<Rational>> points;
    points.reserve(static_cast<size_t>(num_points));
    for (int i = 0; i < num_points; ++i) points.push_back(random_coordinates(rng, index));
    return invariance_sweep(points, variant, seed);
}

// ---------------------------------------------------------------------------
// Separation experiment: off-orbit pairs must get distinct fingerprints
// unless a genericity flag explains the collision.
// ---------------------------------------------------------------------------

struct SeparationFailure {
    int trial = 0;
    std::string detail;
};

struct SeparationReport {
    int n = 0;
    int two_d = 0;
    std::string variant;
    uint64_t seed = 0;
    int trials = 0;
    int same_orbit_pairs = 0;
    int distinct_orbit_pairs = 0;
    int separated = 0;
    int flagged_collisions = 0;
    std::vector<SeparationFailure> failures; // unflagged collisions: genuine violations

    bool clean() const { return failures.empty(); }
};

inline SeparationReport separation_experiment(int n, int two_d, int trials, uint64_t seed,
                                              const InvariantVariant& variant) {
    if (n > kMaxExactSweep)
        throw GuardError("separation_experiment: limited to n <= " + std::to_string(kMaxExactSweep));
    SeparationReport report;
    report.n = n;
    report.two_d = two_d;
    report.variant = variant.name();
    report.seed = seed;
    report.trials = trials;

    auto index = SliceIndex::get(n, two_d);
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(t)));
        auto a = random_coordinates(rng, index);
        auto b = random_coordinates(rng, index);
        bool same_orbit = same_orbit_bruteforce(a, b).has_value();
        if (same_orbit) {
            ++report.same_orbit_pairs;
            continue;
        }
        ++report.distinct_orbit_pairs;
        Fingerprint<Rational> fa = fingerprint(a, variant);
        Fingerprint<Rational> fb = fingerprint(b, variant);
        if (fa != fb) {
            ++report.separated;
        } else if (fa.non_generic() || fb.non_generic()) {
            ++report.flagged_collisions;
        } else {
            report.failures.push_back(
                {t, "distinct orbits, equal fingerprints, no genericity flag (seed " +
                        std::to_string(mix_seed(seed, static_cast<uint64_t>(t))) + ")"});
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Graphs: the non-generic locus where the W1 generators go blind.
// ---------------------------------------------------------------------------

struct GraphSpec {
    int vertices = 0;
    std::set<std::pair<int, int>> edges; // 0-based, i < j

    void add_edge(int i, int j) {
        if (i == j) throw ParseError("graph: loop at vertex " + std::to_string(i + 1));
        if (i > j) std::swap(i, j);
        if (i < 0 || j >= vertices) throw ParseError("graph: vertex out of range");
        if (!edges.emplace(i, j).second)
            throw ParseError("graph: duplicate edge " + std::to_string(i + 1) + " " + std::to_string(j + 1));
    }

    bool has_edge(int i, int j) const {
        if (i > j) std::swap(i, j);
        return edges.count({i, j}) > 0;
    }

    static GraphSpec complete_bipartite_33() {
        GraphSpec g;
        g.vertices = 6;
        for (int i = 0; i < 3; ++i)
            for (int j = 3; j < 6; ++j) g.add_edge(i, j);
        return g;
    }

    static GraphSpec triangular_prism() {
        GraphSpec g;
        g.vertices = 6;
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(3, 4);
        g.add_edge(3, 5);
        g.add_edge(4, 5);
        g.add_edge(0, 3);
        g.add_edge(1, 4);
        g.add_edge(2, 5);
        return g;
    }
};

/// Edge-list text format: header "vertices: n", then one 1-based "i j" per line.
inline GraphSpec parse_graph(std::istream& in) {
    GraphSpec g;
    bool have_header = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "vertices:") {
            if (!(ls >> g.vertices) || g.vertices < 1)
                throw ParseError("line " + std::to_string(lineno) + ": bad vertices header");
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ParseError("line " + std::to_string(lineno) + ": edge before vertices header");
        int i = 0, j = 0;
        try {
            i = std::stoi(first);
        } catch (...) {
            throw ParseError("line " + std::to_string(lineno) + ": bad vertex '" + first + "'");
        }
        if (!(ls >> j)) throw ParseError("line " + std::to_string(lineno) + ": expected 'i j'");
        g.add_edge(i - 1, j - 1);
    }
    if (!have_header) throw ParseError("graph: missing vertices header");
    return g;
}

/// c_ij = 1 on edges, 0 elsewhere; all other blocks zero. This is the
/// evaluation under which invariant-based separation becomes graph
/// isomorphism testing.
inline SliceCoordinates<Rational> graph_point(const GraphSpec& g, int two_d = 4) {
    auto index = SliceIndex::get(g.vertices, two_d);
    SliceCoordinates<Rational> c(index);
    for (auto& [i, j] : g.edges) c.c_pair[static_cast<size_t>(index->pair_pos(i, j))] = 1;
    return c;
}

/// Exhaustive search over all vertex relabelings.
inline std::optional<std::vector<int>> graph_isomorphism_bruteforce(const GraphSpec& a,
                                                                    const GraphSpec& b) {
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return std::nullopt;
    std::vector<int> perm(static_cast<size_t>(a.vertices));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto& [i, j] : a.edges)
            if (!b.has_edge(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)])) {
                ok = false;
                break;
            }
        if (ok) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

struct GraphDemoReport {
    int vertices = 6;
    int edges = 9;
    std::vector<Rational> p_values_k33, p_values_prism; // l = 1..15
    std::vector<Rational> q_values_k33, q_values_prism; // l = 2..6
    Rational z_k33, z_prism;
    bool w1_values_equal = false;
    bool isomorphic = true;
    long long permutations_checked = 0;
};

/// K_3,3 vs the triangular prism: every W1 generator evaluates equally on
/// the two 0/1 points (all u_i = 3), yet brute force certifies the graphs
/// non-isomorphic. Equal c_ij values are exactly the locus where the
/// rational invariants stop separating.
inline GraphDemoReport graph_demo() {
    GraphDemoReport report;
    auto k33 = GraphSpec::complete_bipartite_33();
    auto prism = GraphSpec::triangular_prism();
    auto ck = graph_point(k33);
    auto cp = graph_point(prism);
    NumericView<Rational> vk{ck}, vp{cp};

    const int n = 6;
    for (int l = 1; l <= n * (n - 1) / 2; ++l) {
        report.p_values_k33.push_back(p_w1(vk, l));
        report.p_values_prism.push_back(p_w1(vp, l));
    }
    for (int l = 2; l <= n; ++l) {
        report.q_values_k33.push_back(q_w1(vk, l));
        report.q_values_prism.push_back(q_w1(vp, l));
    }
    report.z_k33 = z_w1(vk);
    report.z_prism = z_w1(vp);
    report.w1_values_equal = report.p_values_k33 == report.p_values_prism &&
                             report.q_values_k33 == report.q_values_prism &&
                             report.z_k33 == report.z_prism;

    report.permutations_checked = 720;
    report.isomorphic = graph_isomorphism_bruteforce(k33, prism).has_value();
    return report;
}

} // namespace orthoinv
