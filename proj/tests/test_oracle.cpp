#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace orthoinv;

TEST_CASE("group enumeration") {
    CHECK(enumerate_group(1).size() == 2);
    CHECK(enumerate_group(3).size() == 48);
    CHECK(enumerate_group(4).size() == 384);
    CHECK(enumerate_group(3).front().is_identity());
    CHECK_THROWS_AS(enumerate_group(7), GuardError);
}

TEST_CASE("group axioms") {
    auto group = enumerate_group(3);
    std::set<std::string> elements;
    for (auto& g : group) elements.insert(g.to_string());
    REQUIRE(elements.size() == group.size());

    Rng rng(41);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    for (int trial = 0; trial < 100; ++trial) {
        auto& g = group[pick(rng)];
        auto& h = group[pick(rng)];
        CHECK(elements.count(compose(g, h).to_string()) == 1);       // closure
        CHECK(compose(g, inverse(g)).is_identity());                 // inverse
        CHECK(compose(inverse(g), g).is_identity());
        CHECK(compose(g, SignedPermutation::identity(3)) == g);      // identity
        auto& k = group[pick(rng)];
        CHECK(compose(compose(g, h), k) == compose(g, compose(h, k))); // associativity
    }
}

TEST_CASE("matrix_of realizes the form action") {
    Rng rng(42);
    auto f = to_float(testutil::random_form(rng, 3, 4, 8));
    for (auto& g : enumerate_group(3)) {
        auto via_relabel = act_form(g, f);
        auto via_matrix = apply_orthogonal(f, OrthogonalMatrix(matrix_of(g)));
        CHECK(testutil::approx_equal_forms(via_relabel, via_matrix, 1e-12));
    }
}

TEST_CASE("act_form examples") {
    auto f = Form<Rational>::monomial(3, MultiIndex{3, 1, 0}, 1); // x1^3 x2

    SignedPermutation swap12 = SignedPermutation::identity(3);
    std::swap(swap12.sigma[0], swap12.sigma[1]);
    CHECK(act_form(swap12, f) == Form<Rational>::monomial(3, MultiIndex{1, 3, 0}, 1));

    SignedPermutation negate1 = SignedPermutation::identity(3);
    negate1.tau[0] = -1;
    CHECK(act_form(negate1, f) == Form<Rational>::monomial(3, MultiIndex{3, 1, 0}, -1));
}

TEST_CASE("act_coords is a group action") {
    Rng rng(43);
    for (int n : {3, 4}) {
        auto index = SliceIndex::get(n, 4);
        auto group = enumerate_group(n);
        std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            auto c = random_coordinates(rng, index);
            auto& g = group[pick(rng)];
            auto& h = group[pick(rng)];
            CHECK(act_coords(g, act_coords(h, c)) == act_coords(compose(g, h), c));
        }
        CHECK(act_coords(SignedPermutation::identity(n), random_coordinates(rng, index)) ==
              act_coords(SignedPermutation::identity(n), random_coordinates(rng, index)) );
    }
}

TEST_CASE("act_coords spec example") {
    // tau = (-1, 1, 1), sigma = id: c_12 and c_13 flip, c_23 unchanged,
    // c_mu picks up (-1)^{mu_1}.
    Rng rng(44);
    auto index = SliceIndex::get(3, 4);
    auto c = random_coordinates(rng, index);
    SignedPermutation g = SignedPermutation::identity(3);
    g.tau[0] = -1;
    auto moved = act_coords(g, c);
    CHECK(moved.pair(0, 1) == -c.pair(0, 1));
    CHECK(moved.pair(0, 2) == -c.pair(0, 2));
    CHECK(moved.pair(1, 2) == c.pair(1, 2));
    for (auto& mu : index->w2()) {
        Rational expected = c.mu(mu);
        if (mu[0] % 2 != 0) expected = -expected;
        CHECK(moved.mu(mu) == expected);
    }
    for (int i = 0; i < 3; ++i) CHECK(moved.point(i) == c.point(i));
}

TEST_CASE("orbit brute force") {
    Rng rng(45);
    auto index = SliceIndex::get(3, 4);
    auto group = enumerate_group(3);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);

    auto c = random_coordinates(rng, index);
    auto witness = same_orbit_bruteforce(c, act_coords(group[pick(rng)], c));
    REQUIRE(witness.has_value());

    auto perturbed = c;
    perturbed.c_mu[0] += Rational(1, 1000);
    CHECK_FALSE(same_orbit_bruteforce(c, perturbed).has_value());

    SliceCoordinates<Rational> zero(index), zero2(index);
    auto id_witness = same_orbit_bruteforce(zero, zero2);
    REQUIRE(id_witness.has_value());
    CHECK(id_witness->is_identity());
}

TEST_CASE("orbit relation is an equivalence on samples") {
    Rng rng(46);
    auto index = SliceIndex::get(3, 4);
    auto group = enumerate_group(3);
    std::uniform_int_distribution<size_t> pick(0, group.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_coordinates(rng, index);
        auto b = act_coords(group[pick(rng)], a);
        auto c = act_coords(group[pick(rng)], b);
        CHECK(same_orbit_bruteforce(a, a).has_value());            // reflexive
        CHECK(same_orbit_bruteforce(b, a).has_value());            // symmetric
        CHECK(same_orbit_bruteforce(a, c).has_value());            // transitive
    }
}

TEST_CASE("invariance sweep") {
    auto report = invariance_sweep(3, 4, 10, 42, InvariantVariant::repaired());
    CHECK(report.points == 10);
    CHECK(report.group_order == 48);
    CHECK(report.pairs_checked == 480);
    CHECK(report.clean());

    auto literal = invariance_sweep(3, 4, 10, 42, InvariantVariant::paper_literal());
    CHECK(literal.clean()); // the literal variant is still invariant

    auto empty = invariance_sweep({}, InvariantVariant::repaired());
    CHECK(empty.points == 0);
    CHECK(empty.pairs_checked == 0);

    SliceCoordinates<Rational> big(SliceIndex::get(5, 4));
    CHECK_THROWS_AS(invariance_sweep({big}, InvariantVariant::repaired()), GuardError);
}

TEST_CASE("separation experiment") {
    auto report = separation_experiment(3, 4, 20, 42, InvariantVariant::repaired());
    CHECK(report.trials == 20);
    CHECK(report.distinct_orbit_pairs + report.same_orbit_pairs == 20);
    CHECK(report.separated == report.distinct_orbit_pairs);
    CHECK(report.clean());

    auto empty = separation_experiment(3, 4, 0, 42, InvariantVariant::repaired());
    CHECK(empty.trials == 0);
    CHECK(empty.distinct_orbit_pairs == 0);
}

TEST_CASE("graph parsing and validation") {
    std::istringstream good("# demo\nvertices: 3\n1 2\n2 3\n");
    auto g = parse_graph(good);
    CHECK(g.vertices == 3);
    CHECK(g.edges.size() == 2);
    CHECK(g.has_edge(0, 1));

    std::istringstream loop("vertices: 3\n2 2\n");
    CHECK_THROWS_AS(parse_graph(loop), ParseError);
    std::istringstream dup("vertices: 3\n1 2\n2 1\n");
    CHECK_THROWS_AS(parse_graph(dup), ParseError);
    std::istringstream range("vertices: 3\n1 4\n");
    CHECK_THROWS_AS(parse_graph(range), ParseError);
    std::istringstream headerless("1 2\n");
    CHECK_THROWS_AS(parse_graph(headerless), ParseError);
}

TEST_CASE("graph points") {
    GraphSpec triangle;
    triangle.vertices = 3;
    triangle.add_edge(0, 1);
    triangle.add_edge(0, 2);
    triangle.add_edge(1, 2);
    auto c = graph_point(triangle);
    CHECK(c.pair(0, 1) == 1);
    CHECK(c.pair(0, 2) == 1);
    CHECK(c.pair(1, 2) == 1);
    for (auto& v : c.c_point) CHECK(v == 0);
    for (auto& v : c.c_mu) CHECK(v == 0);

    GraphSpec empty;
    empty.vertices = 3;
    auto ce = graph_point(empty);
    for (auto& v : ce.c_pair) CHECK(v == 0);

    auto k33 = GraphSpec::complete_bipartite_33();
    auto ck = graph_point(k33);
    int ones = 0;
    for (auto& v : ck.c_pair)
        if (v == 1) ++ones;
    CHECK(ones == 9);
    CHECK(ck.c_pair.size() == 15);
}

TEST_CASE("graph demo reproduces the separation failure") {
    auto report = graph_demo();
    REQUIRE(report.p_values_k33.size() == 15);
    for (auto& v : report.p_values_k33) CHECK(v == 9);
    REQUIRE(report.q_values_k33.size() == 5);
    Rational power = 9; // 3^2
    for (size_t l = 0; l < report.q_values_k33.size(); ++l) {
        CHECK(report.q_values_k33[l] == Rational(6) * power);
        power *= 3;
    }
    CHECK(report.z_k33 == 0);
    CHECK(report.w1_values_equal);
    CHECK_FALSE(report.isomorphic);
    CHECK(report.permutations_checked == 720);
}
