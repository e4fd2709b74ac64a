#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "test_util.hpp"

using namespace orthoinv;
using testutil::approx_equal_forms;
using testutil::random_form;

namespace {

// Independent oracle for the multinomial: plain factorial quotient.
BigInt multinomial_by_factorials(int m, const std::vector<int>& mu) {
    auto fact = [](int k) {
        BigInt out = 1;
        for (int i = 2; i <= k; ++i) out *= i;
        return out;
    };
    BigInt out = fact(m);
    for (int v : mu) out /= fact(v);
    return out;
}

Matrix<double> rotation(int n, int plane_a, int plane_b, double angle) {
    Matrix<double> g = Matrix<double>::identity(n);
    g(plane_a, plane_a) = std::cos(angle);
    g(plane_b, plane_b) = std::cos(angle);
    g(plane_a, plane_b) = -std::sin(angle);
    g(plane_b, plane_a) = std::sin(angle);
    return g;
}

} // namespace

TEST_CASE("multinomial") {
    CHECK(multinomial(4, MultiIndex{2, 2, 0}) == 6);
    CHECK(multinomial(8, MultiIndex{8, 0, 0}) == 1);
    CHECK(multinomial(6, MultiIndex{3, 2, 1}) == multinomial_by_factorials(6, {3, 2, 1}));
    CHECK(multinomial(6, MultiIndex{3, 2, 1}) == 60);
    CHECK_THROWS_AS(multinomial(5, MultiIndex{2, 2, 0}), DomainError);
}

TEST_CASE("multi-index enumeration is graded-lex and complete") {
    auto two_two = enumerate_multi_indices(2, 2);
    REQUIRE(two_two.size() == 3);
    CHECK(two_two[0] == MultiIndex{2, 0});
    CHECK(two_two[1] == MultiIndex{1, 1});
    CHECK(two_two[2] == MultiIndex{0, 2});

    CHECK(enumerate_multi_indices(3, 4).size() == 15); // C(6,4)
    CHECK(enumerate_multi_indices(1, 5) == std::vector<MultiIndex>{MultiIndex{5}});

    for (int n = 1; n <= 5; ++n)
        for (int degree = 0; degree <= 6; ++degree)
            CHECK(BigInt(enumerate_multi_indices(n, degree).size()) ==
                  binomial(n + degree - 1, degree));
}

TEST_CASE("laplacian basics") {
    auto x1sq = Form<Rational>::monomial(3, MultiIndex{2, 0, 0}, 1);
    CHECK(laplacian(x1sq) == Form<Rational>::constant(3, 2));

    auto square_free = Form<Rational>::monomial(4, MultiIndex{1, 1, 1, 1}, 1);
    CHECK(laplacian(square_free).is_zero());

    // |x|^4 in three variables: expand and differentiate term-wise.
    auto norm4 = mul_norm_power(Form<Rational>::constant(3, 1), 2);
    CHECK(laplacian(norm4) == Form<Rational>::norm_squared(3).scaled(20));
}

TEST_CASE("laplacian powers") {
    Rng rng(7);
    auto f = random_form(rng, 3, 4, 6);
    CHECK(laplacian_power(f, 0) == f);

    Form<Rational> m220(3, 4);
    m220.add_term(MultiIndex{2, 2, 0}, 6);
    m220.add_term(MultiIndex{4, 0, 0}, -1);
    m220.add_term(MultiIndex{0, 4, 0}, -1);
    CHECK(laplacian_power(m220, 1).is_zero());

    auto x1_4 = Form<Rational>::monomial(3, MultiIndex{4, 0, 0}, 1);
    CHECK(laplacian_power(x1_4, 2) == Form<Rational>::constant(3, 24));
}

TEST_CASE("multiplication by norm powers") {
    CHECK(mul_norm_power(Form<Rational>::constant(2, 1), 1) == Form<Rational>::norm_squared(2));

    auto x1sq = Form<Rational>::monomial(3, MultiIndex{2, 0, 0}, 1);
    Form<Rational> expected(3, 4);
    expected.add_term(MultiIndex{4, 0, 0}, 1);
    expected.add_term(MultiIndex{2, 2, 0}, 1);
    expected.add_term(MultiIndex{2, 0, 2}, 1);
    CHECK(mul_norm_power(x1sq, 1) == expected);

    Rng rng(8);
    auto f = random_form(rng, 4, 6, 10);
    CHECK(mul_norm_power(f, 0) == f);
}

TEST_CASE("laplacian of norm powers closed form") {
    // Laplacian(|x|^{2k}) = 2k (2k + n - 2) |x|^{2k-2}, exact.
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= 4; ++k) {
            auto lhs = laplacian(mul_norm_power(Form<Rational>::constant(n, 1), k));
            auto rhs = mul_norm_power(Form<Rational>::constant(n, 1), k - 1)
                           .scaled(Rational(2 * k * (2 * k + n - 2)));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("orthogonal substitution") {
    Rng rng(9);
    auto f = to_float(random_form(rng, 3, 4, 8));
    CHECK(approx_equal_forms(apply_orthogonal(f, Matrix<double>::identity(3)), f, 1e-12));

    auto x1sq = Form<double>::monomial(2, MultiIndex{2, 0}, 1.0);
    auto quarter_turn = apply_orthogonal(x1sq, rotation(2, 0, 1, M_PI / 2));
    CHECK(approx_equal_forms(quarter_turn, Form<double>::monomial(2, MultiIndex{0, 2}, 1.0), 1e-12));

    auto x1x2 = Form<double>::monomial(2, MultiIndex{1, 1}, 1.0);
    auto eighth_turn = apply_orthogonal(x1x2, rotation(2, 0, 1, M_PI / 4));
    Form<double> expected(2, 2);
    expected.add_term(MultiIndex{2, 0}, -0.5);
    expected.add_term(MultiIndex{0, 2}, 0.5);
    bool plus = approx_equal_forms(eighth_turn, expected, 1e-12);
    bool minus = approx_equal_forms(eighth_turn, -expected, 1e-12);
    CHECK((plus || minus));

    Matrix<double> skew = Matrix<double>::identity(2);
    skew(0, 1) = 0.5;
    CHECK_THROWS_WITH(apply_orthogonal(x1x2, skew), "not orthogonal");
}

TEST_CASE("orthogonal substitution is a right action on forms") {
    Rng rng(10);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = to_float(random_form(rng, 3, 4, 8));
        auto g = random_orthogonal(rng, 3);
        auto h = random_orthogonal(rng, 3);
        auto via_two = apply_orthogonal(apply_orthogonal(f, g), h);
        auto via_product = apply_orthogonal(f, h * g);
        CHECK(approx_equal_forms(via_two, via_product, 1e-8));
    }
}

TEST_CASE("partition enumeration") {
    auto with_exclusion = enumerate_partitions(4, 2, 3, {IntegerPartition{3, 1}});
    REQUIRE(with_exclusion.size() == 2);
    CHECK(with_exclusion[0] == IntegerPartition{2, 2});
    CHECK(with_exclusion[1] == IntegerPartition{2, 1, 1});

    CHECK(enumerate_partitions(4, 2, 2, {IntegerPartition{3, 1}}) ==
          std::vector<IntegerPartition>{IntegerPartition{2, 2}});
    CHECK(enumerate_partitions(2, 2, 3) == std::vector<IntegerPartition>{IntegerPartition{1, 1}});
}

TEST_CASE("exact arithmetic laws") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_form(rng, 3, 4, 5);
        auto b = random_form(rng, 3, 4, 5);
        auto c = random_form(rng, 3, 2, 4);
        CHECK((a + b) + (-a) == b);
        CHECK(a * c + b * c == (a + b) * c);
        CHECK((a * c) * c == a * (c * c));
        CHECK(a - a == Form<Rational>::zero(3, 4));
    }
}

TEST_CASE("form text format round trips") {
    Rng rng(12);
    auto f = random_form(rng, 3, 6, 10);
    auto parsed = parse_form(form_to_string(f));
    REQUIRE(std::holds_alternative<Form<Rational>>(parsed));
    CHECK(std::get<Form<Rational>>(parsed) == f);

    auto g = to_float(f);
    auto parsed_float = parse_form(form_to_string(g));
    REQUIRE(std::holds_alternative<Form<double>>(parsed_float));
    CHECK(std::get<Form<double>>(parsed_float) == g);
}

TEST_CASE("form parser rejects malformed input") {
    CHECK_THROWS_AS(parse_form("vars: 2\ndegree: 2\n1 1 0\n"), ParseError); // degree mismatch
    CHECK_THROWS_AS(parse_form("degree: 2\n1 2 0\n"), ParseError);          // missing vars
    CHECK_THROWS_AS(parse_form("vars: 2\ndegree: 2\n1 2\n"), ParseError);   // missing exponent
    CHECK_THROWS_AS(parse_form("vars: 2\ndegree: 2\nx 2 0\n"), ParseError); // bad coefficient
    CHECK_THROWS_AS(parse_form("vars: 2\ndegree: 2\n0.5 2 0\n1/2 0 2\n"), ParseError); // mixed modes
    // comments and duplicate monomials accumulate
    auto parsed = parse_form("# c\nvars: 2\ndegree: 2\n1/2 2 0\n1/2 2 0\n");
    CHECK(std::get<Form<Rational>>(parsed) ==
          Form<Rational>::monomial(2, MultiIndex{2, 0}, 1));
}
