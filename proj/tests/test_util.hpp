#pragma once

#include <random>
#include <vector>

#include "orthoinv/orthoinv.hpp"

namespace testutil {

using namespace orthoinv;

/// Random exact homogeneous form with the requested number of distinct
/// random monomials (fewer if the space is smaller).
inline Form<Rational> random_form(Rng& rng, int n, int degree, int terms) {
    auto monomials = enumerate_multi_indices(n, degree);
    std::shuffle(monomials.begin(), monomials.end(), rng);
    Form<Rational> f(n, degree);
    int count = std::min<int>(terms, static_cast<int>(monomials.size()));
    for (int i = 0; i < count; ++i) f.add_term(monomials[static_cast<size_t>(i)], random_rational(rng));
    return f;
}

inline bool approx_equal_forms(const Form<double>& a, const Form<double>& b, double tol) {
    Form<double> diff = a - b;
    return diff.max_abs_coeff() <= tol;
}

} // namespace testutil
