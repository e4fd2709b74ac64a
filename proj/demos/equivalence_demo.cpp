// Round trip through the pipeline: draw a random slice form, hide it behind
// a random rotation, then recover the fingerprint and compare.

#include <iostream>

#include "orthoinv/orthoinv.hpp"

using namespace orthoinv;

int main() {
    const int n = 3, degree = 4;
    Rng rng(2024);
    auto index = SliceIndex::get(n, degree);

    auto c = random_coordinates_distinct_point(rng, index);
    Form<Rational> s = combine(c);
    std::cout << "slice form:\n" << form_to_string(s) << "\n";

    auto exact_fp = fingerprint(c, InvariantVariant::repaired());
    std::cout << "exact fingerprint has " << exact_fp.value_count() << " values\n";

    Matrix<double> q = random_orthogonal(rng, n);
    Form<double> rotated = apply_orthogonal(to_float(s), OrthogonalMatrix(q));
    std::cout << "rotated form has " << rotated.term_count() << " monomials\n";

    SliceMove move = move_to_slice(rotated);
    std::cout << "eigenvalue gap after moving back: " << move.genericity.eigen_gap << "\n";

    auto recovered = fingerprint(coordinates(move.slice_form), InvariantVariant::repaired());
    auto cmp = compare_fingerprints(recovered, to_float(exact_fp));
    std::cout << "fingerprints match: " << (cmp.equal ? "yes" : "NO")
              << " (max relative discrepancy " << cmp.max_rel << ")\n";
    return cmp.equal ? 0 : 1;
}
