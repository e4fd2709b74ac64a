#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "orthoinv/linalg.hpp"
#include "orthoinv/scalar.hpp"
#include "orthoinv/slice.hpp"

namespace orthoinv {

/// splitmix64 step; used to derive independent child seeds so reports can
/// quote one master seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

/// Numerator uniform in [-99, 99] \ {0}, denominator uniform in [1, 9].
/// Small heights keep exact arithmetic fast while avoiding non-generic
/// coincidences with overwhelming probability.
inline Rational random_rational(Rng& rng) {
    std::uniform_int_distribution<int> num_dist(-99, 99);
    std::uniform_int_distribution<int> den_dist(1, 9);
    int num = 0;
    while (num == 0) num = num_dist(rng);
    return Rational(num, den_dist(rng));
}

inline SliceCoordinates<Rational> random_coordinates(Rng& rng,
                                                     std::shared_ptr<const SliceIndex> index) {
    SliceCoordinates<Rational> c(std::move(index));
    for (auto& v : c.c_point) v = random_rational(rng);
    for (auto& v : c.c_pair) v = random_rational(rng);
    for (auto& v : c.c_mu) v = random_rational(rng);
    return c;
}

/// Random coordinates whose point block has pairwise distinct entries
/// (distinct quadratic eigenvalues of the combined form).
inline SliceCoordinates<Rational> random_coordinates_distinct_point(
    Rng& rng, std::shared_ptr<const SliceIndex> index) {
    for (;;) {
        auto c = random_coordinates(rng, index);
        bool distinct = true;
        for (size_t i = 0; i < c.c_point.size() && distinct; ++i)
            for (size_t j = i + 1; j < c.c_point.size(); ++j)
                if (c.c_point[i] == c.c_point[j]) {
                    distinct = false;
                    break;
                }
        if (distinct) return c;
    }
}

/// Haar-ish random orthogonal matrix: QR of a Gaussian matrix with the
/// signs fixed so R has positive diagonal.
inline Matrix<double> random_orthogonal(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0)
            for (int i = 0; i < n; ++i) q(i, j) = -q(i, j);
    Matrix<double> out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = q(i, j);
    return out;
}

} // namespace orthoinv
