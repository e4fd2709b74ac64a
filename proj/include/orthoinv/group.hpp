#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "orthoinv/form.hpp"
#include "orthoinv/slice.hpp"

namespace orthoinv {

/// Element (tau, sigma) of the signed permutation group B(n).
///
/// The action on forms substitutes variable x_i by tau_{sigma^{-1}(i)}
/// x_{sigma^{-1}(i)}; on monomials this reads x^mu -> tau^{sigma(mu)}
/// x^{sigma(mu)} with sigma(mu)_i = mu_{sigma(i)}. The induced action on
/// slice coordinates is
///     c_i  -> c_{sigma(i)}
///     c_ij -> tau_i tau_j c_{sigma(i) sigma(j)}
///     c_mu -> tau^{sigma(mu)} c_mu moved to slot sigma(mu),
/// the convention under which both the pair formula and the equivariance
/// of the u_mu hold literally (see the tests).
struct SignedPermutation {
    std::vector<int> tau;   // entries +1 / -1
    std::vector<int> sigma; // 0-based permutation, sigma[i] = image of i

    int n() const { return static_cast<int>(sigma.size()); }

    static SignedPermutation identity(int n) {
        SignedPermutation g;
        g.tau.assign(static_cast<size_t>(n), 1);
        g.sigma.resize(static_cast<size_t>(n));
        std::iota(g.sigma.begin(), g.sigma.end(), 0);
        return g;
    }

    bool is_identity() const {
        for (int i = 0; i < n(); ++i)
            if (tau[static_cast<size_t>(i)] != 1 || sigma[static_cast<size_t>(i)] != i) return false;
        return true;
    }

    MultiIndex permute(const MultiIndex& mu) const {
        MultiIndex out = mu;
        for (int i = 0; i < n(); ++i) out[i] = mu[sigma[static_cast<size_t>(i)]];
        return out;
    }

    /// tau^mu = prod_i tau_i^{mu_i}
    int sign_for(const MultiIndex& mu) const {
        int s = 1;
        for (int i = 0; i < n(); ++i)
            if (mu[i] % 2 != 0 && tau[static_cast<size_t>(i)] < 0) s = -s;
        return s;
    }

    bool operator==(const SignedPermutation& other) const {
        return tau == other.tau && sigma == other.sigma;
    }

    std::string to_string() const {
        std::string s = "tau=(";
        for (int i = 0; i < n(); ++i) s += (tau[static_cast<size_t>(i)] > 0 ? "+" : "-");
        s += ") sigma=(";
        for (int i = 0; i < n(); ++i) {
            if (i) s += " ";
            s += std::to_string(sigma[static_cast<size_t>(i)] + 1);
        }
        return s + ")";
    }
};

/// Acting by h first, then g.
inline SignedPermutation compose(const SignedPermutation& g, const SignedPermutation& h) {
    const int n = g.n();
    if (h.n() != n) throw DomainError("group arity mismatch");
    SignedPermutation k;
    k.sigma.resize(static_cast<size_t>(n));
    k.tau.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        k.sigma[static_cast<size_t>(i)] = h.sigma[static_cast<size_t>(g.sigma[static_cast<size_t>(i)])];
        k.tau[static_cast<size_t>(i)] =
            g.tau[static_cast<size_t>(i)] * h.tau[static_cast<size_t>(g.sigma[static_cast<size_t>(i)])];
    }
    return k;
}

inline SignedPermutation inverse(const SignedPermutation& g) {
    const int n = g.n();
    SignedPermutation k;
    k.sigma.resize(static_cast<size_t>(n));
    k.tau.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        k.sigma[static_cast<size_t>(g.sigma[static_cast<size_t>(i)])] = i;
        k.tau[static_cast<size_t>(g.sigma[static_cast<size_t>(i)])] = g.tau[static_cast<size_t>(i)];
    }
    return k;
}

/// The orthogonal matrix Q with act_form(g, f) = apply_orthogonal(f, Q).
inline Matrix<double> matrix_of(const SignedPermutation& g) {
    const int n = g.n();
    Matrix<double> q(n, n, 0.0);
    for (int j = 0; j < n; ++j)
        q(j, g.sigma[static_cast<size_t>(j)]) = static_cast<double>(g.tau[static_cast<size_t>(j)]);
    return q;
}

/// Exact monomial relabeling with signs; no floating arithmetic.
template <class S>
Form<S> act_form(const SignedPermutation& g, const Form<S>& f) {
    if (g.n() != f.n()) throw DomainError("group arity mismatch");
    Form<S> out(f.n(), f.degree());
    for (auto& [mu, a] : f.terms()) {
        MultiIndex nu = g.permute(mu);
        int sign = g.sign_for(nu);
        out.add_term(nu, sign < 0 ? S(-a) : a);
    }
    return out;
}

/// The coordinate action quoted in the struct comment.
template <class S>
SliceCoordinates<S> act_coords(const SignedPermutation& g, const SliceCoordinates<S>& c) {
    if (g.n() != c.n()) throw DomainError("group arity mismatch");
    const int n = c.n();
    SliceCoordinates<S> out(c.index);
    for (int i = 0; i < n; ++i)
        out.c_point[static_cast<size_t>(i)] = c.point(g.sigma[static_cast<size_t>(i)]);
    for (int p = 0; p < c.index->pair_count(); ++p) {
        auto [i, j] = c.index->pair_at(p);
        S value = c.pair(g.sigma[static_cast<size_t>(i)], g.sigma[static_cast<size_t>(j)]);
        int sign = g.tau[static_cast<size_t>(i)] * g.tau[static_cast<size_t>(j)];
        out.c_pair[static_cast<size_t>(p)] = sign < 0 ? S(-value) : value;
    }
    for (auto& nu : c.index->w2()) {
        MultiIndex target = g.permute(nu); // sigma(nu)
        int sign = g.sign_for(target);
        const S& value = c.mu(nu);
        out.c_mu[static_cast<size_t>(c.index->w2_pos(target))] = sign < 0 ? S(-value) : value;
    }
    return out;
}

constexpr int kMaxGroupEnumeration = 6;

/// All 2^n n! elements, deterministic order (identity first).
inline std::vector<SignedPermutation> enumerate_group(int n) {
    if (n < 1) throw GuardError("enumerate_group: n >= 1 required");
    if (n > kMaxGroupEnumeration)
        throw GuardError("group too large: |B(" + std::to_string(n) + ")| = 2^" + std::to_string(n) +
                         " * " + std::to_string(n) + "!");
    std::vector<SignedPermutation> out;
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            SignedPermutation g;
            g.sigma = perm;
            g.tau.resize(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                g.tau[static_cast<size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

constexpr int kMaxOrbitBruteforce = 5;

/// Exhaustive orbit test: some g with act_coords(g, c) = c2, bit-exact,
/// or a definitive "none".
template <class S>
std::optional<SignedPermutation> same_orbit_bruteforce(const SliceCoordinates<S>& c,
                                                       const SliceCoordinates<S>& c2) {
    const int n = c.n();
    if (n > kMaxOrbitBruteforce)
        throw GuardError("group too large: orbit brute force limited to n <= " +
                         std::to_string(kMaxOrbitBruteforce));
    for (auto& g : enumerate_group(n))
        if (act_coords(g, c) == c2) return g;
    return std::nullopt;
}

} // namespace orthoinv
