#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "orthoinv/errors.hpp"
#include "orthoinv/scalar.hpp"

namespace orthoinv {

/// Exponent vector of a monomial in n variables.
struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries) : e(std::move(entries)) {}
    MultiIndex(std::initializer_list<int> entries) : e(entries) {}

    int size() const { return static_cast<int>(e.size()); }
    int operator[](int i) const { return e[static_cast<size_t>(i)]; }
    int& operator[](int i) { return e[static_cast<size_t>(i)]; }

    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    int nonzero_count() const {
        return static_cast<int>(std::count_if(e.begin(), e.end(), [](int v) { return v != 0; }));
    }

    std::vector<int> odd_positions() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (e[static_cast<size_t>(i)] % 2 != 0) out.push_back(i);
        return out;
    }

    bool all_even() const { return odd_positions().empty(); }

    /// Entry-wise subtraction; only defined when the result stays non-negative.
    MultiIndex minus(const MultiIndex& other) const {
        if (other.size() != size()) throw DomainError("multi-index length mismatch");
        MultiIndex out = *this;
        for (int i = 0; i < size(); ++i) {
            out[i] -= other[i];
            if (out[i] < 0) throw DomainError("multi-index subtraction went negative");
        }
        return out;
    }

    /// Entry-wise halving; only defined when all entries are even.
    MultiIndex half() const {
        MultiIndex out = *this;
        for (auto& v : out.e) {
            if (v % 2 != 0) throw DomainError("multi-index not divisible by 2");
            v /= 2;
        }
        return out;
    }

    static MultiIndex unit(int n, int i, int value = 1) {
        MultiIndex out(std::vector<int>(static_cast<size_t>(n), 0));
        out[i] = value;
        return out;
    }

    bool operator==(const MultiIndex& other) const { return e == other.e; }
    bool operator!=(const MultiIndex& other) const { return e != other.e; }

    std::string to_string() const {
        std::string s = "(";
        for (int i = 0; i < size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[static_cast<size_t>(i)]);
        }
        return s + ")";
    }
};

/// Canonical monomial order: graded lexicographic with x1 > ... > xn,
/// higher degree first. Iterating a map under this comparator lists
/// monomials in the order used by all file output.
struct MonoOrder {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        return std::lexicographical_compare(b.e.begin(), b.e.end(), a.e.begin(), a.e.end());
    }
};

inline BigInt factorial(int m) {
    BigInt out = 1;
    for (int k = 2; k <= m; ++k) out *= k;
    return out;
}

inline BigInt binomial(int m, int k) {
    if (k < 0 || k > m) return 0;
    BigInt out = 1;
    for (int i = 0; i < k; ++i) {
        out *= (m - i);
        out /= (i + 1);
    }
    return out;
}

/// m!/prod(mu_i!). Requires sum(mu) = m.
inline BigInt multinomial(int m, const MultiIndex& mu) {
    if (mu.degree() != m) throw DomainError("multinomial arity");
    BigInt out = factorial(m);
    for (int i = 0; i < mu.size(); ++i) out /= factorial(mu[i]);
    return out;
}

namespace detail {

inline void enumerate_rec(int n, int degree, MultiIndex& cur, int pos,
                          std::vector<MultiIndex>& out) {
    if (pos == n - 1) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (int v = degree; v >= 0; --v) {
        cur[pos] = v;
        enumerate_rec(n, degree - v, cur, pos + 1, out);
    }
}

} // namespace detail

/// All C(n+degree-1, degree) multi-indices of the given degree, in the
/// canonical order (descending lex within the degree).
inline std::vector<MultiIndex> enumerate_multi_indices(int n, int degree) {
    if (n < 1 || degree < 0) throw GuardError("enumerate_multi_indices: need n >= 1, degree >= 0");
    std::vector<MultiIndex> out;
    MultiIndex cur(std::vector<int>(static_cast<size_t>(n), 0));
    detail::enumerate_rec(n, degree, cur, 0, out);
    return out;
}

/// Weakly decreasing positive parts.
struct IntegerPartition {
    std::vector<int> parts;

    IntegerPartition() = default;
    explicit IntegerPartition(std::vector<int> p) : parts(std::move(p)) {}
    IntegerPartition(std::initializer_list<int> p) : parts(p) {}

    int weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }

    bool operator==(const IntegerPartition& other) const { return parts == other.parts; }
    bool operator!=(const IntegerPartition& other) const { return parts != other.parts; }

    /// "2+1+1"
    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += "+";
            s += std::to_string(parts[i]);
        }
        return s;
    }
};

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur, int min_len,
                           int max_len, std::vector<IntegerPartition>& out) {
    if (remaining == 0) {
        int len = static_cast<int>(cur.size());
        if (len >= min_len && len <= max_len) out.emplace_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (int p = std::min(max_part, remaining); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, min_len, max_len, out);
        cur.pop_back();
    }
}

} // namespace detail

/// Partitions of `weight` with length in [min_len, max_len], in descending
/// lexicographic order, minus the exclusion list.
inline std::vector<IntegerPartition> enumerate_partitions(
    int weight, int min_len, int max_len, const std::vector<IntegerPartition>& exclusions = {}) {
    std::vector<IntegerPartition> all;
    std::vector<int> cur;
    detail::partitions_rec(weight, weight, cur, min_len, max_len, all);
    std::vector<IntegerPartition> out;
    for (auto& p : all)
        if (std::find(exclusions.begin(), exclusions.end(), p) == exclusions.end())
            out.push_back(p);
    return out;
}

/// The partition realized by the nonzero entries of mu.
inline IntegerPartition partition_of(const MultiIndex& mu) {
    std::vector<int> parts;
    for (int i = 0; i < mu.size(); ++i)
        if (mu[i] != 0) parts.push_back(mu[i]);
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return IntegerPartition(std::move(parts));
}

/// All mu in N_0^n with mu ~ lambda, in canonical monomial order.
inline std::vector<MultiIndex> enumerate_mu_for_partition(int n, const IntegerPartition& lambda) {
    if (lambda.length() > n) return {};
    std::vector<int> v(static_cast<size_t>(n), 0);
    std::copy(lambda.parts.begin(), lambda.parts.end(), v.begin());
    std::sort(v.begin(), v.end());
    std::vector<MultiIndex> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
        return MonoOrder{}(a, b);
    });
    return out;
}

} // namespace orthoinv
