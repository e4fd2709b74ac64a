#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orthoinv/form.hpp"
#include "orthoinv/multi_index.hpp"
#include "orthoinv/slice.hpp"

namespace orthoinv {

// ---------------------------------------------------------------------------
// Variants
//
// The u_mu / d_mu written in terms of equal-value classes collapse on
// multi-indices that induce the same value partition (u) or contain an
// odd-cardinality odd class (d). The repaired defaults keep the same
// equivariance but stay generically distinct / nonzero; the literal forms
// are retained for auditing.
// ---------------------------------------------------------------------------

enum class UMode { PaperLiteral, Weighted };
enum class DMode { PaperLiteral, AllOddMatching };

struct InvariantVariant {
    UMode u = UMode::Weighted;
    DMode d = DMode::AllOddMatching;

    static InvariantVariant repaired() { return {UMode::Weighted, DMode::AllOddMatching}; }
    static InvariantVariant paper_literal() { return {UMode::PaperLiteral, DMode::PaperLiteral}; }

    bool operator==(const InvariantVariant& other) const { return u == other.u && d == other.d; }

    std::string name() const {
        if (u == UMode::Weighted && d == DMode::AllOddMatching) return "default";
        if (u == UMode::PaperLiteral && d == DMode::PaperLiteral) return "paper-literal";
        return "mixed";
    }

    static InvariantVariant from_name(const std::string& s) {
        if (s == "default" || s == "repaired") return repaired();
        if (s == "paper-literal") return paper_literal();
        throw ParseError("unknown variant '" + s + "' (expected default | paper-literal)");
    }
};

// ---------------------------------------------------------------------------
// Coordinate views
//
// All invariant formulas below are written once against a view that hands
// out ring elements: numeric views yield Rational/double values, the
// symbolic view yields polynomials in the c-variables, which is how the
// generator polynomials are emitted.
// ---------------------------------------------------------------------------

template <class S>
struct NumericView {
    using Scalar = S;
    const SliceCoordinates<S>& coords;

    int n() const { return coords.n(); }
    Scalar point(int i) const { return coords.point(i); }
    Scalar pair(int i, int j) const { return coords.pair(i, j); }
    Scalar mu(const MultiIndex& m) const { return coords.mu(m); }
    Scalar from_int(long v) const { return Scalar(v); }
};

/// Hands out degree-1 monomials in a flat variable space laid out as
/// [c_1..c_n | c_ij lex | c_mu canonical].
struct SymbolicView {
    using Scalar = Form<Rational>;
    std::shared_ptr<const SliceIndex> index;

    int n() const { return index->n(); }
    int total_vars() const { return index->dimension(); }

    Scalar point(int i) const { return Scalar::variable(total_vars(), i); }
    Scalar pair(int i, int j) const {
        if (i < j) return Scalar::variable(total_vars(), n() + index->pair_pos(i, j));
        return -Scalar::variable(total_vars(), n() + index->pair_pos(j, i));
    }
    Scalar mu(const MultiIndex& m) const {
        return Scalar::variable(total_vars(), n() + index->pair_count() + index->w2_pos(m));
    }
    Scalar from_int(long v) const { return Scalar::constant(total_vars(), Rational(v)); }
};

namespace detail {

template <class V>
typename V::Scalar ring_pow(const V& view, const typename V::Scalar& base, int e) {
    auto out = view.from_int(1);
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// The u and d building blocks
// ---------------------------------------------------------------------------

/// u_i = sum_{j != i} c_ij^2
template <class V>
typename V::Scalar u_point(const V& view, int i) {
    if (view.n() < 3) throw GuardError("u_point: n >= 3 required");
    auto out = view.from_int(0);
    for (int j = 0; j < view.n(); ++j) {
        if (j == i) continue;
        auto c = view.pair(i, j);
        out = out + c * c;
    }
    return out;
}

/// u_I = sum_{i<j in I} c_ij^2 for |I| >= 2; u_{i} = u_i.
template <class V>
typename V::Scalar u_set(const V& view, const std::vector<int>& set) {
    if (set.empty()) throw DomainError("u_set: empty index set");
    if (set.size() == 1) return u_point(view, set[0]);
    auto out = view.from_int(0);
    for (size_t a = 0; a < set.size(); ++a)
        for (size_t b = a + 1; b < set.size(); ++b) {
            auto c = view.pair(set[a], set[b]);
            out = out + c * c;
        }
    return out;
}

/// Partition of [n] by equal mu-values, classes ordered by least element.
inline std::vector<std::vector<int>> value_classes(const MultiIndex& mu) {
    std::vector<std::vector<int>> out;
    std::vector<bool> used(static_cast<size_t>(mu.size()), false);
    for (int i = 0; i < mu.size(); ++i) {
        if (used[static_cast<size_t>(i)]) continue;
        std::vector<int> cls{i};
        used[static_cast<size_t>(i)] = true;
        for (int j = i + 1; j < mu.size(); ++j)
            if (!used[static_cast<size_t>(j)] && mu[j] == mu[i]) {
                cls.push_back(j);
                used[static_cast<size_t>(j)] = true;
            }
        out.push_back(std::move(cls));
    }
    return out;
}

/// Equal-value classes of the odd entries only.
inline std::vector<std::vector<int>> odd_value_classes(const MultiIndex& mu) {
    std::vector<std::vector<int>> out;
    for (auto& cls : value_classes(mu))
        if (mu[cls[0]] % 2 != 0) out.push_back(cls);
    return out;
}

/// Paper-literal: product of u_I over the value partition of [n].
/// Weighted (default): sum_i mu_i u_i.
template <class V>
typename V::Scalar u_mu(const V& view, const MultiIndex& mu, UMode mode) {
    if (mode == UMode::Weighted) {
        auto out = view.from_int(0);
        for (int i = 0; i < view.n(); ++i)
            if (mu[i] != 0) out = out + view.from_int(mu[i]) * u_point(view, i);
        return out;
    }
    auto out = view.from_int(1);
    for (auto& cls : value_classes(mu)) out = out * u_set(view, cls);
    return out;
}

/// d_I = sum over perfect matchings J of I of prod_{{i,j} in J} c_ij (u_i - u_j).
/// An odd-cardinality I has no matchings: empty sum, zero.
template <class V>
typename V::Scalar d_set(const V& view, std::vector<int> set) {
    if (set.empty()) return view.from_int(1);
    if (set.size() % 2 != 0) return view.from_int(0);
    // recursion over matchings: pair off the first element with each partner
    struct Rec {
        const V& view;
        typename V::Scalar run(std::vector<int> rest) {
            if (rest.empty()) return view.from_int(1);
            int first = rest.front();
            auto total = view.from_int(0);
            for (size_t k = 1; k < rest.size(); ++k) {
                int partner = rest[k];
                std::vector<int> remaining;
                for (size_t l = 1; l < rest.size(); ++l)
                    if (l != k) remaining.push_back(rest[l]);
                auto factor = view.pair(first, partner) *
                              (u_point(view, first) - u_point(view, partner));
                total = total + factor * run(std::move(remaining));
            }
            return total;
        }
    };
    return Rec{view}.run(std::move(set));
}

/// Paper-literal: product of d_I over equal-value odd classes (empty
/// product = 1; any odd-cardinality class kills it). All-odd-matching
/// (default): one matching sum over the full odd index set.
template <class V>
typename V::Scalar d_mu(const V& view, const MultiIndex& mu, DMode mode) {
    if (mode == DMode::AllOddMatching) return d_set(view, mu.odd_positions());
    auto out = view.from_int(1);
    for (auto& cls : odd_value_classes(mu)) out = out * d_set(view, cls);
    return out;
}

// ---------------------------------------------------------------------------
// The W1 generators p_l, q_l, z
// ---------------------------------------------------------------------------

/// p_l = sum_{i<j} c_ij^{2l}, 1 <= l <= n(n-1)/2
template <class V>
typename V::Scalar p_w1(const V& view, int l) {
    const int n = view.n();
    if (l < 1 || l > n * (n - 1) / 2) throw DomainError("p_w1: l out of range");
    auto out = view.from_int(0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto c = view.pair(i, j);
            out = out + detail::ring_pow(view, c * c, l);
        }
    return out;
}

/// q_l = sum_i u_i^l, 2 <= l <= n (q_1 is omitted: q_1 = 2 p_1)
template <class V>
typename V::Scalar q_w1(const V& view, int l) {
    if (l < 2 || l > view.n()) throw DomainError("q_w1: l out of range");
    auto out = view.from_int(0);
    for (int i = 0; i < view.n(); ++i) out = out + detail::ring_pow(view, u_point(view, i), l);
    return out;
}

/// z = sum_{i<j<k} (u_i-u_j)(u_j-u_k)(u_k-u_i) c_ij c_jk c_ki
template <class V>
typename V::Scalar z_w1(const V& view) {
    const int n = view.n();
    if (n < 3) throw GuardError("z_w1: n >= 3 required");
    std::vector<typename V::Scalar> u;
    u.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) u.push_back(u_point(view, i));
    auto out = view.from_int(0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                auto term = (u[static_cast<size_t>(i)] - u[static_cast<size_t>(j)]) *
                            (u[static_cast<size_t>(j)] - u[static_cast<size_t>(k)]) *
                            (u[static_cast<size_t>(k)] - u[static_cast<size_t>(i)]) *
                            view.pair(i, j) * view.pair(j, k) * view.pair(k, i);
                out = out + term;
            }
    return out;
}

// ---------------------------------------------------------------------------
// Vandermonde blocks
// ---------------------------------------------------------------------------

/// r_t = sum_i u_i^t c_i, t = 0..n-1  (the vector C_0 v_0)
template <class V>
std::vector<typename V::Scalar> r0_block(const V& view) {
    const int n = view.n();
    std::vector<typename V::Scalar> u, out;
    std::vector<typename V::Scalar> u_pow;
    for (int i = 0; i < n; ++i) {
        u.push_back(u_point(view, i));
        u_pow.push_back(view.from_int(1));
    }
    for (int t = 0; t < n; ++t) {
        auto r = view.from_int(0);
        for (int i = 0; i < n; ++i) {
            r = r + u_pow[static_cast<size_t>(i)] * view.point(i);
            u_pow[static_cast<size_t>(i)] = u_pow[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Admissible partitions: lambda |- 2d, 2 <= len <= n, lambda != (2d-1, 1).
inline std::vector<IntegerPartition> lambda_blocks(int n, int two_d) {
    return enumerate_partitions(two_d, 2, n, {IntegerPartition{two_d - 1, 1}});
}

/// r_{lambda,t} = sum_{mu ~ lambda} u_mu^t d_mu c_mu, t = 0..#{mu~lambda}-1
/// (the vector C_lambda v_lambda), columns in canonical mu order.
template <class V>
std::vector<typename V::Scalar> r_lambda_block(const V& view, const IntegerPartition& lambda,
                                               const InvariantVariant& variant) {
    auto mus = enumerate_mu_for_partition(view.n(), lambda);
    if (mus.empty()) throw DomainError("r_lambda_block: partition longer than n");
    std::vector<typename V::Scalar> node, weight, node_pow;
    for (auto& m : mus) {
        node.push_back(u_mu(view, m, variant.u));
        weight.push_back(d_mu(view, m, variant.d) * view.mu(m));
        node_pow.push_back(view.from_int(1));
    }
    std::vector<typename V::Scalar> out;
    for (size_t t = 0; t < mus.size(); ++t) {
        auto r = view.from_int(0);
        for (size_t k = 0; k < mus.size(); ++k) {
            r = r + node_pow[k] * weight[k];
            node_pow[k] = node_pow[k] * node[k];
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fingerprints
// ---------------------------------------------------------------------------

struct GenericityFlag {
    std::string kind;  // "node-collision" | "zero-d"
    std::string block; // "r0" or a partition string
    std::string a, b;  // offending nodes (b empty for zero-d)
};

constexpr double kNodeCollisionTol = 1e-9;

template <class S>
struct Fingerprint {
    int n = 0;
    int two_d = 0;
    InvariantVariant variant;
    std::vector<S> q_block;                                        // p_1.., q_2.., z
    std::vector<S> r0;                                             // t = 0..n-1
    std::vector<std::pair<IntegerPartition, std::vector<S>>> r_blocks; // canonical order
    std::vector<GenericityFlag> flags;

    bool non_generic() const { return !flags.empty(); }

    std::vector<S> flatten() const {
        std::vector<S> out = q_block;
        out.insert(out.end(), r0.begin(), r0.end());
        for (auto& [lambda, values] : r_blocks) out.insert(out.end(), values.begin(), values.end());
        return out;
    }

    size_t value_count() const {
        size_t c = q_block.size() + r0.size();
        for (auto& [lambda, values] : r_blocks) c += values.size();
        return c;
    }

    /// Bit-exact equality of all blocks (flags excluded).
    bool operator==(const Fingerprint& other) const {
        return n == other.n && two_d == other.two_d && variant == other.variant &&
               q_block == other.q_block && r0 == other.r0 && r_blocks_equal(other);
    }
    bool operator!=(const Fingerprint& other) const { return !(*this == other); }

private:
    bool r_blocks_equal(const Fingerprint& other) const {
        if (r_blocks.size() != other.r_blocks.size()) return false;
        for (size_t i = 0; i < r_blocks.size(); ++i)
            if (r_blocks[i].first != other.r_blocks[i].first ||
                r_blocks[i].second != other.r_blocks[i].second)
                return false;
        return true;
    }
};

namespace detail {

template <class S>
bool nodes_collide(const S& a, const S& b) {
    if constexpr (scalar_traits<S>::exact)
        return a == b;
    else
        return std::abs(a - b) < kNodeCollisionTol;
}

template <class S>
bool weight_vanishes(const S& d) {
    if constexpr (scalar_traits<S>::exact)
        return is_zero(d);
    else
        return std::abs(d) < kNodeCollisionTol;
}

} // namespace detail

/// Evaluates all generating invariants at c in the fixed canonical order
/// (q-block, r0, then per-partition blocks). Genericity flags record node
/// collisions and vanishing d_mu, which are exactly the conditions under
/// which the Vandermonde reconstruction breaks down.
template <class S>
Fingerprint<S> fingerprint(const SliceCoordinates<S>& c, const InvariantVariant& variant) {
    const int n = c.n();
    const int two_d = c.two_d();
    require_slice_domain(n, two_d, "fingerprint");
    NumericView<S> view{c};

    Fingerprint<S> out;
    out.n = n;
    out.two_d = two_d;
    out.variant = variant;

    for (int l = 1; l <= n * (n - 1) / 2; ++l) out.q_block.push_back(p_w1(view, l));
    for (int l = 2; l <= n; ++l) out.q_block.push_back(q_w1(view, l));
    out.q_block.push_back(z_w1(view));

    out.r0 = r0_block(view);
    std::vector<S> u_nodes;
    for (int i = 0; i < n; ++i) u_nodes.push_back(u_point(view, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (detail::nodes_collide(u_nodes[static_cast<size_t>(i)], u_nodes[static_cast<size_t>(j)]))
                out.flags.push_back({"node-collision", "r0", "u_" + std::to_string(i + 1),
                                     "u_" + std::to_string(j + 1)});

    for (auto& lambda : lambda_blocks(n, two_d)) {
        auto mus = enumerate_mu_for_partition(n, lambda);
        std::vector<S> nodes;
        for (auto& m : mus) {
            nodes.push_back(u_mu(view, m, variant.u));
            if (detail::weight_vanishes(d_mu(view, m, variant.d)))
                out.flags.push_back({"zero-d", lambda.to_string(), m.to_string(), ""});
        }
        for (size_t a = 0; a < nodes.size(); ++a)
            for (size_t b = a + 1; b < nodes.size(); ++b)
                if (detail::nodes_collide(nodes[a], nodes[b]))
                    out.flags.push_back({"node-collision", lambda.to_string(), mus[a].to_string(),
                                         mus[b].to_string()});
        out.r_blocks.emplace_back(lambda, r_lambda_block(view, lambda, variant));
    }
    return out;
}

inline Fingerprint<double> to_float(const Fingerprint<Rational>& fp) {
    Fingerprint<double> out;
    out.n = fp.n;
    out.two_d = fp.two_d;
    out.variant = fp.variant;
    out.flags = fp.flags;
    for (auto& v : fp.q_block) out.q_block.push_back(to_double(v));
    for (auto& v : fp.r0) out.r0.push_back(to_double(v));
    for (auto& [lambda, values] : fp.r_blocks) {
        std::vector<double> block;
        block.reserve(values.size());
        for (auto& v : values) block.push_back(to_double(v));
        out.r_blocks.emplace_back(lambda, std::move(block));
    }
    return out;
}

struct FingerprintComparison {
    bool equal = true;
    double max_abs = 0.0;
    double max_rel = 0.0;
};

/// Entry-wise |a-b| <= atol + rtol*max(|a|,|b|).
template <class S>
FingerprintComparison compare_fingerprints(const Fingerprint<S>& a, const Fingerprint<S>& b,
                                           double atol = 1e-9, double rtol = 1e-6) {
    if (a.n != b.n || a.two_d != b.two_d) throw DomainError("fingerprint shape mismatch");
    auto va = a.flatten();
    auto vb = b.flatten();
    FingerprintComparison out;
    for (size_t i = 0; i < va.size(); ++i) {
        double x = to_double(va[i]), y = to_double(vb[i]);
        double diff = std::abs(x - y);
        double scale = std::max(std::abs(x), std::abs(y));
        out.max_abs = std::max(out.max_abs, diff);
        if (scale > 0.0) out.max_rel = std::max(out.max_rel, diff / scale);
        if constexpr (scalar_traits<S>::exact) {
            if (va[i] != vb[i]) out.equal = false;
        } else {
            if (diff > atol + rtol * scale) out.equal = false;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reconstruction: invariants -> coordinates
// ---------------------------------------------------------------------------

/// Solves the C_0 and C_lambda systems to recover c_point and c_mu from
/// the r-values, given the W1 coordinates (which determine all nodes).
/// Exact in rational mode. Throws SingularBlockError on node collisions or
/// vanishing d_mu.
template <class S>
SliceCoordinates<S> reconstruct(int n, int two_d, const InvariantVariant& variant,
                                const std::vector<S>& c_pair, const std::vector<S>& r0,
                                const std::vector<std::vector<S>>& r_lambda) {
    auto index = SliceIndex::get(n, two_d);
    SliceCoordinates<S> out(index);
    if (static_cast<int>(c_pair.size()) != index->pair_count())
        throw DomainError("reconstruct: pair block size mismatch");
    out.c_pair = c_pair;
    NumericView<S> view{out};

    if (static_cast<int>(r0.size()) != n) throw DomainError("reconstruct: r0 block size mismatch");
    std::vector<S> u_nodes;
    for (int i = 0; i < n; ++i) u_nodes.push_back(u_point(view, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (detail::nodes_collide(u_nodes[static_cast<size_t>(i)], u_nodes[static_cast<size_t>(j)]))
                throw SingularBlockError("r0", "u_" + std::to_string(i + 1) + " = u_" +
                                                   std::to_string(j + 1));
    {
        Matrix<S> vand(n, n), rhs(n, 1);
        for (int i = 0; i < n; ++i) {
            S p(1);
            for (int t = 0; t < n; ++t) {
                vand(t, i) = p;
                p = p * u_nodes[static_cast<size_t>(i)];
            }
        }
        for (int t = 0; t < n; ++t) rhs(t, 0) = r0[static_cast<size_t>(t)];
        Matrix<S> sol = solve_linear(vand, rhs, "C0");
        for (int i = 0; i < n; ++i) out.c_point[static_cast<size_t>(i)] = sol(i, 0);
    }

    auto lambdas = lambda_blocks(n, two_d);
    if (r_lambda.size() != lambdas.size()) throw DomainError("reconstruct: block count mismatch");
    for (size_t b = 0; b < lambdas.size(); ++b) {
        auto& lambda = lambdas[b];
        auto mus = enumerate_mu_for_partition(n, lambda);
        const int k = static_cast<int>(mus.size());
        if (static_cast<int>(r_lambda[b].size()) != k)
            throw DomainError("reconstruct: block " + lambda.to_string() + " size mismatch");
        std::vector<S> nodes, weights;
        for (auto& m : mus) {
            nodes.push_back(u_mu(view, m, variant.u));
            weights.push_back(d_mu(view, m, variant.d));
        }
        for (int a = 0; a < k; ++a) {
            if (detail::weight_vanishes(weights[static_cast<size_t>(a)]))
                throw SingularBlockError(lambda.to_string(),
                                         "d_mu = 0 at mu = " + mus[static_cast<size_t>(a)].to_string());
            for (int c2 = a + 1; c2 < k; ++c2)
                if (detail::nodes_collide(nodes[static_cast<size_t>(a)], nodes[static_cast<size_t>(c2)]))
                    throw SingularBlockError(lambda.to_string(),
                                             "u_mu collision between mu = " +
                                                 mus[static_cast<size_t>(a)].to_string() + " and mu = " +
                                                 mus[static_cast<size_t>(c2)].to_string());
        }
        Matrix<S> system(k, k), rhs(k, 1);
        for (int col = 0; col < k; ++col) {
            S p(1);
            for (int t = 0; t < k; ++t) {
                system(t, col) = p * weights[static_cast<size_t>(col)];
                p = p * nodes[static_cast<size_t>(col)];
            }
        }
        for (int t = 0; t < k; ++t) rhs(t, 0) = r_lambda[b][static_cast<size_t>(t)];
        Matrix<S> sol = solve_linear(system, rhs, "C_lambda");
        for (int col = 0; col < k; ++col)
            out.c_mu[static_cast<size_t>(index->w2_pos(mus[static_cast<size_t>(col)]))] = sol(col, 0);
    }
    return out;
}

/// Convenience overload: feed a fingerprint back through its own r-values.
template <class S>
SliceCoordinates<S> reconstruct(const Fingerprint<S>& fp, const std::vector<S>& c_pair) {
    std::vector<std::vector<S>> blocks;
    for (auto& [lambda, values] : fp.r_blocks) blocks.push_back(values);
    return reconstruct(fp.n, fp.two_d, fp.variant, c_pair, fp.r0, blocks);
}

// ---------------------------------------------------------------------------
// Symbolic generator emission
// ---------------------------------------------------------------------------

struct Generator {
    std::string name;   // p_1, q_2, z, r0_t0, r(2+1+1)_t2, ...
    std::string block;  // "q" | "r0" | partition string
    Form<Rational> poly; // polynomial in the flat c-variable space
};

struct GeneratorSet {
    int n = 0;
    int two_d = 0;
    InvariantVariant variant;
    std::shared_ptr<const SliceIndex> index;
    std::vector<Generator> generators;

    /// Count claimed by the closed-form binom(n+2d-1, 2d) - binom(n-1, 2);
    /// the enumerated set carries one more (see the README).
    long long closed_form_count() const {
        return (binomial(n + two_d - 1, two_d) - binomial(n - 1, 2)).convert_to<long long>();
    }
};

/// Every generating invariant as an exact polynomial in the c-variables.
inline GeneratorSet emit_generators(int n, int two_d, const InvariantVariant& variant) {
    require_slice_domain(n, two_d, "emit_generators");
    GeneratorSet out;
    out.n = n;
    out.two_d = two_d;
    out.variant = variant;
    out.index = SliceIndex::get(n, two_d);
    SymbolicView view{out.index};

    for (int l = 1; l <= n * (n - 1) / 2; ++l)
        out.generators.push_back({"p_" + std::to_string(l), "q", p_w1(view, l)});
    for (int l = 2; l <= n; ++l)
        out.generators.push_back({"q_" + std::to_string(l), "q", q_w1(view, l)});
    out.generators.push_back({"z", "q", z_w1(view)});

    auto r0 = r0_block(view);
    for (size_t t = 0; t < r0.size(); ++t)
        out.generators.push_back({"r0_t" + std::to_string(t), "r0", std::move(r0[t])});

    for (auto& lambda : lambda_blocks(n, two_d)) {
        auto block = r_lambda_block(view, lambda, variant);
        for (size_t t = 0; t < block.size(); ++t)
            out.generators.push_back(
                {"r(" + lambda.to_string() + ")_t" + std::to_string(t), lambda.to_string(),
                 std::move(block[t])});
    }
    return out;
}

/// Evaluate a symbolic generator at a coordinate vector (ties the symbolic
/// and numeric evaluation paths together; used by the tests).
template <class S>
S evaluate_generator(const Form<Rational>& poly, const SliceCoordinates<S>& c) {
    const int n = c.n();
    const int pairs = c.index->pair_count();
    std::vector<S> vars;
    for (int i = 0; i < n; ++i) vars.push_back(c.point(i));
    for (size_t p = 0; p < c.c_pair.size(); ++p) vars.push_back(c.c_pair[p]);
    for (size_t m = 0; m < c.c_mu.size(); ++m) vars.push_back(c.c_mu[m]);
    if (static_cast<int>(vars.size()) != n + pairs + c.index->w2_count())
        throw DomainError("evaluate_generator: variable count mismatch");
    S out(0);
    for (auto& [mu, a] : poly.terms()) {
        S term;
        if constexpr (scalar_traits<S>::exact)
            term = a;
        else
            term = to_double(a);
        for (int i = 0; i < mu.size(); ++i)
            for (int e = 0; e < mu[i]; ++e) term = term * vars[static_cast<size_t>(i)];
        out += term;
    }
    return out;
}

} // namespace orthoinv
