#pragma once

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orthoinv/form.hpp"
#include "orthoinv/linalg.hpp"
#include "orthoinv/multi_index.hpp"

namespace orthoinv {

inline void require_slice_domain(int n, int two_d, const char* what) {
    if (n < 3)
        throw GuardError(std::string(what) + ": n >= 3 required (for n <= 2 the node values "
                                             "u_i coincide and the construction degenerates)");
    if (two_d < 4 || two_d % 2 != 0)
        throw GuardError(std::string(what) + ": even degree >= 4 required (degree 2 reduces to "
                                             "classical eigenvalue invariants)");
}

// ---------------------------------------------------------------------------
// Quadratic forms
// ---------------------------------------------------------------------------

/// x^t M x with M symmetric.
template <class S>
struct QuadraticForm {
    int n = 0;
    Matrix<S> m;

    QuadraticForm() = default;
    QuadraticForm(int n_, Matrix<S> m_) : n(n_), m(std::move(m_)) {
        if (m.rows() != n || m.cols() != n) throw DomainError("quadratic form shape mismatch");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if constexpr (scalar_traits<S>::exact) {
                    if (m(i, j) != m(j, i)) throw DomainError("quadratic form not symmetric");
                } else {
                    if (std::abs(m(i, j) - m(j, i)) >= 1e-12) throw DomainError("quadratic form not symmetric");
                }
    }

    static QuadraticForm from_form(const Form<S>& f) {
        if (!f.is_zero() && f.degree() != 2) throw DomainError("quadratic part: degree 2 form expected");
        const int n = f.n();
        Matrix<S> m(n, n, S(0));
        for (auto& [mu, a] : f.terms()) {
            std::vector<int> where;
            for (int i = 0; i < n; ++i)
                if (mu[i] != 0) where.push_back(i);
            if (where.size() == 1) {
                m(where[0], where[0]) = a;
            } else {
                m(where[0], where[1]) = a / S(2);
                m(where[1], where[0]) = a / S(2);
            }
        }
        return QuadraticForm(n, std::move(m));
    }

    Form<S> to_form() const {
        Form<S> f(n, 2);
        for (int i = 0; i < n; ++i) {
            f.add_term(MultiIndex::unit(n, i, 2), m(i, i));
            for (int j = i + 1; j < n; ++j) {
                MultiIndex mu = MultiIndex::unit(n, i);
                mu[j] = 1;
                f.add_term(mu, S(2) * m(i, j));
            }
        }
        return f;
    }

    bool is_diagonal_within(double tol) const {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if constexpr (scalar_traits<S>::exact) {
                    if (tol == 0.0 ? !is_zero(m(i, j)) : abs_double(m(i, j)) > tol) return false;
                } else {
                    if (std::abs(m(i, j)) > tol) return false;
                }
            }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Harmonic-decomposition plumbing
// ---------------------------------------------------------------------------

/// Exact matrix of q |-> Laplacian^{d-1}(|x|^{2(d-1)} q) on the monomial
/// basis of the degree-2 forms. Inverting it peels the quadratic part off
/// the |x|^{2d-2} V_2 summand of the harmonic decomposition.
inline Matrix<Rational> l_map(int n, int d) {
    if (n < 2 || d < 1) throw GuardError("l_map: need n >= 2, d >= 1");
    auto monomials = enumerate_multi_indices(n, 2);
    const int dim = static_cast<int>(monomials.size());
    Matrix<Rational> out(dim, dim, Rational(0));
    for (int col = 0; col < dim; ++col) {
        Form<Rational> q = Form<Rational>::monomial(n, monomials[static_cast<size_t>(col)], Rational(1));
        Form<Rational> image = laplacian_power(mul_norm_power(q, d - 1), d - 1);
        for (int row = 0; row < dim; ++row)
            out(row, col) = image.coeff(monomials[static_cast<size_t>(row)]);
    }
    return out;
}

namespace detail {

inline const Matrix<Rational>& l_map_cached(int n, int d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Matrix<Rational>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, d}];
    if (!slot) slot = std::make_unique<Matrix<Rational>>(l_map(n, d));
    return *slot;
}

} // namespace detail

/// The unique q with f - |x|^{2d-2} q in ker(Laplacian^{d-1}).
/// Exact when the input is exact; the only floating step of the whole
/// pipeline is the eigendecomposition below.
template <class S>
QuadraticForm<S> quadratic_part(const Form<S>& f) {
    const int two_d = f.degree();
    if (two_d % 2 != 0) throw DomainError("quadratic_part: even degree required");
    const int d = two_d / 2;
    const int n = f.n();
    if (n < 2) throw GuardError("quadratic_part: n >= 2 required");
    if (d == 0) throw DomainError("quadratic_part: degree >= 2 required");

    auto monomials = enumerate_multi_indices(n, 2);
    const int dim = static_cast<int>(monomials.size());
    Form<S> rhs_form = laplacian_power(f, d - 1);
    Matrix<S> rhs(dim, 1, S(0));
    for (int i = 0; i < dim; ++i) rhs(i, 0) = rhs_form.coeff(monomials[static_cast<size_t>(i)]);

    const Matrix<Rational>& l_exact = detail::l_map_cached(n, d);
    Matrix<S> solution(dim, 1);
    if constexpr (scalar_traits<S>::exact) {
        solution = solve_linear(l_exact, rhs, "l_map");
    } else {
        solution = solve_linear(to_float(l_exact), rhs, "l_map");
    }

    Form<S> q(n, 2);
    for (int i = 0; i < dim; ++i) q.add_term(monomials[static_cast<size_t>(i)], solution(i, 0));
    return QuadraticForm<S>::from_form(q);
}

// ---------------------------------------------------------------------------
// Spectral step
// ---------------------------------------------------------------------------

struct EigenDecomposition {
    OrthogonalMatrix g;           // columns are eigenvectors; g^t M g diagonal
    std::vector<double> eigenvalues; // sorted descending
    double min_gap = 0.0;         // smallest gap between consecutive eigenvalues
};

/// Spectral decomposition of a symmetric matrix, canonicalized: eigenvalues
/// sorted descending, each eigenvector's largest-magnitude entry made
/// positive. Degeneracy (a zero gap) is reported, not fatal.
inline EigenDecomposition diagonalize(const QuadraticForm<double>& q) {
    const int n = q.n;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = q.m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition failed");

    // Eigen sorts ascending; flip to descending.
    Matrix<double> g(n, n);
    std::vector<double> values(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        int src = n - 1 - k;
        values[static_cast<size_t>(k)] = solver.eigenvalues()(src);
        int argmax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(solver.eigenvectors()(i, src)) > std::abs(solver.eigenvectors()(argmax, src)))
                argmax = i;
        double sign = solver.eigenvectors()(argmax, src) < 0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) g(i, k) = sign * solver.eigenvectors()(i, src);
    }
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < n; ++k)
        gap = std::min(gap, values[static_cast<size_t>(k)] - values[static_cast<size_t>(k + 1)]);
    if (n == 1) gap = 0.0;
    return EigenDecomposition{OrthogonalMatrix(std::move(g)), std::move(values), gap};
}

inline EigenDecomposition diagonalize(const QuadraticForm<Rational>& q) {
    Matrix<double> m = to_float(q.m);
    return diagonalize(QuadraticForm<double>(q.n, std::move(m)));
}

struct GenericityReport {
    double eigen_gap = 0.0;
    bool degenerate = false;
    std::string warning;
};

struct SliceMove {
    Form<double> slice_form;
    OrthogonalMatrix transform;   // s = apply_orthogonal(f, transform)
    GenericityReport genericity;
};

constexpr double kEigenGapTol = 1e-6;

/// Rotates f so its quadratic part becomes diagonal with descending entries.
inline SliceMove move_to_slice(const Form<double>& f, double gap_tol = kEigenGapTol) {
    require_slice_domain(f.n(), f.degree(), "move_to_slice");
    QuadraticForm<double> q = quadratic_part(f);
    EigenDecomposition eig = diagonalize(q);
    OrthogonalMatrix mover = eig.g.transposed();
    Form<double> s = apply_orthogonal(f, mover);
    GenericityReport report;
    report.eigen_gap = eig.min_gap;
    if (eig.min_gap < gap_tol) {
        report.degenerate = true;
        report.warning = "non-generic: repeated eigenvalues; invariants may not separate";
    }
    return SliceMove{std::move(s), std::move(mover), std::move(report)};
}

// ---------------------------------------------------------------------------
// Index bookkeeping for the slice basis and its dual coordinates
// ---------------------------------------------------------------------------

/// Index tables shared by bases, coordinate vectors and fingerprints for a
/// fixed (n, 2d): the pair block (i < j, lex) and the W2 block (canonical
/// monomial order).
class SliceIndex {
public:
    static std::shared_ptr<const SliceIndex> get(int n, int two_d) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const SliceIndex>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{n, two_d}];
        if (!slot) slot = std::shared_ptr<const SliceIndex>(new SliceIndex(n, two_d));
        return slot;
    }

    int n() const { return n_; }
    int two_d() const { return two_d_; }
    int d() const { return two_d_ / 2; }

    int pair_count() const { return n_ * (n_ - 1) / 2; }
    /// 0-based (i, j) with i < j, lex order.
    int pair_pos(int i, int j) const {
        if (i < 0 || j <= i || j >= n_) throw DomainError("pair index out of range");
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }
    std::pair<int, int> pair_at(int pos) const { return pairs_[static_cast<size_t>(pos)]; }

    const std::vector<MultiIndex>& w2() const { return w2_; }
    int w2_count() const { return static_cast<int>(w2_.size()); }
    int w2_pos(const MultiIndex& mu) const {
        auto it = w2_pos_.find(mu);
        if (it == w2_pos_.end()) throw DomainError("multi-index " + mu.to_string() + " not in the W2 block");
        return it->second;
    }
    bool in_w2(const MultiIndex& mu) const { return w2_pos_.find(mu) != w2_pos_.end(); }

    int dimension() const { return n_ + pair_count() + w2_count(); }

    /// mu with exactly the entries 2d-1 and 1 somewhere (the pair block).
    static bool is_pair_pattern(const MultiIndex& mu, int two_d) {
        if (mu.nonzero_count() != 2) return false;
        int hi = 0, lo = two_d;
        for (int i = 0; i < mu.size(); ++i)
            if (mu[i] != 0) {
                hi = std::max(hi, mu[i]);
                lo = std::min(lo, mu[i]);
            }
        return hi == two_d - 1 && lo == 1;
    }

private:
    SliceIndex(int n, int two_d) : n_(n), two_d_(two_d) {
        require_slice_domain(n, two_d, "slice index");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
        for (auto& mu : enumerate_multi_indices(n, two_d)) {
            if (mu.nonzero_count() < 2) continue;          // x_i^{2d}: not in W
            if (is_pair_pattern(mu, two_d)) continue;      // lives in the pair block
            w2_pos_.emplace(mu, static_cast<int>(w2_.size()));
            w2_.push_back(mu);
        }
    }

    int n_, two_d_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<MultiIndex> w2_;
    std::map<MultiIndex, int, MonoOrder> w2_pos_;
};

/// Coefficients of a slice element in the equivariant basis. The skew
/// relation c_ji = -c_ij is realized by storing i < j only and negating on
/// access.
template <class S>
struct SliceCoordinates {
    std::shared_ptr<const SliceIndex> index;
    std::vector<S> c_point; // c_i
    std::vector<S> c_pair;  // c_ij, i < j, lex
    std::vector<S> c_mu;    // aligned with index->w2()

    SliceCoordinates() = default;
    explicit SliceCoordinates(std::shared_ptr<const SliceIndex> idx)
        : index(std::move(idx)),
          c_point(static_cast<size_t>(index->n()), S(0)),
          c_pair(static_cast<size_t>(index->pair_count()), S(0)),
          c_mu(static_cast<size_t>(index->w2_count()), S(0)) {}

    int n() const { return index->n(); }
    int two_d() const { return index->two_d(); }

    S point(int i) const { return c_point[static_cast<size_t>(i)]; }
    /// Signed access: pair(j, i) = -pair(i, j).
    S pair(int i, int j) const {
        if (i < j) return c_pair[static_cast<size_t>(index->pair_pos(i, j))];
        return -c_pair[static_cast<size_t>(index->pair_pos(j, i))];
    }
    S mu(const MultiIndex& m) const { return c_mu[static_cast<size_t>(index->w2_pos(m))]; }

    bool operator==(const SliceCoordinates& other) const {
        return index->n() == other.index->n() && index->two_d() == other.index->two_d() &&
               c_point == other.c_point && c_pair == other.c_pair && c_mu == other.c_mu;
    }
    bool operator!=(const SliceCoordinates& other) const { return !(*this == other); }
};

inline SliceCoordinates<double> to_float(const SliceCoordinates<Rational>& c) {
    SliceCoordinates<double> out(c.index);
    for (size_t i = 0; i < c.c_point.size(); ++i) out.c_point[i] = to_double(c.c_point[i]);
    for (size_t i = 0; i < c.c_pair.size(); ++i) out.c_pair[i] = to_double(c.c_pair[i]);
    for (size_t i = 0; i < c.c_mu.size(); ++i) out.c_mu[i] = to_double(c.c_mu[i]);
    return out;
}

// ---------------------------------------------------------------------------
// The equivariant basis
// ---------------------------------------------------------------------------

/// The m_i, m_ij, m_mu basis of the slice, built exactly.
struct SliceBasis {
    std::shared_ptr<const SliceIndex> index;
    std::vector<Form<Rational>> m_point; // m_i = |x|^{2d-2} x_i^2
    std::vector<Form<Rational>> m_pair;  // m_ij, i < j
    std::vector<Form<Rational>> m_mu;    // aligned with index->w2()

    int dimension() const { return static_cast<int>(m_point.size() + m_pair.size() + m_mu.size()); }
};

namespace detail {

inline Form<Rational> basis_element(int n, int two_d, const MultiIndex& mu) {
    const int d = two_d / 2;
    auto odd = mu.odd_positions();
    if (odd.empty()) {
        // binom(2d, mu) x^mu - sum_{mu_i != 0} binom(d-1, mu/2 - e_i) x_i^{2d}
        Form<Rational> f = Form<Rational>::monomial(n, mu, Rational(multinomial(two_d, mu)));
        MultiIndex half = mu.half();
        for (int i = 0; i < n; ++i) {
            if (mu[i] == 0) continue;
            Rational coeff(multinomial(d - 1, half.minus(MultiIndex::unit(n, i))));
            f = f - Form<Rational>::monomial(n, MultiIndex::unit(n, i, two_d), coeff);
        }
        return f;
    }
    if (odd.size() == 2) {
        // binom(2d, mu) x^mu
        //   - d binom(d-1, (mu - e_i - e_j)/2) (x_i^{2d-1} x_j + x_i x_j^{2d-1})
        // with i, j the two odd positions.
        int i = odd[0], j = odd[1];
        Form<Rational> f = Form<Rational>::monomial(n, mu, Rational(multinomial(two_d, mu)));
        MultiIndex rest = mu.minus(MultiIndex::unit(n, i)).minus(MultiIndex::unit(n, j)).half();
        Rational coeff = Rational(d) * Rational(multinomial(d - 1, rest));
        MultiIndex hi_lo = MultiIndex::unit(n, i, two_d - 1);
        hi_lo[j] = 1;
        MultiIndex lo_hi = MultiIndex::unit(n, j, two_d - 1);
        lo_hi[i] = 1;
        f = f - Form<Rational>::monomial(n, hi_lo, coeff) - Form<Rational>::monomial(n, lo_hi, coeff);
        return f;
    }
    return Form<Rational>::monomial(n, mu, Rational(1));
}

} // namespace detail

inline SliceBasis build_basis(int n, int two_d) {
    require_slice_domain(n, two_d, "build_basis");
    SliceBasis basis;
    basis.index = SliceIndex::get(n, two_d);
    const int d = two_d / 2;
    for (int i = 0; i < n; ++i)
        basis.m_point.push_back(mul_norm_power(
            Form<Rational>::monomial(n, MultiIndex::unit(n, i, 2), Rational(1)), d - 1));
    for (int p = 0; p < basis.index->pair_count(); ++p) {
        auto [i, j] = basis.index->pair_at(p);
        MultiIndex mu = MultiIndex::unit(n, i, two_d - 1);
        mu[j] = 1;
        basis.m_pair.push_back(detail::basis_element(n, two_d, mu));
    }
    for (auto& mu : basis.index->w2()) basis.m_mu.push_back(detail::basis_element(n, two_d, mu));
    return basis;
}

/// Memoized basis, shared across threads.
inline std::shared_ptr<const SliceBasis> basis_cache(int n, int two_d) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SliceBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, two_d}];
    if (!slot) slot = std::make_shared<const SliceBasis>(build_basis(n, two_d));
    return slot;
}

// ---------------------------------------------------------------------------
// Slice membership and coordinate extraction
// ---------------------------------------------------------------------------

struct SliceCheck {
    bool in_slice = false;
    double max_mixed = 0.0;
    std::vector<std::string> offending; // mixed monomials of the quadratic part
};

/// A form lies in the slice iff its quadratic part has no mixed terms
/// (|coefficient| <= tol; tol = 0 in exact mode).
template <class S>
SliceCheck is_in_slice(const Form<S>& f, double tol) {
    QuadraticForm<S> q = quadratic_part(f);
    SliceCheck out;
    out.in_slice = true;
    for (int i = 0; i < q.n; ++i)
        for (int j = i + 1; j < q.n; ++j) {
            S mixed = S(2) * q.m(i, j);
            bool bad;
            if constexpr (scalar_traits<S>::exact)
                bad = (tol == 0.0) ? !is_zero(mixed) : abs_double(mixed) > tol;
            else
                bad = std::abs(mixed) > tol;
            out.max_mixed = std::max(out.max_mixed, abs_double(mixed));
            if (bad) {
                out.in_slice = false;
                out.offending.push_back("x_" + std::to_string(i + 1) + " x_" + std::to_string(j + 1) +
                                        " coefficient " + scalar_to_string(mixed));
            }
        }
    return out;
}

template <class S>
SliceCheck is_in_slice(const Form<S>& f) {
    return is_in_slice(f, scalar_traits<S>::exact ? 0.0 : 1e-8);
}

namespace detail {

/// The square extraction system: rows are the monomials x^mu (W2 block),
/// x_i^{2d-1} x_j with i < j (pair block) and x_i^{2d} (point block);
/// columns are the basis elements in coordinate order (point, pair, W2).
/// Its inverse is cached so repeated extraction is a matrix-vector product.
struct CoordinateExtractor {
    std::shared_ptr<const SliceIndex> index;
    std::vector<MultiIndex> row_monomials;
    Matrix<Rational> inverse;
    Matrix<double> inverse_float;

    static std::shared_ptr<const CoordinateExtractor> get(int n, int two_d) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const CoordinateExtractor>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{n, two_d}];
        if (!slot) slot = std::shared_ptr<const CoordinateExtractor>(new CoordinateExtractor(n, two_d));
        return slot;
    }

private:
    CoordinateExtractor(int n, int two_d) {
        auto basis = basis_cache(n, two_d);
        index = basis->index;
        const int dim = basis->dimension();

        for (int i = 0; i < n; ++i) row_monomials.push_back(MultiIndex::unit(n, i, two_d));
        for (int p = 0; p < index->pair_count(); ++p) {
            auto [i, j] = index->pair_at(p);
            MultiIndex mu = MultiIndex::unit(n, i, two_d - 1);
            mu[j] = 1;
            row_monomials.push_back(mu);
        }
        for (auto& mu : index->w2()) row_monomials.push_back(mu);

        Matrix<Rational> system(dim, dim, Rational(0));
        int col = 0;
        auto fill_column = [&](const Form<Rational>& m) {
            for (int row = 0; row < dim; ++row)
                system(row, col) = m.coeff(row_monomials[static_cast<size_t>(row)]);
            ++col;
        };
        for (auto& m : basis->m_point) fill_column(m);
        for (auto& m : basis->m_pair) fill_column(m);
        for (auto& m : basis->m_mu) fill_column(m);

        inverse = invert(system, "coordinate extraction");
        inverse_float = to_float(inverse);
    }
};

} // namespace detail

/// The unique c with s = sum c_i m_i + sum c_ij m_ij + sum c_mu m_mu.
/// Throws DomainError when s is not a slice element.
template <class S>
SliceCoordinates<S> coordinates(const Form<S>& s) {
    require_slice_domain(s.n(), s.degree(), "coordinates");
    SliceCheck check = is_in_slice(s);
    if (!check.in_slice) {
        std::string detail;
        for (auto& o : check.offending) detail += (detail.empty() ? "" : "; ") + o;
        throw DomainError("not a slice element: " + detail);
    }
    auto extractor = detail::CoordinateExtractor::get(s.n(), s.degree());
    const int dim = static_cast<int>(extractor->row_monomials.size());

    SliceCoordinates<S> out(extractor->index);
    const int n = s.n();
    const int pairs = extractor->index->pair_count();
    for (int i = 0; i < dim; ++i) {
        S acc(0);
        for (int j = 0; j < dim; ++j) {
            S rhs = s.coeff(extractor->row_monomials[static_cast<size_t>(j)]);
            if (is_zero(rhs)) continue;
            if constexpr (scalar_traits<S>::exact)
                acc += extractor->inverse(i, j) * rhs;
            else
                acc += extractor->inverse_float(i, j) * rhs;
        }
        if (i < n)
            out.c_point[static_cast<size_t>(i)] = acc;
        else if (i < n + pairs)
            out.c_pair[static_cast<size_t>(i - n)] = acc;
        else
            out.c_mu[static_cast<size_t>(i - n - pairs)] = acc;
    }
    return out;
}

/// sum c_i m_i + sum c_ij m_ij + sum c_mu m_mu over the exact basis.
template <class S>
Form<S> combine(const SliceCoordinates<S>& c) {
    auto basis = basis_cache(c.n(), c.two_d());
    Form<S> out(c.n(), c.two_d());
    auto add = [&](const Form<Rational>& m, const S& coeff) {
        if (is_zero(coeff)) return;
        for (auto& [mu, a] : m.terms()) {
            if constexpr (scalar_traits<S>::exact)
                out.add_term(mu, a * coeff);
            else
                out.add_term(mu, to_double(a) * coeff);
        }
    };
    for (size_t i = 0; i < c.c_point.size(); ++i) add(basis->m_point[i], c.c_point[i]);
    for (size_t i = 0; i < c.c_pair.size(); ++i) add(basis->m_pair[i], c.c_pair[i]);
    for (size_t i = 0; i < c.c_mu.size(); ++i) add(basis->m_mu[i], c.c_mu[i]);
    return out;
}

} // namespace orthoinv
