#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "orthoinv/errors.hpp"
#include "orthoinv/scalar.hpp"

namespace orthoinv {

/// Minimal dense row-major matrix. Heavy lifting stays in the solvers below;
/// Eigen is used only for the floating eigendecomposition (see slice.hpp).
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, T fill = T())
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n, T(0));
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix operator*(const Matrix& other) const {
        if (cols_ != other.rows_) throw DomainError("matrix product shape mismatch");
        Matrix out(rows_, other.cols_, T(0));
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (is_zero(a)) continue;
                for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
            }
        return out;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    int rows_, cols_;
    std::vector<T> data_;
};

inline Matrix<double> to_float(const Matrix<Rational>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

/// max_ij |(g^t g - I)_ij|
inline double orthogonality_defect(const Matrix<double>& g) {
    if (g.rows() != g.cols()) return std::numeric_limits<double>::infinity();
    int n = g.rows();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += g(k, i) * g(k, j);
            worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

/// n x n floating matrix validated against ||g^t g - I||_max < tol.
class OrthogonalMatrix {
public:
    static constexpr double kDefaultTol = 1e-10;

    explicit OrthogonalMatrix(Matrix<double> g, double tol = kDefaultTol) : g_(std::move(g)) {
        if (orthogonality_defect(g_) >= tol) throw DomainError("not orthogonal");
    }

    int n() const { return g_.rows(); }
    const Matrix<double>& matrix() const { return g_; }
    double operator()(int i, int j) const { return g_(i, j); }
    OrthogonalMatrix transposed() const { return OrthogonalMatrix(g_.transposed()); }

private:
    Matrix<double> g_;
};

namespace detail {

/// Row-scales [A|B] to integers, then runs fraction-free (Bareiss)
/// elimination with partial pivoting by entry magnitude. Exact; detects
/// singularity as a zero pivot.
inline Matrix<Rational> solve_exact(const Matrix<Rational>& a, const Matrix<Rational>& b,
                                    const char* context) {
    const int n = a.rows();
    const int k = b.cols();
    if (a.cols() != n || b.rows() != n) throw DomainError("solve shape mismatch");

    Matrix<BigInt> m(n, n + k);
    for (int i = 0; i < n; ++i) {
        BigInt lcm = 1;
        auto fold = [&](const Rational& q) { lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(q))); };
        for (int j = 0; j < n; ++j) fold(a(i, j));
        for (int j = 0; j < k; ++j) fold(b(i, j));
        for (int j = 0; j < n; ++j) m(i, j) = BigInt(numerator(a(i, j))) * (lcm / BigInt(denominator(a(i, j))));
        for (int j = 0; j < k; ++j) m(i, n + j) = BigInt(numerator(b(i, j))) * (lcm / BigInt(denominator(b(i, j))));
    }

    BigInt prev = 1;
    for (int col = 0; col < n; ++col) {
        int pivot_row = -1;
        BigInt best = 0;
        for (int i = col; i < n; ++i) {
            BigInt mag = abs(m(i, col));
            if (mag > best) {
                best = mag;
                pivot_row = i;
            }
        }
        if (pivot_row < 0) throw DomainError(std::string("singular matrix in ") + context);
        if (pivot_row != col)
            for (int j = 0; j < n + k; ++j) std::swap(m(col, j), m(pivot_row, j));
        const BigInt pivot = m(col, col);
        for (int i = col + 1; i < n; ++i) {
            for (int j = col + 1; j < n + k; ++j)
                m(i, j) = (m(i, j) * pivot - m(i, col) * m(col, j)) / prev;
            m(i, col) = 0;
        }
        prev = pivot;
    }

    Matrix<Rational> x(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = n - 1; i >= 0; --i) {
            Rational sum(m(i, n + j));
            for (int l = i + 1; l < n; ++l) sum -= Rational(m(i, l)) * x(l, j);
            x(i, j) = sum / Rational(m(i, i));
        }
    return x;
}

/// Standard Gaussian elimination with partial pivoting.
inline Matrix<double> solve_float(Matrix<double> a, Matrix<double> b, const char* context) {
    const int n = a.rows();
    const int k = b.cols();
    if (a.cols() != n || b.rows() != n) throw DomainError("solve shape mismatch");

    for (int col = 0; col < n; ++col) {
        int pivot_row = col;
        double best = std::abs(a(col, col));
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > best) {
                best = std::abs(a(i, col));
                pivot_row = i;
            }
        if (best == 0.0) throw DomainError(std::string("singular matrix in ") + context);
        if (pivot_row != col) {
            for (int j = 0; j < n; ++j) std::swap(a(col, j), a(pivot_row, j));
            for (int j = 0; j < k; ++j) std::swap(b(col, j), b(pivot_row, j));
        }
        for (int i = col + 1; i < n; ++i) {
            double f = a(i, col) / a(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            for (int j = 0; j < k; ++j) b(i, j) -= f * b(col, j);
        }
    }
    Matrix<double> x(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = n - 1; i >= 0; --i) {
            double sum = b(i, j);
            for (int l = i + 1; l < n; ++l) sum -= a(i, l) * x(l, j);
            x(i, j) = sum / a(i, i);
        }
    return x;
}

} // namespace detail

/// Solve A X = B. Exact (fraction-free elimination) for Rational,
/// partial-pivot elimination for double. Throws DomainError when singular.
template <class S>
Matrix<S> solve_linear(const Matrix<S>& a, const Matrix<S>& b, const char* context = "solve") {
    if constexpr (scalar_traits<S>::exact)
        return detail::solve_exact(a, b, context);
    else
        return detail::solve_float(a, b, context);
}

template <class S>
Matrix<S> invert(const Matrix<S>& a, const char* context = "invert") {
    return solve_linear(a, Matrix<S>::identity(a.rows()), context);
}

} // namespace orthoinv
