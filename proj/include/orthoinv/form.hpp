#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "orthoinv/errors.hpp"
#include "orthoinv/linalg.hpp"
#include "orthoinv/multi_index.hpp"
#include "orthoinv/scalar.hpp"

namespace orthoinv {

/// Sparse homogeneous polynomial with coefficients in S (Rational or double;
/// forms over a polynomial ring also satisfy the scalar interface, which is
/// what the symbolic generator emission relies on). Zero coefficients are
/// never stored. Values are immutable in spirit: every operation returns a
/// fresh form.
template <class S>
class Form {
public:
    using Terms = std::map<MultiIndex, S, MonoOrder>;

    Form() : n_(0), degree_(0) {}
    Form(int n, int degree) : n_(n), degree_(degree) {
        if (n < 1 || degree < 0) throw GuardError("form: need n >= 1, degree >= 0");
    }

    static Form zero(int n, int degree) { return Form(n, degree); }

    static Form constant(int n, S value) {
        Form f(n, 0);
        f.add_term(MultiIndex(std::vector<int>(static_cast<size_t>(n), 0)), std::move(value));
        return f;
    }

    static Form monomial(int n, const MultiIndex& mu, S coeff) {
        if (mu.size() != n) throw DomainError("monomial arity mismatch");
        Form f(n, mu.degree());
        f.add_term(mu, std::move(coeff));
        return f;
    }

    static Form variable(int n, int i) { return monomial(n, MultiIndex::unit(n, i), S(1)); }

    /// |x|^2 = sum_i x_i^2
    static Form norm_squared(int n) {
        Form f(n, 2);
        for (int i = 0; i < n; ++i) f.add_term(MultiIndex::unit(n, i, 2), S(1));
        return f;
    }

    int n() const { return n_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    S coeff(const MultiIndex& mu) const {
        auto it = terms_.find(mu);
        return it == terms_.end() ? S(0) : it->second;
    }

    void add_term(const MultiIndex& mu, S value) {
        if (mu.size() != n_) throw DomainError("term arity mismatch");
        if (mu.degree() != degree_) throw DomainError("term degree mismatch");
        if (orthoinv::is_zero(value)) return;
        auto it = terms_.find(mu);
        if (it == terms_.end()) {
            terms_.emplace(mu, std::move(value));
        } else {
            it->second += value;
            if (orthoinv::is_zero(it->second)) terms_.erase(it);
        }
    }

    Form operator-() const {
        Form out(n_, degree_);
        for (auto& [mu, a] : terms_) out.terms_.emplace(mu, -a);
        return out;
    }

    Form operator+(const Form& other) const {
        check_compatible(other);
        if (is_zero()) return other;
        if (other.is_zero()) return *this;
        Form out = *this;
        for (auto& [mu, a] : other.terms_) out.add_term(mu, a);
        return out;
    }

    Form operator-(const Form& other) const { return *this + (-other); }

    Form operator*(const Form& other) const {
        if (n_ != other.n_) throw DomainError("form arity mismatch");
        Form out(n_, degree_ + other.degree_);
        for (auto& [mu, a] : terms_)
            for (auto& [nu, b] : other.terms_) {
                MultiIndex prod = mu;
                for (int i = 0; i < n_; ++i) prod[i] += nu[i];
                out.add_term(prod, a * b);
            }
        return out;
    }

    Form scaled(const S& factor) const {
        Form out(n_, degree_);
        if (orthoinv::is_zero(factor)) return out;
        for (auto& [mu, a] : terms_) out.add_term(mu, a * factor);
        return out;
    }

    Form pow(int k) const {
        if (k < 0) throw DomainError("negative form power");
        Form out = constant(n_, S(1));
        for (int i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    /// Equal coefficient maps; zero forms compare equal regardless of the
    /// degree they were tagged with.
    bool operator==(const Form& other) const {
        if (n_ != other.n_) return false;
        if (is_zero() && other.is_zero()) return true;
        return degree_ == other.degree_ && terms_ == other.terms_;
    }
    bool operator!=(const Form& other) const { return !(*this == other); }

    double max_abs_coeff() const {
        double worst = 0.0;
        for (auto& [mu, a] : terms_) worst = std::max(worst, abs_double(a));
        return worst;
    }

private:
    void check_compatible(const Form& other) const {
        if (n_ != other.n_) throw DomainError("form arity mismatch");
        if (!is_zero() && !other.is_zero() && degree_ != other.degree_)
            throw DomainError("form degree mismatch");
    }

    int n_, degree_;
    Terms terms_;
};

inline Form<double> to_float(const Form<Rational>& f) {
    Form<double> out(f.n(), f.degree());
    for (auto& [mu, a] : f.terms()) out.add_term(mu, to_double(a));
    return out;
}

/// Laplacian sum_i d^2/dx_i^2. Degree drops by 2 (clamped at 0 for the
/// zero result on low degrees).
template <class S>
Form<S> laplacian(const Form<S>& f) {
    Form<S> out(f.n(), std::max(0, f.degree() - 2));
    for (auto& [mu, a] : f.terms())
        for (int i = 0; i < f.n(); ++i) {
            int e = mu[i];
            if (e < 2) continue;
            MultiIndex nu = mu;
            nu[i] -= 2;
            out.add_term(nu, a * S(e * (e - 1)));
        }
    return out;
}

template <class S>
Form<S> laplacian_power(const Form<S>& f, int k) {
    if (k < 0) throw DomainError("negative laplacian power");
    Form<S> out = f;
    for (int i = 0; i < k; ++i) out = laplacian(out);
    return out;
}

/// |x|^{2k} * f
template <class S>
Form<S> mul_norm_power(const Form<S>& f, int k) {
    if (k < 0) throw DomainError("negative norm power");
    Form<S> out = f;
    Form<S> norm = Form<S>::norm_squared(f.n());
    for (int i = 0; i < k; ++i) out = out * norm;
    return out;
}

/// (g, f) -> f o g^{-1}: substitutes x -> g^t x and re-expands.
inline Form<double> apply_orthogonal(const Form<double>& f, const OrthogonalMatrix& g) {
    if (g.n() != f.n()) throw DomainError("orthogonal matrix arity mismatch");
    const int n = f.n();
    // Images of the variables: x_i -> sum_j g(j,i) x_j.
    std::vector<Form<double>> image;
    image.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Form<double> li(n, 1);
        for (int j = 0; j < n; ++j) li.add_term(MultiIndex::unit(n, j), g(j, i));
        image.push_back(std::move(li));
    }
    Form<double> out(n, f.degree());
    for (auto& [mu, a] : f.terms()) {
        Form<double> prod = Form<double>::constant(n, a);
        for (int i = 0; i < n; ++i)
            if (mu[i] > 0) prod = prod * image[static_cast<size_t>(i)].pow(mu[i]);
        out = out + prod;
    }
    return out;
}

inline Form<double> apply_orthogonal(const Form<double>& f, const Matrix<double>& g) {
    return apply_orthogonal(f, OrthogonalMatrix(g));
}

// ---------------------------------------------------------------------------
// Form text format
//
//   # optional comments
//   vars: <n>
//   degree: <2d>
//   <coefficient> <e1> <e2> ... <en>
//
// Coefficients are p/q or integer literals (exact) or decimal literals
// (float). A file mixes exact and float coefficients at its peril: any
// float literal switches the whole file to float mode, and p/q tokens are
// then rejected.
// ---------------------------------------------------------------------------

using ParsedForm = std::variant<Form<Rational>, Form<double>>;

namespace detail {

struct RawTerm {
    std::string coeff;
    MultiIndex mu;
    int line;
};

} // namespace detail

inline ParsedForm parse_form(std::istream& in) {
    int n = -1, degree = -1;
    std::vector<detail::RawTerm> raw;
    bool any_float = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "vars:") {
            if (!(ls >> n) || n < 1) throw ParseError("line " + std::to_string(lineno) + ": bad vars header");
            continue;
        }
        if (first == "degree:") {
            if (!(ls >> degree) || degree < 0)
                throw ParseError("line " + std::to_string(lineno) + ": bad degree header");
            continue;
        }
        if (n < 0 || degree < 0)
            throw ParseError("line " + std::to_string(lineno) + ": monomial before vars/degree headers");
        detail::RawTerm t;
        t.coeff = first;
        t.line = lineno;
        t.mu.e.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (!(ls >> t.mu[i]) || t.mu[i] < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) +
                                 " non-negative exponents");
        }
        std::string extra;
        if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
        if (t.mu.degree() != degree)
            throw ParseError("line " + std::to_string(lineno) + ": monomial degree " +
                             std::to_string(t.mu.degree()) + " != declared degree " + std::to_string(degree));
        if (looks_like_float_token(t.coeff)) any_float = true;
        raw.push_back(std::move(t));
    }
    if (n < 0 || degree < 0) throw ParseError("missing vars/degree headers");

    if (any_float) {
        Form<double> f(n, degree);
        for (auto& t : raw) {
            if (t.coeff.find('/') != std::string::npos)
                throw ParseError("line " + std::to_string(t.line) + ": rational literal in a float-mode file");
            f.add_term(t.mu, double_from_string(t.coeff));
        }
        return f;
    }
    Form<Rational> f(n, degree);
    for (auto& t : raw) f.add_term(t.mu, rational_from_string(t.coeff));
    return f;
}

inline ParsedForm parse_form(const std::string& text) {
    std::istringstream in(text);
    return parse_form(in);
}

template <class S>
void write_form(std::ostream& out, const Form<S>& f) {
    out << "vars: " << f.n() << "\n";
    out << "degree: " << f.degree() << "\n";
    for (auto& [mu, a] : f.terms()) {
        out << scalar_to_string(a);
        for (int i = 0; i < f.n(); ++i) out << " " << mu[i];
        out << "\n";
    }
}

template <class S>
std::string form_to_string(const Form<S>& f) {
    std::ostringstream out;
    write_form(out, f);
    return out.str();
}

} // namespace orthoinv
