#pragma once

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasicox/matrix.hpp"

namespace quasicox {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
    unsigned d = 0;
    for (unsigned v : e) d += v;
    return d;
}

// Graded lexicographic order, descending, so map iteration yields the leading
// term first: higher total degree wins, ties broken by lexicographically
// larger exponent vector (x1 before x2, ...).
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

inline std::string var_name(size_t i, size_t nvars) {
    return nvars == 1 ? std::string("x") : "x" + std::to_string(i + 1);
}

// Sparse multivariate polynomial over Scalar in a fixed number of variables.
class MultiPoly {
public:
    using TermMap = std::map<Exponent, Scalar, GradedLexGreater>;

    explicit MultiPoly(size_t nvars = 1) : n_(nvars) {}

    static MultiPoly constant(size_t nvars, const Scalar& c) {
        MultiPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static MultiPoly variable(size_t nvars, size_t i) {
        if (i >= nvars) throw std::invalid_argument("MultiPoly: variable index out of range");
        MultiPoly p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.add_term(e, Scalar(1));
        return p;
    }
    static MultiPoly monomial(size_t nvars, Exponent e, const Scalar& c) {
        if (e.size() != nvars) throw std::invalid_argument("MultiPoly: bad exponent length");
        MultiPoly p(nvars);
        p.add_term(std::move(e), c);
        return p;
    }
    // linear form (coeffs, x)
    static MultiPoly linear_form(const std::vector<Scalar>& coeffs) {
        MultiPoly p(coeffs.size());
        for (size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(std::move(e), coeffs[i]);
        }
        return p;
    }

    size_t nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // Total degree; nullopt stands in for "minus infinity" on the zero
    // polynomial so callers cannot do arithmetic on it by accident.
    std::optional<unsigned> degree() const {
        if (terms_.empty()) return std::nullopt;
        return total_degree(terms_.begin()->first);
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const unsigned d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    MultiPoly homogeneous_component(unsigned d) const {
        MultiPoly out(n_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) out.terms_.emplace(e, c);
        return out;
    }

    Scalar coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(Exponent e, const Scalar& c) {
        if (e.size() != n_) throw std::invalid_argument("MultiPoly: bad exponent length");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_same_vars(a, b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        check_same_vars(a, b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_same_vars(a, b);
        MultiPoly r(a.n_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        return r;
    }
    friend MultiPoly operator*(const Scalar& s, const MultiPoly& p) {
        MultiPoly r(p.n_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        check_same_vars(*this, o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_same_vars(*this, o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(n_, Scalar(1));
        MultiPoly base = *this;
        while (k) {
            if (k & 1u) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    MultiPoly derivative(size_t i) const {
        if (i >= n_) throw std::invalid_argument("MultiPoly: variable index out of range");
        MultiPoly r(n_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponent d(e);
            d[i] -= 1;
            r.add_term(std::move(d), Scalar(static_cast<long>(e[i])) * c);
        }
        return r;
    }

    Scalar eval(const std::vector<Scalar>& x) const {
        if (x.size() != n_) throw std::invalid_argument("MultiPoly: bad point dimension");
        Scalar out(0);
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (size_t i = 0; i < n_; ++i)
                if (e[i]) t *= x[i].pow(e[i]);
            out += t;
        }
        return out;
    }

    // Canonical text: terms in descending graded-lex order, e.g. "3/2*x1^2*x2 - x3".
    std::string str() const { return str({}); }

    // Same format with caller-supplied variable names (empty = defaults).
    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            std::string mono;
            for (size_t i = 0; i < n_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names.empty() ? var_name(i, n_) : names[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            std::string mag;
            bool negative = false;
            if (c.is_rational()) {
                negative = c.rational_value().sign() < 0;
                const Rational a = c.rational_value().abs();
                if (mono.empty()) mag = a.str();
                else if (a.is_one()) mag = mono;
                else mag = a.str() + "*" + mono;
            } else {
                mag = "(" + c.str() + ")";
                if (!mono.empty()) mag += "*" + mono;
            }
            if (out.empty()) out = (negative ? "-" : "") + mag;
            else out += (negative ? " - " : " + ") + mag;
        }
        return out;
    }

    // Parses the canonical text format (rational coefficients only).
    static MultiPoly parse(const std::string& text, size_t nvars) {
        Parser p{text, 0, nvars};
        MultiPoly r = p.expression();
        p.skip_ws();
        if (p.pos != text.size())
            throw std::invalid_argument("MultiPoly: trailing characters in '" + text + "'");
        return r;
    }

private:
    static void check_same_vars(const MultiPoly& a, const MultiPoly& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("MultiPoly: mixing variable counts");
    }

    struct Parser {
        const std::string& s;
        size_t pos;
        size_t nvars;

        void skip_ws() {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        MultiPoly expression() {
            skip_ws();
            bool neg = false;
            if (eat('-')) neg = true;
            else eat('+');
            MultiPoly r = term();
            if (neg) r = -r;
            while (true) {
                skip_ws();
                if (eat('+')) r += term();
                else if (eat('-')) r -= term();
                else break;
            }
            return r;
        }
        MultiPoly term() {
            MultiPoly r = factor();
            while (eat('*')) r *= factor();
            return r;
        }
        MultiPoly factor() {
            skip_ws();
            if (pos >= s.size()) throw std::invalid_argument("MultiPoly: unexpected end of input");
            if (s[pos] == '(') {
                ++pos;
                MultiPoly inner = expression();
                if (!eat(')')) throw std::invalid_argument("MultiPoly: missing ')'");
                return maybe_pow(inner);
            }
            if (s[pos] == 'x') {
                ++pos;
                size_t idx = 0;
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    size_t start = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    const unsigned long k = std::stoul(s.substr(start, pos - start));
                    if (k == 0 || k > nvars)
                        throw std::invalid_argument("MultiPoly: variable index out of range");
                    idx = k - 1;
                } else if (nvars != 1) {
                    throw std::invalid_argument("MultiPoly: bare 'x' only valid in one variable");
                }
                return maybe_pow(MultiPoly::variable(nvars, idx));
            }
            if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                std::string num = s.substr(start, pos - start);
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    size_t dstart = pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (dstart == pos) throw std::invalid_argument("MultiPoly: missing denominator");
                    num += "/" + s.substr(dstart, pos - dstart);
                }
                return maybe_pow(MultiPoly::constant(nvars, Scalar(Rational::parse(num))));
            }
            throw std::invalid_argument(std::string("MultiPoly: unexpected character '") + s[pos] + "'");
        }
        MultiPoly maybe_pow(MultiPoly base) {
            skip_ws();
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                skip_ws();
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (start == pos) throw std::invalid_argument("MultiPoly: missing exponent");
                return base.pow(static_cast<unsigned>(std::stoul(s.substr(start, pos - start))));
            }
            return base;
        }
    };

    size_t n_;
    TermMap terms_;
};

// Substitution cache for p -> p(Mx): powers of the linear forms rows are reused
// across calls, which matters when the same group element acts on many
// polynomials.
class LinearSubstituter {
public:
    explicit LinearSubstituter(const Matrix& M) : M_(M), pows_(M.cols()) {
        if (M.rows() != M.cols())
            throw std::invalid_argument("linear_substitute: matrix must be square");
        if (M.det().is_zero())
            throw std::invalid_argument("linear_substitute: singular substitution matrix");
        const size_t n = M.cols();
        for (size_t i = 0; i < n; ++i) {
            std::vector<Scalar> row(n);
            for (size_t j = 0; j < n; ++j) row[j] = M(i, j);
            // p(Mx) replaces x_i by the i-th row of M applied to x
            pows_[i].push_back(MultiPoly::constant(n, Scalar(1)));
            pows_[i].push_back(MultiPoly::linear_form(row));
        }
    }

    const Matrix& matrix() const { return M_; }

    MultiPoly apply(const MultiPoly& p) {
        const size_t n = pows_.size();
        if (p.nvars() != n) throw std::invalid_argument("linear_substitute: variable count mismatch");
        MultiPoly out(n);
        for (const auto& [e, c] : p.terms()) {
            MultiPoly t = MultiPoly::constant(n, c);
            for (size_t i = 0; i < n; ++i)
                if (e[i]) t *= power(i, e[i]);
            out += t;
        }
        return out;
    }

private:
    const MultiPoly& power(size_t i, unsigned k) {
        auto& v = pows_[i];
        while (v.size() <= k) v.push_back(v.back() * v[1]);
        return v[k];
    }

    Matrix M_;
    std::vector<std::vector<MultiPoly>> pows_;
};

// p(Mx); throws std::invalid_argument for non-square or singular M.
inline MultiPoly linear_substitute(const MultiPoly& p, const Matrix& M) {
    LinearSubstituter sub(M);
    return sub.apply(p);
}

// Change of coordinates adapted to a linear form ell: u1 = ell(x), the other
// coordinates copied from the standard ones.  forward() rewrites p in the u
// coordinates, backward() undoes it.
class LinearAdapter {
public:
    explicit LinearAdapter(const std::vector<Scalar>& ell)
        : C_(build(ell)), fwd_(C_.inverse()), bwd_(C_) {}

    // p as a polynomial in u, i.e. p(C^{-1} u)
    MultiPoly forward(const MultiPoly& p) { return fwd_.apply(p); }
    // q back in the x coordinates, i.e. q(C x)
    MultiPoly backward(const MultiPoly& q) { return bwd_.apply(q); }

private:
    static Matrix build(const std::vector<Scalar>& ell) {
        const size_t n = ell.size();
        size_t t = n;
        for (size_t i = 0; i < n; ++i)
            if (!ell[i].is_zero()) {
                t = i;
                break;
            }
        if (t == n) throw std::invalid_argument("LinearAdapter: zero linear form");
        Matrix C(n, n);
        for (size_t j = 0; j < n; ++j) C(0, j) = ell[j];
        size_t r = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == t) continue;
            C(r++, j) = Scalar(1);
        }
        return C;
    }

    Matrix C_;
    LinearSubstituter fwd_;
    LinearSubstituter bwd_;
};

// Largest j with ell^j dividing p (p nonzero); returns nullopt for p == 0.
inline std::optional<unsigned> linear_valuation(const MultiPoly& p, const std::vector<Scalar>& ell) {
    if (p.is_zero()) return std::nullopt;
    LinearAdapter ad(ell);
    const MultiPoly q = ad.forward(p);
    unsigned v = std::numeric_limits<unsigned>::max();
    for (const auto& [e, c] : q.terms()) v = std::min(v, e[0]);
    return v;
}

// Exact quotient p / ell^k; throws std::invalid_argument when not divisible.
inline MultiPoly divide_by_linear_power(const MultiPoly& p, const std::vector<Scalar>& ell,
                                        unsigned k) {
    if (k == 0) return p;
    if (p.is_zero()) return p;
    LinearAdapter ad(ell);
    MultiPoly q = ad.forward(p);
    MultiPoly shifted(p.nvars());
    for (const auto& [e, c] : q.terms()) {
        if (e[0] < k)
            throw std::invalid_argument("divide_by_linear_power: not divisible");
        Exponent d(e);
        d[0] -= k;
        shifted.add_term(std::move(d), c);
    }
    return ad.backward(shifted);
}

}  // namespace quasicox
