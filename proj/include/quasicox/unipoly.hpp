#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace quasicox {

// Dense univariate polynomial over a field type T (coefficients ascending).
template <class T>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UniPoly constant(const T& v) { return UniPoly(std::vector<T>{v}); }
    static UniPoly monomial(const T& v, unsigned k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return UniPoly(std::move(c));
    }

    // degree of zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    T coeff(unsigned k) const { return k < c_.size() ? c_[k] : T(0); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& leading() const {
        if (c_.empty()) throw std::invalid_argument("UniPoly: leading coefficient of zero");
        return c_.back();
    }

    void set_coeff(unsigned k, const T& v) {
        if (k >= c_.size()) c_.resize(k + 1, T(0));
        c_[k] = v;
        trim();
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return UniPoly(std::move(c));
    }
    UniPoly operator-() const {
        std::vector<T> c(c_);
        for (auto& v : c) v = -v;
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const T& s, const UniPoly& p) {
        std::vector<T> c(p.c_);
        for (auto& v : c) v = s * v;
        return UniPoly(std::move(c));
    }
    UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
    UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly shifted(unsigned k) const {  // multiply by t^k
        if (is_zero()) return UniPoly();
        std::vector<T> c(k, T(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return UniPoly(std::move(c));
    }

    // coefficients reversed: t^d * p(1/t) with d = degree
    UniPoly reversed() const {
        std::vector<T> c(c_.rbegin(), c_.rend());
        return UniPoly(std::move(c));
    }

    bool palindromic() const { return *this == reversed(); }

    UniPoly pow(unsigned e) const {
        UniPoly r = constant(T(1));
        UniPoly base = *this;
        while (e) {
            if (e & 1u) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    T eval(const T& x) const {
        T r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<T> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = T(static_cast<long>(i)) * c_[i];
        return UniPoly(std::move(c));
    }

    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("UniPoly: division by zero polynomial");
        UniPoly r = a;
        std::vector<T> q;
        if (a.degree() >= b.degree()) q.assign(a.degree() - b.degree() + 1, T(0));
        const T lb = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const unsigned k = static_cast<unsigned>(r.degree() - b.degree());
            const T f = r.leading() / lb;
            q[k] = f;
            r -= f * b.shifted(k);
        }
        return {UniPoly(std::move(q)), r};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::invalid_argument("UniPoly: inexact division");
        return q;
    }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

    UniPoly monic() const {
        if (is_zero()) return *this;
        T inv = T(1) / leading();
        return inv * *this;
    }

    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // g = gcd(a,b) together with u,v such that u*a + v*b = g
    static std::tuple<UniPoly, UniPoly, UniPoly> extended_gcd(const UniPoly& a, const UniPoly& b) {
        UniPoly r0 = a, r1 = b;
        UniPoly u0 = constant(T(1)), u1;
        UniPoly v0, v1 = constant(T(1));
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            r0 = std::exchange(r1, r2);
            u0 = std::exchange(u1, u0 - q * u1);
            v0 = std::exchange(v1, v0 - q * v1);
        }
        if (r0.is_zero()) return {r0, u0, v0};
        T inv = T(1) / r0.leading();
        return {inv * r0, inv * u0, inv * v0};
    }

    std::string str(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == T(0)) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].str() + ")";
            if (i == 1) out += "*" + var;
            else if (i > 1) out += "*" + var + "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

}  // namespace quasicox
