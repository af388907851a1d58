#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "quasicox/rational.hpp"
#include "quasicox/unipoly.hpp"

namespace quasicox {

// The real cyclotomic field Q(g) with g = 2*cos(2*pi/L), represented on the
// power basis 1, g, ..., g^(d-1) where d = phi(L)/2.  Instances are interned
// per conductor L and live for the whole program; a null field pointer in
// Scalar means plain Q.
class CycloField {
public:
    unsigned conductor() const { return L_; }
    unsigned degree() const { return d_; }
    const UniPoly<Rational>& min_poly() const { return psi_; }

    // Returns nullptr when the field collapses to Q (degree <= 1, i.e. L <= 4).
    static const CycloField* get(unsigned L) {
        static std::map<unsigned, std::unique_ptr<CycloField>> cache;
        static std::mutex mu;
        if (L == 0) throw std::invalid_argument("CycloField: conductor must be positive");
        if (phi(L) / 2 < 2) return nullptr;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(L);
        if (it == cache.end())
            it = cache.emplace(L, std::unique_ptr<CycloField>(new CycloField(L))).first;
        return it->second.get();
    }

    // Coordinates of 2*cos(2*pi*j/L).
    const std::vector<Rational>& two_cos(long j) const {
        long r = j % static_cast<long>(L_);
        if (r < 0) r += L_;
        return dickson_[static_cast<size_t>(r)];
    }

    // Reduce a coordinate vector of any length modulo the minimal polynomial.
    std::vector<Rational> reduce(const std::vector<Rational>& raw) const {
        std::vector<Rational> out(d_, Rational(0));
        for (size_t k = 0; k < raw.size() && k < d_; ++k) out[k] = raw[k];
        for (size_t k = raw.size(); k-- > d_;) {
            if (raw[k].is_zero()) continue;
            const auto& row = high_[k - d_];
            for (unsigned i = 0; i < d_; ++i) out[i] += raw[k] * row[i];
        }
        return out;
    }

    static unsigned phi(unsigned n) {
        unsigned result = n;
        for (unsigned p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            while (n % p == 0) n /= p;
            result -= result / p;
        }
        if (n > 1) result -= result / n;
        return result;
    }

private:
    explicit CycloField(unsigned L) : L_(L) {
        psi_ = real_subfield_min_poly(L);
        d_ = static_cast<unsigned>(psi_.degree());
        // g^(d+j) for j = 0..d-2, as coordinates on the power basis
        high_.reserve(d_ > 1 ? d_ - 1 : 0);
        std::vector<Rational> gd(d_, Rational(0));
        for (unsigned i = 0; i < d_; ++i) gd[i] = -psi_.coeff(i);
        high_.push_back(gd);
        for (unsigned j = 1; j + 1 < d_; ++j) {
            const auto& prev = high_.back();
            std::vector<Rational> next(d_, Rational(0));
            // multiply by g: shift, then fold the overflow back with psi
            Rational top = prev[d_ - 1];
            for (unsigned i = d_ - 1; i >= 1; --i) next[i] = prev[i - 1];
            next[0] = Rational(0);
            for (unsigned i = 0; i < d_; ++i) next[i] += top * gd[i];
            high_.push_back(std::move(next));
        }
        // Dickson values D_j = 2*cos(2*pi*j/L): D_0 = 2, D_1 = g, D_{j+1} = g*D_j - D_{j-1}
        dickson_.resize(L_ + 1);
        dickson_[0] = std::vector<Rational>(d_, Rational(0));
        dickson_[0][0] = Rational(2);
        if (L_ >= 1) {
            dickson_[1] = std::vector<Rational>(d_, Rational(0));
            if (d_ >= 2) dickson_[1][1] = Rational(1);
            for (unsigned j = 1; j < L_; ++j) {
                std::vector<Rational> raw(d_ + 1, Rational(0));
                for (unsigned i = 0; i < d_; ++i) raw[i + 1] = dickson_[j][i];  // g * D_j
                std::vector<Rational> next = reduce(raw);
                for (unsigned i = 0; i < d_; ++i) next[i] -= dickson_[j - 1][i];
                dickson_[j + 1] = std::move(next);
            }
        }
    }

    static UniPoly<Rational> cyclotomic_poly(unsigned n) {
        static std::map<unsigned, UniPoly<Rational>> cache;
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::vector<Rational> zn(n + 1, Rational(0));
        zn[0] = Rational(-1);
        zn[n] = Rational(1);
        UniPoly<Rational> num(std::move(zn));
        for (unsigned d = 1; d < n; ++d)
            if (n % d == 0) num = num / cyclotomic_poly(d);
        cache[n] = num;
        return num;
    }

    // Minimal polynomial of 2*cos(2*pi/L) from Phi_L(z) = z^m * psi(z + 1/z), m = phi(L)/2.
    static UniPoly<Rational> real_subfield_min_poly(unsigned L) {
        UniPoly<Rational> phi_L = cyclotomic_poly(L);
        const unsigned m = static_cast<unsigned>(phi_L.degree()) / 2;
        UniPoly<Rational> z2p1(std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
        UniPoly<Rational> rem = phi_L;
        std::vector<Rational> psi(m + 1, Rational(0));
        for (unsigned j = m + 1; j-- > 0;) {
            psi[j] = rem.coeff(m + j);
            if (!psi[j].is_zero())
                rem -= psi[j] * z2p1.pow(j).shifted(m - j);
        }
        if (!rem.is_zero())
            throw std::invalid_argument("CycloField: minimal polynomial extraction failed");
        return UniPoly<Rational>(std::move(psi));
    }

    unsigned L_ = 0;
    unsigned d_ = 0;
    UniPoly<Rational> psi_;
    std::vector<std::vector<Rational>> high_;     // g^(d..2d-2) on the power basis
    std::vector<std::vector<Rational>> dickson_;  // D_j for j = 0..L
};

// Exact scalar: an element of Q or of an interned real cyclotomic field.
// Canonical form: field_ == nullptr whenever the value is rational.
class Scalar {
public:
    Scalar() : c_{Rational(0)} {}
    Scalar(long v) : c_{Rational(v)} {}
    Scalar(const Rational& v) : c_{v} {}
    Scalar(const CycloField* F, std::vector<Rational> coords) : F_(F), c_(std::move(coords)) {
        if (F_ == nullptr) {
            if (c_.size() != 1) throw std::invalid_argument("Scalar: rational needs one coordinate");
        } else {
            if (c_.size() != F_->degree()) c_ = F_->reduce(c_);
            demote();
        }
    }

    static Scalar two_cos(const CycloField* F, long j, unsigned o) {
        if (o == 0) throw std::invalid_argument("Scalar: two_cos with zero order");
        if (F != nullptr) {
            const unsigned L = F->conductor();
            if (L % o != 0)
                throw std::invalid_argument("Scalar: order does not divide the conductor");
            return Scalar(F, F->two_cos(j * static_cast<long>(L / o)));
        }
        long r = j % static_cast<long>(o);
        if (r < 0) r += o;
        const unsigned g = std::gcd(static_cast<unsigned>(r), o);
        switch (o / g) {  // 2*cos(2*pi/q) for the reduced order q
            case 1: return Scalar(2);
            case 2: return Scalar(-2);
            case 3: return Scalar(-1);
            case 4: return Scalar(0);
            case 6: return Scalar(1);
            default:
                throw std::invalid_argument("Scalar: irrational cosine requires a field");
        }
    }

    bool is_rational() const { return F_ == nullptr; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (!v.is_zero()) return false;
        return true;
    }
    bool is_one() const { return F_ == nullptr && c_[0].is_one(); }
    const CycloField* field() const { return F_; }
    const std::vector<Rational>& coords() const { return c_; }

    const Rational& rational_value() const {
        if (F_ != nullptr) throw std::invalid_argument("Scalar: value is not rational");
        return c_[0];
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.F_ == nullptr && b.F_ == nullptr) return Scalar(a.c_[0] + b.c_[0]);
        const CycloField* F = joint_field(a, b);
        std::vector<Rational> c = a.lift(F);
        const std::vector<Rational> bc = b.lift(F);
        for (size_t i = 0; i < c.size(); ++i) c[i] += bc[i];
        return Scalar(F, std::move(c));
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    Scalar operator-() const {
        Scalar r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.F_ == nullptr && b.F_ == nullptr) return Scalar(a.c_[0] * b.c_[0]);
        const CycloField* F = joint_field(a, b);
        const std::vector<Rational> ac = a.lift(F), bc = b.lift(F);
        std::vector<Rational> raw(ac.size() + bc.size() - 1, Rational(0));
        for (size_t i = 0; i < ac.size(); ++i) {
            if (ac[i].is_zero()) continue;
            for (size_t j = 0; j < bc.size(); ++j) raw[i + j] += ac[i] * bc[j];
        }
        return Scalar(F, F->reduce(raw));
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (is_zero()) throw std::invalid_argument("Scalar: division by zero");
        if (F_ == nullptr) return Scalar(Rational(1) / c_[0]);
        UniPoly<Rational> a{std::vector<Rational>(c_)};
        auto [g, u, v] = UniPoly<Rational>::extended_gcd(a, F_->min_poly());
        (void)v;
        if (g.degree() != 0)
            throw std::invalid_argument("Scalar: non-invertible field element");
        UniPoly<Rational> inv = (Rational(1) / g.coeff(0)) * u;
        std::vector<Rational> coords(inv.coeffs());
        return Scalar(F_, F_->reduce(coords));
    }

    Scalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar r(1), base = *this;
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.F_ == b.F_) return a.c_ == b.c_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Deterministic total order for canonical sorting (not a numeric order).
    static int compare(const Scalar& a, const Scalar& b) {
        const unsigned la = a.F_ ? a.F_->conductor() : 1;
        const unsigned lb = b.F_ ? b.F_->conductor() : 1;
        if (la != lb) return la < lb ? -1 : 1;
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] < b.c_[i]) return -1;
            if (b.c_[i] < a.c_[i]) return 1;
        }
        return 0;
    }

    std::string str() const {
        if (F_ == nullptr) return c_[0].str();
        std::string out;
        for (size_t k = c_.size(); k-- > 0;) {
            if (c_[k].is_zero()) continue;
            const Rational a = c_[k].abs();
            std::string term;
            if (k == 0) term = a.str();
            else {
                if (!a.is_one()) term = a.str() + "*";
                term += "g";
                if (k > 1) term += "^" + std::to_string(k);
            }
            if (out.empty()) out = (c_[k].sign() < 0 ? "-" : "") + term;
            else out += (c_[k].sign() < 0 ? "-" : "+") + term;
        }
        return out.empty() ? "0" : out;
    }

private:
    static const CycloField* joint_field(const Scalar& a, const Scalar& b) {
        if (a.F_ != nullptr && b.F_ != nullptr && a.F_ != b.F_)
            throw std::invalid_argument("Scalar: mixing distinct cyclotomic fields");
        return a.F_ != nullptr ? a.F_ : b.F_;
    }
    std::vector<Rational> lift(const CycloField* F) const {
        if (F_ == F) return c_;
        std::vector<Rational> out(F->degree(), Rational(0));
        out[0] = c_[0];
        return out;
    }
    void demote() {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return;
        Rational v = c_[0];
        F_ = nullptr;
        c_.assign(1, v);
    }

    const CycloField* F_ = nullptr;
    std::vector<Rational> c_;
};

}  // namespace quasicox
