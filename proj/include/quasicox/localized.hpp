#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coxeter.hpp"
#include "multipoly.hpp"

namespace quasicox {

// Element of the localized ring C[x][1/delta]: a polynomial numerator divided
// by a monomial in the root forms of a fixed group, delta^e = prod_s alpha_s^{e_s}.
// Always kept reduced: whenever e_s > 0 the numerator is not divisible by
// alpha_s, and the zero element has all exponents zero.  Because the root
// forms are pairwise non-proportional irreducibles, the reduced form is
// unique and equality is plain member comparison.
class LocalizedPoly {
public:
    // Zero with no group attached; adopts the other operand's group on use.
    LocalizedPoly() = default;

    LocalizedPoly(std::shared_ptr<const CoxeterDatum> W, MultiPoly num)
        : W_(std::move(W)), num_(std::move(num)), den_(W_->num_reflections(), 0) {}

    LocalizedPoly(std::shared_ptr<const CoxeterDatum> W, MultiPoly num, std::vector<unsigned> den)
        : W_(std::move(W)), num_(std::move(num)), den_(std::move(den)) {
        if (den_.size() != W_->num_reflections())
            throw std::invalid_argument("LocalizedPoly: one denominator exponent per reflection");
        reduce();
    }

    static LocalizedPoly constant(std::shared_ptr<const CoxeterDatum> W, const Scalar& c) {
        MultiPoly num = MultiPoly::constant(W->rank(), c);
        return LocalizedPoly(std::move(W), std::move(num));
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const {
        for (unsigned e : den_)
            if (e) return false;
        return true;
    }
    const MultiPoly& numerator() const { return num_; }
    const std::vector<unsigned>& denominator() const { return den_; }
    const std::shared_ptr<const CoxeterDatum>& group() const { return W_; }

    // The polynomial value; throws when a genuine denominator is present.
    const MultiPoly& polynomial() const {
        if (!is_polynomial())
            throw std::invalid_argument("LocalizedPoly: not a polynomial: " + str());
        return num_;
    }

    // deg(numerator) - deg(denominator); only callable on nonzero elements.
    long degree() const {
        if (is_zero()) throw std::invalid_argument("LocalizedPoly: degree of zero");
        long d = static_cast<long>(*num_.degree());
        for (unsigned e : den_) d -= static_cast<long>(e);
        return d;
    }

    LocalizedPoly operator-() const {
        LocalizedPoly r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend LocalizedPoly operator+(const LocalizedPoly& a, const LocalizedPoly& b) {
        if (a.is_absent() || a.is_zero()) return b;
        if (b.is_absent() || b.is_zero()) return a;
        check_same_group(a, b);
        MultiPoly na = a.num_, nb = b.num_;
        std::vector<unsigned> den(a.den_.size());
        for (size_t s = 0; s < den.size(); ++s) {
            den[s] = std::max(a.den_[s], b.den_[s]);
            if (den[s] > a.den_[s]) na *= a.W_->root_form(s).pow(den[s] - a.den_[s]);
            if (den[s] > b.den_[s]) nb *= b.W_->root_form(s).pow(den[s] - b.den_[s]);
        }
        return LocalizedPoly(a.W_, na + nb, std::move(den));
    }
    friend LocalizedPoly operator-(const LocalizedPoly& a, const LocalizedPoly& b) {
        return a + (-b);
    }
    friend LocalizedPoly operator*(const LocalizedPoly& a, const LocalizedPoly& b) {
        if (a.is_absent() || b.is_absent()) return LocalizedPoly();
        check_same_group(a, b);
        std::vector<unsigned> den(a.den_.size());
        for (size_t s = 0; s < den.size(); ++s) den[s] = a.den_[s] + b.den_[s];
        return LocalizedPoly(a.W_, a.num_ * b.num_, std::move(den));
    }
    friend LocalizedPoly operator*(const Scalar& c, const LocalizedPoly& a) {
        if (a.is_absent()) return a;
        LocalizedPoly r = a;
        r.num_ = c * r.num_;
        if (r.num_.is_zero()) r.den_.assign(r.den_.size(), 0);
        return r;
    }
    LocalizedPoly& operator+=(const LocalizedPoly& o) { return *this = *this + o; }
    LocalizedPoly& operator-=(const LocalizedPoly& o) { return *this = *this - o; }
    LocalizedPoly& operator*=(const LocalizedPoly& o) { return *this = *this * o; }

    bool operator==(const LocalizedPoly& o) const {
        if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const LocalizedPoly& o) const { return !(*this == o); }

    // d/dx_i by the quotient rule: N'/D plus, per denominator factor,
    // -e_s * (d alpha_s/dx_i) * N / (alpha_s D).
    LocalizedPoly derivative(size_t i) const {
        if (is_absent() || is_zero()) return *this;
        LocalizedPoly out(W_, num_.derivative(i), den_);
        for (size_t s = 0; s < den_.size(); ++s) {
            if (den_[s] == 0) continue;
            const Scalar& ai = W_->root(s)[i];
            if (ai.is_zero()) continue;
            std::vector<unsigned> den = den_;
            den[s] += 1;
            const Scalar c = Scalar(-static_cast<long>(den_[s])) * ai;
            out += LocalizedPoly(W_, c * num_, std::move(den));
        }
        return out;
    }

    // The group action f -> f∘w^{-1}, matching CoxeterDatum::act on the
    // numerator; each alpha_s∘w^{-1} = lambda * alpha_{s'} moves the exponent
    // to s' and pushes lambda^{-e_s} into the numerator.
    LocalizedPoly acted(unsigned w) const {
        if (is_absent() || is_zero()) return *this;
        MultiPoly num = W_->act(w, num_);
        std::vector<unsigned> den(den_.size(), 0);
        for (size_t s = 0; s < den_.size(); ++s) {
            if (den_[s] == 0) continue;
            auto [t, lambda] = W_->root_conjugate(w, s);
            den[t] += den_[s];
            num = lambda.pow(-static_cast<long>(den_[s])) * num;
        }
        return LocalizedPoly(W_, std::move(num), std::move(den));
    }

    // "N/x^2", "(x1 - x2)/(x1*x2)": numerator parenthesized when it has more
    // than one term, compound denominators likewise.
    std::string str() const {
        if (is_absent()) return "0";
        if (is_polynomial()) return num_.str();
        std::string out = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
        std::vector<std::string> factors;
        for (size_t s = 0; s < den_.size(); ++s) {
            if (den_[s] == 0) continue;
            const MultiPoly& form = W_->root_form(s);
            std::string f = form.terms().size() > 1 ? "(" + form.str() + ")" : form.str();
            if (den_[s] > 1) f += "^" + std::to_string(den_[s]);
            factors.push_back(std::move(f));
        }
        std::string den;
        for (const auto& f : factors) {
            if (!den.empty()) den += "*";
            den += f;
        }
        return out + "/" + (factors.size() > 1 ? "(" + den + ")" : den);
    }

private:
    bool is_absent() const { return W_ == nullptr; }

    static void check_same_group(const LocalizedPoly& a, const LocalizedPoly& b) {
        if (a.W_ != b.W_)
            throw std::invalid_argument("LocalizedPoly: mixing different groups");
    }

    void reduce() {
        if (num_.is_zero()) {
            den_.assign(den_.size(), 0);
            return;
        }
        for (size_t s = 0; s < den_.size(); ++s) {
            if (den_[s] == 0) continue;
            const unsigned v = *linear_valuation(num_, W_->root(s));
            const unsigned t = std::min(v, den_[s]);
            if (t) {
                num_ = divide_by_linear_power(num_, W_->root(s), t);
                den_[s] -= t;
            }
        }
    }

    std::shared_ptr<const CoxeterDatum> W_;
    MultiPoly num_;
    std::vector<unsigned> den_;
};

}  // namespace quasicox
