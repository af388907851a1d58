#pragma once

#include <memory>
#include <string>
#include <vector>

#include "quasicox/quasi.hpp"

namespace quasicox {

// Exact rational function in t, kept reduced with den(0) = 1, together with
// power-series expansion on demand.
class GradedSeries {
public:
    GradedSeries() : num_(), den_(UniPoly<Scalar>::constant(Scalar(1))) {}
    GradedSeries(UniPoly<Scalar> num, UniPoly<Scalar> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::invalid_argument("GradedSeries: zero denominator");
        reduce();
    }
    static GradedSeries from_polynomial(UniPoly<Scalar> p) {
        return GradedSeries(std::move(p), UniPoly<Scalar>::constant(Scalar(1)));
    }

    const UniPoly<Scalar>& num() const { return num_; }
    const UniPoly<Scalar>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
        return GradedSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
        return GradedSeries(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        return GradedSeries(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend GradedSeries operator*(const Scalar& s, const GradedSeries& a) {
        return GradedSeries(s * a.num_, a.den_);
    }
    GradedSeries shifted(unsigned k) const { return GradedSeries(num_.shifted(k), den_); }

    friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const GradedSeries& a, const GradedSeries& b) { return !(a == b); }

    // first N+1 power-series coefficients
    std::vector<Scalar> coefficients(unsigned N) const {
        std::vector<Scalar> a(N + 1, Scalar(0));
        for (unsigned j = 0; j <= N; ++j) {
            Scalar v = num_.coeff(j);
            for (unsigned i = 1; i <= j && i <= static_cast<unsigned>(den_.degree()); ++i)
                v -= den_.coeff(i) * a[j - i];
            a[j] = v;  // den_(0) == 1 after normalization
        }
        return a;
    }

    std::string str() const { return "(" + num_.str() + ") / (" + den_.str() + ")"; }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = UniPoly<Scalar>::constant(Scalar(1));
            return;
        }
        const UniPoly<Scalar> g = UniPoly<Scalar>::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        const Scalar c0 = den_.coeff(0);
        if (c0.is_zero())
            throw std::invalid_argument("GradedSeries: pole at t = 0 is not a graded series");
        const Scalar inv = c0.inverse();
        num_ = inv * num_;
        den_ = inv * den_;
    }

    UniPoly<Scalar> num_, den_;
};

// Product over the fundamental degrees of (1 - t^{d_i}).
inline UniPoly<Scalar> poincare_denominator(const CoxeterDatum& W) {
    UniPoly<Scalar> out = UniPoly<Scalar>::constant(Scalar(1));
    for (unsigned d : W.degrees()) {
        std::vector<Scalar> f(d + 1, Scalar(0));
        f[0] = Scalar(1);
        f[d] = Scalar(-1);
        out *= UniPoly<Scalar>(std::move(f));
    }
    return out;
}

// Graded multiplicity of the irreducible tau in the polynomial ring:
// (1/|W|) sum_w chi_tau(w) / det(1 - t w), summed per conjugacy class.
inline GradedSeries isotypic_series(const CoxeterDatum& W, size_t tau) {
    if (tau >= W.character_table().size())
        throw std::invalid_argument("isotypic_series: no such irreducible");
    GradedSeries acc;
    for (size_t c = 0; c < W.classes().size(); ++c) {
        const Scalar weight = Scalar(static_cast<long>(W.classes()[c].size())) *
                              W.character_table()[tau].values[c];
        acc = acc + GradedSeries(UniPoly<Scalar>::constant(weight), W.char_poly(c));
    }
    return Scalar(Rational(1, static_cast<long>(W.order()))) * acc;
}

// dim of the s-fixed subspace of tau, for a reflection s: (chi(1) + chi(s))/2.
inline unsigned invariant_dim_at_reflection(const CoxeterDatum& W, size_t tau, size_t s) {
    const Scalar two_d = Scalar(static_cast<long>(W.character_table()[tau].degree)) +
                         W.char_value(tau, W.reflection_element(s));
    const Rational v = (Scalar(Rational(1, 2)) * two_d).rational_value();
    return static_cast<unsigned>(v.to_long());
}

// The integer xi_m(tau): d_tau * xi = sum_s 2 m_s (d_tau - d_{tau,s}).
inline long xi_scalar(const CoxeterDatum& W, size_t tau, const Multiplicity& m) {
    const long d = W.character_table()[tau].degree;
    Rational acc(0);
    for (size_t s = 0; s < W.num_reflections(); ++s) {
        const long dts = invariant_dim_at_reflection(W, tau, s);
        acc += Rational(2 * static_cast<long>(m.of_reflection(s))) * Rational(d - dts);
    }
    const Rational xi = acc / Rational(d);
    if (!xi.is_integer())
        throw theorem_violation("xi_scalar: non-integer value for " + W.name().str() +
                                ", irreducible #" + std::to_string(tau));
    return xi.to_long();
}

// K_tau(t) = chi_tau(t) * prod (1 - t^{d_i}); a polynomial with nonnegative
// integer coefficients and degree at most |Sigma|.
inline UniPoly<Scalar> kostka_polynomial(const CoxeterDatum& W, size_t tau) {
    const GradedSeries chi = isotypic_series(W, tau);
    const UniPoly<Scalar> prod = chi.num() * poincare_denominator(W);
    auto [q, rem] = UniPoly<Scalar>::divmod(prod, chi.den());
    if (!rem.is_zero())
        throw theorem_violation("kostka_polynomial: series is not polynomial after clearing degrees");
    for (int j = 0; j <= q.degree(); ++j) {
        const Scalar& c = q.coeff(j);
        if (!c.is_rational() || !c.rational_value().is_integer() || c.rational_value().sign() < 0)
            throw theorem_violation("kostka_polynomial: coefficients must be nonnegative integers");
    }
    if (q.degree() > static_cast<int>(W.num_reflections()))
        throw theorem_violation("kostka_polynomial: degree exceeds the number of reflections");
    return q;
}

// Index of tau tensored with the determinant character.
inline size_t tensor_with_sign(const CoxeterDatum& W, size_t tau) {
    const auto& tbl = W.character_table();
    std::vector<Scalar> wanted(tbl[tau].values);
    for (size_t c = 0; c < wanted.size(); ++c) wanted[c] *= tbl[W.sign_char()].values[c];
    for (size_t t = 0; t < tbl.size(); ++t)
        if (tbl[t].values == wanted) return t;
    throw std::logic_error("tensor_with_sign: character table is not closed under the sign twist");
}

// Everything Eq.-(1)-shaped consumers need about one irreducible.
struct IsotypicData {
    size_t tau = 0;
    unsigned degree = 0;                     // d_tau
    std::vector<unsigned> invariant_dims;    // d_{tau,s}, one per reflection orbit
    long xi = 0;                             // xi_m(tau)
    GradedSeries chi;                        // graded multiplicity series
    UniPoly<Scalar> kostka;                  // K_tau(t)
};

inline std::vector<IsotypicData> isotypic_data(const CoxeterDatum& W, const Multiplicity& m) {
    std::vector<IsotypicData> out;
    for (size_t tau = 0; tau < W.character_table().size(); ++tau) {
        IsotypicData d;
        d.tau = tau;
        d.degree = W.character_table()[tau].degree;
        for (const auto& orbit : W.reflection_orbits())
            d.invariant_dims.push_back(invariant_dim_at_reflection(W, tau, orbit[0]));
        d.xi = xi_scalar(W, tau, m);
        d.chi = isotypic_series(W, tau);
        d.kostka = kostka_polynomial(W, tau);
        out.push_back(std::move(d));
    }
    return out;
}

struct HilbertFormulaResult {
    UniPoly<Rational> P;   // sum_tau d_tau t^{xi_m(tau)} K_tau(t)
    GradedSeries series;   // P / prod(1 - t^{d_i})
};

// The character-formula Hilbert series of the quasi-invariants.
inline HilbertFormulaResult hilbert_formula(const CoxeterDatum& W, const Multiplicity& m) {
    UniPoly<Scalar> P;
    for (size_t tau = 0; tau < W.character_table().size(); ++tau) {
        const long xi = xi_scalar(W, tau, m);
        const UniPoly<Scalar> K = kostka_polynomial(W, tau);
        P += Scalar(static_cast<long>(W.character_table()[tau].degree)) *
             K.shifted(static_cast<unsigned>(xi));
    }
    UniPoly<Rational> Pq;
    for (int j = 0; j <= P.degree(); ++j) {
        const Scalar& c = P.coeff(j);
        if (!c.is_rational() || !c.rational_value().is_integer() || c.rational_value().sign() < 0)
            throw theorem_violation("hilbert_formula: P_m must have nonnegative integer coefficients");
        Pq.set_coeff(static_cast<unsigned>(j), c.rational_value());
    }
    GradedSeries series(P, poincare_denominator(W));
    return {std::move(Pq), std::move(series)};
}

struct GorensteinReport {
    UniPoly<Rational> P;  // the numerator polynomial P_m
    unsigned exponent = 0;    // xi_m(eps) + |Sigma|
    long stanley_l = 0;       // h(1/t) = (-1)^n t^l h(t)
    bool palindromic = false;
};

// Verifies P_m(t) = t^(xi_m(eps)+|Sigma|) P_m(1/t) and reports the Stanley
// exponent l = sum d_i - (xi_m(eps) + |Sigma|).
inline GorensteinReport gorenstein_certificate(const CoxeterDatum& W, const Multiplicity& m) {
    GorensteinReport rep;
    rep.P = hilbert_formula(W, m).P;
    const long xi_eps = xi_scalar(W, W.sign_char(), m);
    rep.exponent = static_cast<unsigned>(xi_eps) + static_cast<unsigned>(W.num_reflections());
    long sum_d = 0;
    for (unsigned d : W.degrees()) sum_d += d;
    rep.stanley_l = sum_d - static_cast<long>(rep.exponent);
    rep.palindromic = rep.P.degree() == static_cast<int>(rep.exponent);
    if (rep.palindromic)
        for (unsigned j = 0; j <= rep.exponent && rep.palindromic; ++j)
            if (rep.P.coeff(j) != rep.P.coeff(rep.exponent - j)) rep.palindromic = false;
    if (!rep.palindromic)
        throw theorem_violation("gorenstein_certificate: P_m is not palindromic for " +
                                W.name().str() + ", m=" + m.str());
    return rep;
}

struct FreenessReport {
    std::vector<unsigned> generator_degrees;  // exponents with multiplicity
    size_t count = 0;                         // equals |W| once N covers deg P_m
};

// Truncated freeness certificate: hilbert_direct * prod(1 - t^{d_i}) must have
// nonnegative integer coefficients summing to |W|.
inline FreenessReport freeness_certificate(const std::shared_ptr<const CoxeterDatum>& W,
                                           const Multiplicity& m, unsigned N) {
    const long xi_eps = xi_scalar(*W, W->sign_char(), m);
    const unsigned need = static_cast<unsigned>(xi_eps) + static_cast<unsigned>(W->num_reflections());
    if (N < need)
        throw std::invalid_argument("freeness_certificate: truncation " + std::to_string(N) +
                                    " is below the numerator degree " + std::to_string(need));
    const std::vector<unsigned> dims = hilbert_direct(QuasiInvariantProblem(W, m, N));
    const UniPoly<Scalar> denom = poincare_denominator(*W);
    FreenessReport rep;
    for (unsigned j = 0; j <= N; ++j) {
        Scalar c(0);
        for (unsigned i = 0; i <= j && i <= static_cast<unsigned>(denom.degree()); ++i)
            c += denom.coeff(i) * Scalar(Rational(static_cast<long>(dims[j - i])));
        if (!c.is_rational() || !c.rational_value().is_integer() || c.rational_value().sign() < 0)
            throw theorem_violation("freeness_certificate: negative coefficient at degree " +
                                    std::to_string(j) + " for " + W->name().str());
        const long v = c.rational_value().to_long();
        if (v > 0 && j > need)
            throw theorem_violation("freeness_certificate: generator above the numerator degree");
        for (long r = 0; r < v; ++r) rep.generator_degrees.push_back(j);
    }
    rep.count = rep.generator_degrees.size();
    if (rep.count != W->order())
        throw theorem_violation("freeness_certificate: rank " + std::to_string(rep.count) +
                                " does not match the group order for " + W->name().str());
    return rep;
}

}  // namespace quasicox
