#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operators.hpp"

namespace quasicox {

// P(k,x)·exp((k,x)): a polynomial in the 2n variables k_1..k_n, x_1..x_n
// (k block first).  Operators in x act exactly on the polynomial part:
// ∂_{x_i} becomes ∂_{x_i} + k_i, multiplication by x_i is literal.
class ExpPolynomial {
public:
    ExpPolynomial(std::shared_ptr<const CoxeterDatum> W, MultiPoly P)
        : W_(std::move(W)), P_(std::move(P)) {
        if (P_.nvars() != 2 * W_->rank())
            throw std::invalid_argument("ExpPolynomial: need a polynomial in (k, x)");
    }

    // plain exp((k,x))
    static ExpPolynomial exponential(std::shared_ptr<const CoxeterDatum> W) {
        MultiPoly one = MultiPoly::constant(2 * W->rank(), Scalar(1));
        return ExpPolynomial(std::move(W), std::move(one));
    }

    const MultiPoly& P() const { return P_; }
    const std::shared_ptr<const CoxeterDatum>& group_data() const { return W_; }
    size_t rank() const { return W_->rank(); }
    bool is_zero() const { return P_.is_zero(); }

    ExpPolynomial x_partial(size_t i) const {
        const size_t n = rank();
        MultiPoly ki = MultiPoly::variable(2 * n, i);
        return ExpPolynomial(W_, P_.derivative(n + i) + ki * P_);
    }

    // multiplication by a polynomial g(x) in the n x-variables
    ExpPolynomial times_x(const MultiPoly& g) const {
        return ExpPolynomial(W_, promote(g, rank(), rank()) * P_);
    }
    // multiplication by a polynomial q(k) in the n k-variables
    ExpPolynomial times_k(const MultiPoly& q) const {
        return ExpPolynomial(W_, promote(q, rank(), 0) * P_);
    }

    // action of an identity-supported operator with polynomial coefficients
    ExpPolynomial apply_operator(const OperatorElement& A) const {
        if (A.group_data() != W_)
            throw std::invalid_argument("ExpPolynomial: operator over a different group");
        ExpPolynomial out(W_, MultiPoly(2 * rank()));
        for (const auto& [w, part] : A.components()) {
            if (w != 0)
                throw std::invalid_argument("ExpPolynomial: operator has group terms");
            for (const auto& [beta, f] : part) {
                ExpPolynomial term = *this;
                for (size_t i = 0; i < beta.size(); ++i)
                    for (unsigned t = 0; t < beta[i]; ++t) term = term.x_partial(i);
                out = out + term.times_x(f.polynomial());
            }
        }
        return out;
    }

    friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
        if (a.W_ != b.W_)
            throw std::invalid_argument("ExpPolynomial: mixing different groups");
        return ExpPolynomial(a.W_, a.P_ + b.P_);
    }
    friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) {
        if (a.W_ != b.W_)
            throw std::invalid_argument("ExpPolynomial: mixing different groups");
        return ExpPolynomial(a.W_, a.P_ - b.P_);
    }
    friend ExpPolynomial operator*(const Scalar& c, const ExpPolynomial& a) {
        return ExpPolynomial(a.W_, c * a.P_);
    }
    bool operator==(const ExpPolynomial& o) const { return W_ == o.W_ && P_ == o.P_; }
    bool operator!=(const ExpPolynomial& o) const { return !(*this == o); }

    // the polynomial part with k/x variable names ("k*x - 1", rank 1)
    std::string str() const {
        const size_t n = rank();
        std::vector<std::string> names(2 * n);
        for (size_t i = 0; i < n; ++i) {
            names[i] = n == 1 ? "k" : "k" + std::to_string(i + 1);
            names[n + i] = n == 1 ? "x" : "x" + std::to_string(i + 1);
        }
        return P_.str(names);
    }

    // an n-variable polynomial moved into the block starting at `offset`
    static MultiPoly promote(const MultiPoly& g, size_t n, size_t offset) {
        if (g.nvars() != n)
            throw std::invalid_argument("ExpPolynomial: promote expects n variables");
        MultiPoly out(2 * n);
        for (const auto& [e, c] : g.terms()) {
            Exponent big(2 * n, 0);
            for (size_t i = 0; i < n; ++i) big[offset + i] = e[i];
            out.add_term(std::move(big), c);
        }
        return out;
    }

private:
    std::shared_ptr<const CoxeterDatum> W_;
    MultiPoly P_;
};

namespace detail {

inline void require_rank1(const CoxeterDatum& W) {
    if (W.rank() != 1)
        throw std::invalid_argument("rank-1 construction needs the order-2 reflection group");
}

}  // namespace detail

// S_m = (x∂-2m+1)(x∂-2m-1)···(x∂-1), the ordered product in normal form.
// Certifies the intertwining relation L_q S_m = S_m q(∂) for q = x^2 and for
// the lowest odd quasi-invariant x^{2m+1} (x^3 when m <= 1).
inline OperatorElement rank1_shift(const std::shared_ptr<const CoxeterDatum>& W, unsigned m,
                                   bool verify = true) {
    detail::require_rank1(*W);
    OperatorElement S = OperatorElement::scalar(W, Scalar(1));
    const MultiPoly x = MultiPoly::variable(1, 0);
    for (unsigned j = m; j >= 1; --j) {
        OperatorElement factor(W);
        factor.add_term(0, Exponent{1}, LocalizedPoly(W, x));
        factor += OperatorElement::scalar(W, Scalar(-static_cast<long>(2 * j - 1)));
        S = S * factor;
    }
    if (verify) {
        const Multiplicity mult = Multiplicity::uniform(*W, m);
        std::vector<MultiPoly> qs{x * x};
        qs.push_back(x.pow(m <= 1 ? 3 : 2 * m + 1));
        for (const MultiPoly& q : qs) {
            const OperatorElement Lq = berest_integral(W, mult, q);
            OperatorElement q_partial(W);
            for (const auto& [e, c] : q.terms())
                q_partial.add_term(0, e, LocalizedPoly::constant(W, c));
            if (Lq * S != S * q_partial)
                throw theorem_violation("rank1_shift: intertwining fails for m = " +
                                        std::to_string(m) + ", q = " + q.str());
        }
    }
    return S;
}

// psi_m = S_m e^{kx}.
inline ExpPolynomial rank1_psi(const std::shared_ptr<const CoxeterDatum>& W, unsigned m) {
    detail::require_rank1(*W);
    return ExpPolynomial::exponential(W).apply_operator(rank1_shift(W, m));
}

// True iff L_q psi = q(k) psi identically, with L_q from Berest's formula.
// Denominators are cleared first so the whole identity lives among
// exponential polynomials: (delta^E L_q) psi = delta^E q(k) psi.
inline bool eigen_check(const ExpPolynomial& psi, const MultiPoly& q, const Multiplicity& m) {
    const auto& W = psi.group_data();
    const OperatorElement Lq = berest_integral(W, m, q);
    std::vector<unsigned> emax(W->num_reflections(), 0);
    for (const auto& [w, part] : Lq.components())
        for (const auto& [beta, f] : part)
            for (size_t s = 0; s < emax.size(); ++s)
                emax[s] = std::max(emax[s], f.denominator()[s]);
    MultiPoly clear = MultiPoly::constant(W->rank(), Scalar(1));
    for (size_t s = 0; s < emax.size(); ++s)
        if (emax[s]) clear *= W->root_form(s).pow(emax[s]);
    const OperatorElement A = OperatorElement::multiplication(W, clear) * Lq;
    const ExpPolynomial lhs = psi.apply_operator(A);
    const ExpPolynomial rhs = psi.times_k(q).times_x(clear);
    return lhs == rhs;
}

// True iff P(k,x) = P(x,k) for the raw product normalization of psi_m.
inline bool symmetry_check(const std::shared_ptr<const CoxeterDatum>& W, unsigned m) {
    const MultiPoly P = rank1_psi(W, m).P();
    Matrix swap(2, 2);
    swap(0, 1) = Scalar(1);
    swap(1, 0) = Scalar(1);
    return P == linear_substitute(P, swap);
}

// Normal-form identity (∂^2 - (2m/x)∂)(x∂-2m+1) = (x∂-2m+1)(∂^2 - (2(m-1)/x)∂).
inline bool rank1_induction_check(const std::shared_ptr<const CoxeterDatum>& W, unsigned m) {
    detail::require_rank1(*W);
    if (m == 0) throw std::invalid_argument("rank1_induction_check: m >= 1");
    auto L_of = [&](unsigned mm) {
        return detail::calogero_L(W, CouplingData::uniform(*W, Scalar(static_cast<long>(mm))));
    };
    OperatorElement factor(W);
    factor.add_term(0, Exponent{1}, LocalizedPoly(W, MultiPoly::variable(1, 0)));
    factor += OperatorElement::scalar(W, Scalar(1 - 2 * static_cast<long>(m)));
    return L_of(m) * factor == factor * L_of(m - 1);
}

}  // namespace quasicox
