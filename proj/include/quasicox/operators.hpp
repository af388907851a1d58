#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "localized.hpp"
#include "quasi.hpp"

namespace quasicox {

// Rational (or field) coupling constants, one per reflection orbit, with the
// derived beta_s = c_s(c_s + 1) used by the Schroedinger-form operator.
class CouplingData {
public:
    CouplingData(const CoxeterDatum& W, std::vector<Scalar> per_orbit)
        : orbit_of_(orbit_map(W)), c_(std::move(per_orbit)) {
        if (c_.size() != W.reflection_orbits().size())
            throw std::invalid_argument("CouplingData: need one value per reflection orbit");
    }
    static CouplingData uniform(const CoxeterDatum& W, const Scalar& c) {
        return CouplingData(W, std::vector<Scalar>(W.reflection_orbits().size(), c));
    }
    static CouplingData from_multiplicity(const CoxeterDatum& W, const Multiplicity& m) {
        std::vector<Scalar> c;
        c.reserve(m.num_orbits());
        for (unsigned v : m.values()) c.emplace_back(static_cast<long>(v));
        return CouplingData(W, std::move(c));
    }

    size_t num_orbits() const { return c_.size(); }
    const Scalar& orbit_value(size_t orbit) const { return c_.at(orbit); }
    const Scalar& of_reflection(size_t s) const { return c_[orbit_of_.at(s)]; }
    Scalar beta_of_reflection(size_t s) const {
        const Scalar& c = of_reflection(s);
        return c * (c + Scalar(1));
    }
    bool integer_valued() const {
        for (const Scalar& c : c_)
            if (!c.is_rational() || c.rational_value().den() != 1) return false;
        return true;
    }
    const std::vector<Scalar>& values() const { return c_; }

    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ",";
            out += c_[i].str();
        }
        return out + ")";
    }

private:
    static std::vector<unsigned> orbit_map(const CoxeterDatum& W) {
        std::vector<unsigned> v(W.num_reflections());
        for (size_t s = 0; s < v.size(); ++s) v[s] = W.orbit_of(s);
        return v;
    }

    std::vector<unsigned> orbit_of_;
    std::vector<Scalar> c_;
};

// Element of A = D(U)⋊W in normal form: sum over group elements w of
// differential operators sum_beta f_{beta,w}(x) ∂^beta w with localized
// coefficients.  Zero coefficients and empty components are always pruned,
// so equality of normal forms is plain map comparison.
class OperatorElement {
public:
    using DiffPart = std::map<Exponent, LocalizedPoly, GradedLexGreater>;
    using Components = std::map<unsigned, DiffPart>;

    explicit OperatorElement(std::shared_ptr<const CoxeterDatum> W) : W_(std::move(W)) {}

    static OperatorElement scalar(std::shared_ptr<const CoxeterDatum> W, const Scalar& c) {
        OperatorElement A(W);
        A.add_term(0, Exponent(W->rank(), 0), LocalizedPoly::constant(A.W_, c));
        return A;
    }
    static OperatorElement multiplication(std::shared_ptr<const CoxeterDatum> W,
                                          const LocalizedPoly& f) {
        OperatorElement A(std::move(W));
        A.add_term(0, Exponent(A.W_->rank(), 0), f);
        return A;
    }
    static OperatorElement multiplication(std::shared_ptr<const CoxeterDatum> W,
                                          const MultiPoly& f) {
        OperatorElement A(W);
        A.add_term(0, Exponent(A.W_->rank(), 0), LocalizedPoly(A.W_, f));
        return A;
    }
    static OperatorElement partial(std::shared_ptr<const CoxeterDatum> W, size_t i) {
        OperatorElement A(std::move(W));
        Exponent beta(A.W_->rank(), 0);
        beta.at(i) = 1;
        A.add_term(0, std::move(beta), LocalizedPoly::constant(A.W_, Scalar(1)));
        return A;
    }
    // The directional derivative ∂_y.
    static OperatorElement direction(std::shared_ptr<const CoxeterDatum> W,
                                     const std::vector<Scalar>& y) {
        OperatorElement A(std::move(W));
        const size_t n = A.W_->rank();
        if (y.size() != n) throw std::invalid_argument("direction: wrong vector length");
        for (size_t i = 0; i < n; ++i) {
            if (y[i].is_zero()) continue;
            Exponent beta(n, 0);
            beta[i] = 1;
            A.add_term(0, std::move(beta), LocalizedPoly::constant(A.W_, y[i]));
        }
        return A;
    }
    static OperatorElement group(std::shared_ptr<const CoxeterDatum> W, unsigned w) {
        OperatorElement A(std::move(W));
        A.add_term(w, Exponent(A.W_->rank(), 0), LocalizedPoly::constant(A.W_, Scalar(1)));
        return A;
    }

    const std::shared_ptr<const CoxeterDatum>& group_data() const { return W_; }
    const Components& components() const { return comp_; }
    bool is_zero() const { return comp_.empty(); }

    void add_term(unsigned w, Exponent beta, LocalizedPoly f) {
        if (f.is_zero()) return;
        auto& slot = comp_[w][std::move(beta)];
        slot += f;
        if (slot.is_zero()) prune();
    }

    // max |beta| over all terms; nullopt for the zero operator.
    std::optional<unsigned> order() const {
        if (comp_.empty()) return std::nullopt;
        unsigned best = 0;
        for (const auto& [w, P] : comp_)
            for (const auto& [beta, f] : P) best = std::max(best, total_degree(beta));
        return best;
    }

    // deg f - |beta| when constant across terms, else nullopt.
    std::optional<long> homogeneity() const {
        if (comp_.empty()) return std::nullopt;
        std::optional<long> h;
        for (const auto& [w, P] : comp_)
            for (const auto& [beta, f] : P) {
                const long d = f.degree() - static_cast<long>(total_degree(beta));
                if (!h) h = d;
                else if (*h != d) return std::nullopt;
            }
        return h;
    }

    OperatorElement operator-() const {
        OperatorElement r(*this);
        for (auto& [w, P] : r.comp_)
            for (auto& [beta, f] : P) f = -f;
        return r;
    }
    friend OperatorElement operator+(const OperatorElement& a, const OperatorElement& b) {
        check_same_group(a, b);
        OperatorElement r(a);
        for (const auto& [w, P] : b.comp_)
            for (const auto& [beta, f] : P) r.comp_[w][beta] += f;
        r.prune();
        return r;
    }
    friend OperatorElement operator-(const OperatorElement& a, const OperatorElement& b) {
        return a + (-b);
    }
    friend OperatorElement operator*(const Scalar& c, const OperatorElement& a) {
        if (c.is_zero()) return OperatorElement(a.W_);
        OperatorElement r(a);
        for (auto& [w, P] : r.comp_)
            for (auto& [beta, f] : P) f = c * f;
        return r;
    }
    OperatorElement& operator+=(const OperatorElement& o) { return *this = *this + o; }
    OperatorElement& operator-=(const OperatorElement& o) { return *this = *this - o; }

    // Normal-form product: pushes each w across B's coefficients by
    // w∘f = (f∘w⁻¹)w and across derivatives by w∂_yw⁻¹ = ∂_{w(y)}, then
    // normal-orders ∂^beta past coefficients with the Leibniz rule.
    friend OperatorElement operator*(const OperatorElement& A, const OperatorElement& B) {
        check_same_group(A, B);
        const CoxeterDatum& W = *A.W_;
        const size_t n = W.rank();
        OperatorElement out(A.W_);
        for (const auto& [w, P] : A.comp_) {
            LinearSubstituter dsub(w == 0 ? Matrix::identity(n)
                                          : W.element(w).transpose());
            for (const auto& [v, Q] : B.comp_) {
                const unsigned uv = W.product(w, v);
                DiffPart Qw;
                if (w == 0) {
                    Qw = Q;
                } else {
                    for (const auto& [gamma, g] : Q) {
                        const LocalizedPoly gw = g.acted(w);
                        const MultiPoly conj =
                            dsub.apply(MultiPoly::monomial(n, gamma, Scalar(1)));
                        for (const auto& [mu, cc] : conj.terms()) {
                            auto& slot = Qw[mu];
                            slot += cc * gw;
                            if (slot.is_zero()) Qw.erase(mu);
                        }
                    }
                }
                leibniz_into(out.comp_[uv], P, Qw);
            }
        }
        out.prune();
        return out;
    }

    // Exact action on a localized function.
    LocalizedPoly apply(const LocalizedPoly& f) const {
        LocalizedPoly out;
        for (const auto& [w, P] : comp_) {
            const LocalizedPoly fw = w == 0 ? f : f.acted(w);
            for (const auto& [beta, g] : P) out += g * derive(fw, beta);
        }
        return out;
    }
    LocalizedPoly apply(const MultiPoly& f) const { return apply(LocalizedPoly(W_, f)); }

    bool operator==(const OperatorElement& o) const { return comp_ == o.comp_; }
    bool operator!=(const OperatorElement& o) const { return !(*this == o); }

    // Normal form text, e.g. "(1)∂x^2 + (-2/x)∂x [e]"; components are tagged
    // [e] for the identity, [s<i>] for reflections, [w<k>] otherwise.
    std::string str() const {
        if (comp_.empty()) return "0";
        const size_t n = W_->rank();
        std::string out;
        for (const auto& [w, P] : comp_) {
            std::string part;
            for (const auto& [beta, f] : P) {
                std::string t = "(" + f.str() + ")";
                for (size_t i = 0; i < n; ++i) {
                    if (beta[i] == 0) continue;
                    t += "∂" + var_name(i, n);
                    if (beta[i] > 1) t += "^" + std::to_string(beta[i]);
                }
                part += (part.empty() ? "" : " + ") + t;
            }
            out += (out.empty() ? "" : " + ") + part + " [" + element_tag(w) + "]";
        }
        return out;
    }

private:
    static void check_same_group(const OperatorElement& a, const OperatorElement& b) {
        if (a.W_ != b.W_)
            throw std::invalid_argument("OperatorElement: mixing different groups");
    }

    std::string element_tag(unsigned w) const {
        if (w == 0) return "e";
        if (W_->is_reflection(w)) return "s" + std::to_string(W_->reflection_position(w));
        return "w" + std::to_string(w);
    }

    static LocalizedPoly derive(const LocalizedPoly& f, const Exponent& beta) {
        LocalizedPoly d = f;
        for (size_t i = 0; i < beta.size(); ++i)
            for (unsigned t = 0; t < beta[i]; ++t) d = d.derivative(i);
        return d;
    }

    // out += P ∘ Q for two identity-component operators:
    // f ∂^beta ∘ g ∂^gamma = sum_{delta<=beta} C(beta,delta) f (∂^{beta-delta}g) ∂^{delta+gamma}.
    static void leibniz_into(DiffPart& out, const DiffPart& P, const DiffPart& Q) {
        for (const auto& [beta, f] : P) {
            const std::vector<Exponent> subs = sub_exponents(beta);
            for (const auto& [gamma, g] : Q) {
                // iterated derivatives of g; odometer order guarantees the
                // predecessor mu - e_i is already present
                std::map<Exponent, LocalizedPoly, GradedLexGreater> dg;
                for (const Exponent& mu : subs) {
                    if (total_degree(mu) == 0) {
                        dg.emplace(mu, g);
                        continue;
                    }
                    size_t i = 0;
                    while (mu[i] == 0) ++i;
                    Exponent prev = mu;
                    prev[i] -= 1;
                    dg.emplace(mu, dg.at(prev).derivative(i));
                }
                for (const Exponent& delta : subs) {
                    Exponent mu(beta.size());
                    Rational binom(1);
                    for (size_t i = 0; i < beta.size(); ++i) {
                        mu[i] = beta[i] - delta[i];
                        binom *= binomial(beta[i], delta[i]);
                    }
                    const LocalizedPoly& dgm = dg.at(mu);
                    if (dgm.is_zero()) continue;
                    Exponent e = delta;
                    for (size_t i = 0; i < e.size(); ++i) e[i] += gamma[i];
                    auto& slot = out[std::move(e)];
                    slot += Scalar(binom) * (f * dgm);
                }
            }
        }
    }

    // All multi-indices delta <= beta componentwise (odometer order).
    static std::vector<Exponent> sub_exponents(const Exponent& beta) {
        std::vector<Exponent> out;
        Exponent d(beta.size(), 0);
        while (true) {
            out.push_back(d);
            size_t i = 0;
            while (i < d.size() && d[i] == beta[i]) d[i++] = 0;
            if (i == d.size()) break;
            d[i] += 1;
        }
        return out;
    }

    void prune() {
        for (auto it = comp_.begin(); it != comp_.end();) {
            auto& P = it->second;
            for (auto jt = P.begin(); jt != P.end();)
                jt = jt->second.is_zero() ? P.erase(jt) : std::next(jt);
            it = P.empty() ? comp_.erase(it) : std::next(it);
        }
    }

    std::shared_ptr<const CoxeterDatum> W_;
    Components comp_;
};

inline OperatorElement commutator(const OperatorElement& a, const OperatorElement& b) {
    return a * b - b * a;
}

// m(A) = sum_w P_w: the differential part, supported on the identity.
inline OperatorElement restrict_invariants(const OperatorElement& A) {
    OperatorElement out(A.group_data());
    for (const auto& [w, P] : A.components())
        for (const auto& [beta, f] : P) out.add_term(0, beta, f);
    return out;
}

// D_y = ∂_y + sum_s c_s (alpha_s, y)/alpha_s · (s - 1).
inline OperatorElement dunkl(std::shared_ptr<const CoxeterDatum> W, const CouplingData& c,
                             const std::vector<Scalar>& y) {
    const size_t n = W->rank();
    if (y.size() != n) throw std::invalid_argument("dunkl: wrong direction length");
    OperatorElement D = OperatorElement::direction(W, y);
    const Exponent none(n, 0);
    for (size_t s = 0; s < W->num_reflections(); ++s) {
        const Scalar& cs = c.of_reflection(s);
        if (cs.is_zero()) continue;
        Scalar pairing(0);
        for (size_t i = 0; i < n; ++i) pairing += W->root(s)[i] * y[i];
        if (pairing.is_zero()) continue;
        std::vector<unsigned> den(W->num_reflections(), 0);
        den[s] = 1;
        LocalizedPoly coeff(W, MultiPoly::constant(n, cs * pairing), std::move(den));
        D.add_term(W->reflection_element(s), none, coeff);
        D.add_term(0, none, -coeff);
    }
    return D;
}

inline OperatorElement dunkl_basis(const std::shared_ptr<const CoxeterDatum>& W,
                                   const CouplingData& c, size_t i) {
    std::vector<Scalar> y(W->rank(), Scalar(0));
    y.at(i) = Scalar(1);
    return dunkl(W, c, y);
}

namespace detail {

// L = Δ - sum_s (2 c_s / alpha_s) ∂_{alpha_s}, built from its displayed form.
inline OperatorElement calogero_L(const std::shared_ptr<const CoxeterDatum>& W,
                                  const CouplingData& c) {
    const size_t n = W->rank();
    OperatorElement L(W);
    for (size_t i = 0; i < n; ++i) {
        Exponent beta(n, 0);
        beta[i] = 2;
        L.add_term(0, std::move(beta), LocalizedPoly::constant(W, Scalar(1)));
    }
    for (size_t s = 0; s < W->num_reflections(); ++s) {
        const Scalar& cs = c.of_reflection(s);
        if (cs.is_zero()) continue;
        for (size_t i = 0; i < n; ++i) {
            const Scalar& ai = W->root(s)[i];
            if (ai.is_zero()) continue;
            std::vector<unsigned> den(W->num_reflections(), 0);
            den[s] = 1;
            Exponent beta(n, 0);
            beta[i] = 1;
            L.add_term(0, std::move(beta),
                       LocalizedPoly(W, MultiPoly::constant(n, Scalar(-2) * cs * ai),
                                     std::move(den)));
        }
    }
    return L;
}

}  // namespace detail

struct CalogeroMoser {
    OperatorElement H;  // Schroedinger form Δ - sum beta_s (alpha_s,alpha_s)/alpha_s^2
    OperatorElement L;  // gauged form Δ - sum (2 c_s/alpha_s) ∂_{alpha_s}
};

// Builds both forms and certifies delta_c H delta_c^{-1} = L symbolically.
// The conjugation only ever needs the logarithmic derivative of
// delta_c = prod alpha_s^{c_s}: each ∂_i conjugates to ∂_i - sum_s c_s alpha_{s,i}/alpha_s,
// which stays inside the localized ring even for non-integer couplings.
inline CalogeroMoser calogero_moser(const std::shared_ptr<const CoxeterDatum>& W,
                                    const CouplingData& c) {
    const size_t n = W->rank();
    OperatorElement H(W);
    for (size_t i = 0; i < n; ++i) {
        Exponent beta(n, 0);
        beta[i] = 2;
        H.add_term(0, std::move(beta), LocalizedPoly::constant(W, Scalar(1)));
    }
    const Exponent none(n, 0);
    for (size_t s = 0; s < W->num_reflections(); ++s) {
        const Scalar beta_s = c.beta_of_reflection(s);
        if (beta_s.is_zero()) continue;
        std::vector<unsigned> den(W->num_reflections(), 0);
        den[s] = 2;
        H.add_term(0, none,
                   LocalizedPoly(W, MultiPoly::constant(n, -beta_s * W->root_norm2(s)),
                                 std::move(den)));
    }
    const OperatorElement L = detail::calogero_L(W, c);

    OperatorElement gauged(W);
    for (size_t i = 0; i < n; ++i) {
        // delta ∂_i delta^{-1} = ∂_i - (∂_i delta)/delta
        OperatorElement B = OperatorElement::partial(W, i);
        for (size_t s = 0; s < W->num_reflections(); ++s) {
            const Scalar& cs = c.of_reflection(s);
            if (cs.is_zero()) continue;
            const Scalar& ai = W->root(s)[i];
            if (ai.is_zero()) continue;
            std::vector<unsigned> den(W->num_reflections(), 0);
            den[s] = 1;
            B.add_term(0, none,
                       LocalizedPoly(W, MultiPoly::constant(n, -cs * ai), std::move(den)));
        }
        gauged += B * B;
    }
    for (size_t s = 0; s < W->num_reflections(); ++s) {
        const Scalar beta_s = c.beta_of_reflection(s);
        if (beta_s.is_zero()) continue;
        std::vector<unsigned> den(W->num_reflections(), 0);
        den[s] = 2;
        gauged.add_term(0, none,
                        LocalizedPoly(W, MultiPoly::constant(n, -beta_s * W->root_norm2(s)),
                                      std::move(den)));
    }
    if (gauged != L)
        throw theorem_violation("calogero_moser: gauge conjugation mismatch for " +
                                W->name().str() + " with c = " + c.str());
    return {H, L};
}

// (ad L)^k A as a normal-form element.
inline OperatorElement ad_power(const OperatorElement& L, OperatorElement A, unsigned k) {
    for (unsigned i = 0; i < k; ++i) A = commutator(L, A);
    return A;
}

// Berest's formula L_q = (1/(2^d d!)) (ad L)^d q for homogeneous q in Q_m.
// Certifies after the fact that [L_q, L] = 0, that (ad L)^{d+1} q = 0, and
// that every intermediate commutator is homogeneous of the expected degree.
inline OperatorElement berest_integral(const std::shared_ptr<const CoxeterDatum>& W,
                                       const Multiplicity& m, const MultiPoly& q) {
    if (q.is_zero() || !q.is_homogeneous())
        throw std::invalid_argument("berest_integral: q must be nonzero homogeneous");
    const unsigned d = *q.degree();
    if (!is_quasi_invariant(q, QuasiInvariantProblem(W, m, d)))
        throw std::invalid_argument("berest_integral: not in Q_m");

    const OperatorElement L = detail::calogero_L(W, CouplingData::from_multiplicity(*W, m));
    OperatorElement X = OperatorElement::multiplication(W, q);
    for (unsigned k = 1; k <= d; ++k) {
        X = commutator(L, X);
        if (X.homogeneity() != std::optional<long>(static_cast<long>(d) - 2 * k))
            throw theorem_violation("berest_integral: inhomogeneous commutator at step " +
                                    std::to_string(k) + " for q = " + q.str());
    }
    if (!ad_power(L, X, 1).is_zero())
        throw theorem_violation("berest_integral: (ad L)^{d+1} q != 0 for q = " + q.str());
    Rational scale(1);
    for (unsigned k = 1; k <= d; ++k) scale *= Rational(2) * Rational(k);
    return Scalar(Rational(1) / scale) * X;
}

struct Sl2Report {
    OperatorElement E, F, H;
    Scalar C;  // H = -sum x_i ∂_i + C
};

// F = sum x_i^2/2, E = -L/2, H = [E,F]; certifies [H,E] = 2E and [H,F] = -2F
// and extracts the constant from H + sum x_i ∂_i.
inline Sl2Report sl2_triple(const std::shared_ptr<const CoxeterDatum>& W,
                            const CouplingData& c) {
    const size_t n = W->rank();
    MultiPoly fpoly(n);
    for (size_t i = 0; i < n; ++i)
        fpoly += MultiPoly::variable(n, i) * MultiPoly::variable(n, i);
    const OperatorElement F =
        OperatorElement::multiplication(W, Scalar(Rational(1, 2)) * fpoly);
    const OperatorElement E = Scalar(Rational(-1, 2)) * detail::calogero_L(W, c);
    const OperatorElement H = commutator(E, F);
    if (commutator(H, E) != Scalar(2) * E || commutator(H, F) != Scalar(-2) * F)
        throw theorem_violation("sl2_triple: bracket relations fail for " + W->name().str());

    OperatorElement euler(W);
    for (size_t i = 0; i < n; ++i) {
        Exponent beta(n, 0);
        beta[i] = 1;
        euler.add_term(0, std::move(beta), LocalizedPoly(W, MultiPoly::variable(n, i)));
    }
    const OperatorElement rest = H + euler;
    Scalar C(0);
    if (!rest.is_zero()) {
        const auto& comps = rest.components();
        const bool single = comps.size() == 1 && comps.begin()->first == 0 &&
                            comps.begin()->second.size() == 1;
        if (!single)
            throw theorem_violation("sl2_triple: H is not -Euler + constant");
        const auto& [beta, f] = *comps.begin()->second.begin();
        if (total_degree(beta) != 0 || !f.is_polynomial() || f.numerator().degree() != 0u)
            throw theorem_violation("sl2_triple: H is not -Euler + constant");
        C = f.numerator().terms().begin()->second;
    }
    return {E, F, H, C};
}

struct CherednikReport {
    // coefficient of reflection s in [D_{x_i}, x_j], flattened at i*n + j
    std::vector<std::vector<Scalar>> reflection_coeff;
    bool shape_ok = true;        // only identity + reflection parts, no ∂-terms
    bool identity_delta_ok = true;  // identity part equals delta_ij
    bool formula_ok = true;      // coefficients equal -2 c_s (alpha_s,e_i)(alpha_s,e_j)/(alpha_s,alpha_s)
    bool xx_ok = true;
    bool dd_ok = true;
    bool equivariance_ok = true;  // w D_y w^{-1} = D_{w(y)} for every w
};

inline CherednikReport cherednik_relation_check(const std::shared_ptr<const CoxeterDatum>& W,
                                                const CouplingData& c) {
    const size_t n = W->rank();
    CherednikReport rep;
    std::vector<OperatorElement> D;
    D.reserve(n);
    for (size_t i = 0; i < n; ++i) D.push_back(dunkl_basis(W, c, i));
    std::vector<OperatorElement> X;
    X.reserve(n);
    for (size_t i = 0; i < n; ++i)
        X.push_back(OperatorElement::multiplication(W, MultiPoly::variable(n, i)));

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!commutator(X[i], X[j]).is_zero()) rep.xx_ok = false;
            if (j > i && !commutator(D[i], D[j]).is_zero()) rep.dd_ok = false;
        }

    rep.reflection_coeff.assign(n * n, std::vector<Scalar>(W->num_reflections(), Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const OperatorElement K = commutator(D[i], X[j]);
            Scalar id_part(0);
            for (const auto& [w, P] : K.components()) {
                for (const auto& [beta, f] : P) {
                    if (total_degree(beta) != 0 || !f.is_polynomial() ||
                        f.numerator().degree() != 0u) {
                        rep.shape_ok = false;
                        continue;
                    }
                    const Scalar value = f.numerator().terms().begin()->second;
                    if (w == 0) id_part = value;
                    else if (W->is_reflection(w))
                        rep.reflection_coeff[i * n + j][W->reflection_position(w)] = value;
                    else rep.shape_ok = false;
                }
            }
            if (id_part != (i == j ? Scalar(1) : Scalar(0))) rep.identity_delta_ok = false;
            for (size_t s = 0; s < W->num_reflections(); ++s) {
                const Scalar expected = Scalar(-2) * c.of_reflection(s) * W->root(s)[i] *
                                        W->root(s)[j] * W->root_norm2(s).inverse();
                if (rep.reflection_coeff[i * n + j][s] != expected) rep.formula_ok = false;
            }
        }

    for (unsigned w = 0; w < W->order(); ++w) {
        const OperatorElement gw = OperatorElement::group(W, w);
        const OperatorElement gw_inv = OperatorElement::group(W, W->inverse(w));
        for (size_t i = 0; i < n; ++i) {
            std::vector<Scalar> wy(n);
            for (size_t r = 0; r < n; ++r) wy[r] = W->element(w)(r, i);
            if (gw * D[i] * gw_inv != dunkl(W, c, wy)) rep.equivariance_ok = false;
        }
    }
    return rep;
}

// W-average; the image is the invariant subring and the map is idempotent.
inline MultiPoly spherical_project(const CoxeterDatum& W, const MultiPoly& f) {
    MultiPoly sum(f.nvars());
    for (unsigned w = 0; w < W.order(); ++w) sum += W.act(w, f);
    return Scalar(Rational(1, static_cast<long>(W.order()))) * sum;
}

struct PbwReport {
    bool normal_order_ok = true;  // compose agrees with letterwise application
    bool independent = true;      // ordered monomials x^I D^J w act independently
    size_t monomial_count = 0;
    size_t space_dim = 0;
};

// Finite shadow of the PBW theorem: normal-ordering words agrees with direct
// application on polynomials of degree <= poly_degree, and the ordered
// monomials x^I D^J w with |I| + |J| <= word_budget act linearly
// independently on that space.
inline PbwReport pbw_shadow(const std::shared_ptr<const CoxeterDatum>& W,
                            const CouplingData& c, unsigned poly_degree = 6,
                            unsigned word_budget = 2, unsigned seed = 1) {
    const size_t n = W->rank();
    PbwReport rep;

    // letters: coordinate multiplications, Dunkl operators, reflections
    std::vector<OperatorElement> letters;
    for (size_t i = 0; i < n; ++i)
        letters.push_back(OperatorElement::multiplication(W, MultiPoly::variable(n, i)));
    for (size_t i = 0; i < n; ++i) letters.push_back(dunkl_basis(W, c, i));
    for (size_t s = 0; s < W->num_reflections(); ++s)
        letters.push_back(OperatorElement::group(W, W->reflection_element(s)));

    std::vector<MultiPoly> probes;
    for (unsigned r = 0; r <= 3; ++r)
        for (const Exponent& e : detail::monomials_of_degree(n, r))
            probes.push_back(MultiPoly::monomial(n, e, Scalar(1)));

    unsigned long long state = seed * 2862933555777941757ULL + 3037000493ULL;
    auto next = [&state](unsigned bound) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<unsigned>((state >> 33) % bound);
    };
    for (unsigned trial = 0; trial < 12; ++trial) {
        const unsigned len = 2 + next(3);
        std::vector<unsigned> word(len);
        for (auto& l : word) l = next(static_cast<unsigned>(letters.size()));
        OperatorElement composite = letters[word[0]];
        for (unsigned k = 1; k < len; ++k) composite = composite * letters[word[k]];
        for (const MultiPoly& p : probes) {
            LocalizedPoly direct(W, p);
            for (unsigned k = len; k-- > 0;) direct = letters[word[k]].apply(direct);
            if (composite.apply(p) != direct) rep.normal_order_ok = false;
        }
    }

    // ordered monomials acting on the monomial basis of degree <= poly_degree
    std::vector<Exponent> space;
    for (unsigned r = 0; r <= poly_degree; ++r)
        for (const Exponent& e : detail::monomials_of_degree(n, r)) space.push_back(e);
    std::vector<Exponent> image;
    std::map<Exponent, size_t> image_index;
    for (unsigned r = 0; r <= poly_degree + word_budget; ++r)
        for (const Exponent& e : detail::monomials_of_degree(n, r)) {
            image_index.emplace(e, image.size());
            image.push_back(e);
        }

    std::vector<std::vector<LocalizedPoly>> columns;  // per operator, image of each probe
    std::vector<Exponent> ij;
    for (unsigned r = 0; r <= word_budget; ++r)
        for (const Exponent& e : detail::monomials_of_degree(2 * n, r)) ij.push_back(e);
    for (const Exponent& e : ij) {
        const Exponent I(e.begin(), e.begin() + n);
        const Exponent J(e.begin() + n, e.end());
        OperatorElement DJ = OperatorElement::scalar(W, Scalar(1));
        for (size_t i = 0; i < n; ++i)
            for (unsigned t = 0; t < J[i]; ++t) DJ = DJ * dunkl_basis(W, c, i);
        const OperatorElement XI =
            OperatorElement::multiplication(W, MultiPoly::monomial(n, I, Scalar(1)));
        const OperatorElement XD = XI * DJ;
        for (unsigned w = 0; w < W->order(); ++w) {
            const OperatorElement op = XD * OperatorElement::group(W, w);
            std::vector<LocalizedPoly> col;
            col.reserve(space.size());
            for (const Exponent& p : space)
                col.push_back(op.apply(MultiPoly::monomial(n, p, Scalar(1))));
            columns.push_back(std::move(col));
        }
    }
    rep.monomial_count = columns.size();
    rep.space_dim = space.size();

    Matrix M(space.size() * image.size(), columns.size());
    for (size_t col = 0; col < columns.size(); ++col)
        for (size_t p = 0; p < space.size(); ++p) {
            const LocalizedPoly& val = columns[col][p];
            if (val.is_zero()) continue;
            for (const auto& [e, coeff] : val.polynomial().terms())
                M(p * image.size() + image_index.at(e), col) = coeff;
        }
    rep.independent = exact_kernel(M).empty();
    return rep;
}

}  // namespace quasicox
