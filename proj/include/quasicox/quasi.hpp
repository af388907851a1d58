#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "quasicox/coxeter.hpp"
#include "quasicox/errors.hpp"

namespace quasicox {

// A truncated quasi-invariant computation: group, multiplicities, cutoff.
struct QuasiInvariantProblem {
    std::shared_ptr<const CoxeterDatum> W;
    Multiplicity m;
    unsigned N = 0;

    QuasiInvariantProblem(std::shared_ptr<const CoxeterDatum> group, Multiplicity mult, unsigned trunc)
        : W(std::move(group)), m(std::move(mult)), N(trunc) {}
};

// Per-degree bases of the quasi-invariant components, echelonized over
// graded-lex monomial coordinates.
struct GradedBasis {
    std::vector<std::vector<MultiPoly>> by_degree;  // index r = 0..N
};

namespace detail {

// Monomials of the given total degree in descending graded-lex order.
inline std::vector<Exponent> monomials_of_degree(size_t nvars, unsigned r) {
    std::vector<Exponent> out;
    Exponent e(nvars, 0);
    const std::function<void(size_t, unsigned)> rec = [&](size_t pos, unsigned left) {
        if (pos + 1 == nvars) {
            e[pos] = left;
            out.push_back(e);
            return;
        }
        for (unsigned v = left + 1; v-- > 0;) {
            e[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    if (nvars == 0) throw std::invalid_argument("monomials_of_degree: no variables");
    rec(0, r);
    return out;
}

// Cached per-reflection data for the divisibility constraints.
struct ReflectionFrames {
    std::vector<std::unique_ptr<LinearAdapter>> adapters;

    explicit ReflectionFrames(const CoxeterDatum& W) : adapters(W.num_reflections()) {
        for (size_t s = 0; s < W.num_reflections(); ++s)
            adapters[s] = std::make_unique<LinearAdapter>(W.root(s));
    }
};

}  // namespace detail

// true iff q - q∘s is divisible by alpha_s^(2 m_s + 1) for every reflection s.
inline bool is_quasi_invariant(const MultiPoly& q, const QuasiInvariantProblem& P) {
    const CoxeterDatum& W = *P.W;
    if (q.nvars() != W.rank())
        throw std::invalid_argument("is_quasi_invariant: polynomial rank does not match the group");
    for (size_t s = 0; s < W.num_reflections(); ++s) {
        const unsigned ms = P.m.of_reflection(s);
        if (ms == 0) continue;  // q - q∘s always vanishes on the mirror
        const MultiPoly diff = q - W.compose(q, W.reflection_element(s));
        const auto val = linear_valuation(diff, W.root(s));
        if (val.has_value() && *val < 2 * ms + 1) return false;
    }
    return true;
}

// Kernel bases of the per-degree divisibility constraints, r = 0..N.
inline GradedBasis graded_basis(const QuasiInvariantProblem& P) {
    const CoxeterDatum& W = *P.W;
    const size_t n = W.rank();
    detail::ReflectionFrames frames(W);

    GradedBasis out;
    out.by_degree.reserve(P.N + 1);
    for (unsigned r = 0; r <= P.N; ++r) {
        const auto monos = detail::monomials_of_degree(n, r);
        const size_t cols = monos.size();
        // rows: for each reflection with m_s > 0 and each adapted monomial with
        // u1-exponent <= 2 m_s, the matching coefficient of q - q∘s must vanish
        std::vector<std::vector<Scalar>> rows;
        std::map<std::pair<size_t, Exponent>, size_t> row_of;  // (s, u-monomial) -> row
        for (size_t s = 0; s < W.num_reflections(); ++s) {
            const unsigned ms = P.m.of_reflection(s);
            if (ms == 0) continue;
            const unsigned w = W.reflection_element(s);
            for (size_t j = 0; j < cols; ++j) {
                const MultiPoly mono = MultiPoly::monomial(n, monos[j], Scalar(1));
                const MultiPoly diff = mono - W.compose(mono, w);
                if (diff.is_zero()) continue;
                const MultiPoly adapted = frames.adapters[s]->forward(diff);
                for (const auto& [e, c] : adapted.terms()) {
                    if (e[0] > 2 * ms) continue;
                    auto [it, fresh] = row_of.emplace(std::make_pair(s, e), rows.size());
                    if (fresh) rows.emplace_back(cols, Scalar(0));
                    rows[it->second][j] += c;
                }
            }
        }
        std::vector<MultiPoly> basis;
        if (rows.empty()) {
            // no constraints: the whole degree component
            basis.reserve(cols);
            for (const auto& e : monos) basis.push_back(MultiPoly::monomial(n, e, Scalar(1)));
        } else {
            Matrix A(rows.size(), cols);
            for (size_t i = 0; i < rows.size(); ++i)
                for (size_t j = 0; j < cols; ++j) A(i, j) = rows[i][j];
            for (const auto& v : exact_kernel(A)) {
                MultiPoly q(n);
                for (size_t j = 0; j < cols; ++j)
                    if (!v[j].is_zero()) q.add_term(monos[j], v[j]);
                basis.push_back(std::move(q));
            }
        }
        out.by_degree.push_back(std::move(basis));
    }
    return out;
}

// dim Q_m[r] for r = 0..N.
inline std::vector<unsigned> hilbert_direct(const QuasiInvariantProblem& P) {
    const GradedBasis basis = graded_basis(P);
    std::vector<unsigned> dims;
    dims.reserve(basis.by_degree.size());
    for (const auto& b : basis.by_degree) dims.push_back(static_cast<unsigned>(b.size()));
    return dims;
}

// Product of alpha_s^(2 m_s + 1) over all reflections.
inline MultiPoly delta_power(const QuasiInvariantProblem& P) {
    const CoxeterDatum& W = *P.W;
    MultiPoly out = MultiPoly::constant(W.rank(), Scalar(1));
    for (size_t s = 0; s < W.num_reflections(); ++s)
        out *= W.root_form(s).pow(2 * P.m.of_reflection(s) + 1);
    return out;
}

// f * delta_{2m+1} is always quasi-invariant; this evaluates that predicate.
inline bool delta_check(const QuasiInvariantProblem& P, const MultiPoly& f) {
    return is_quasi_invariant(f * delta_power(P), P);
}

// A quasi-invariant separating z from y: p(z) != 0, p(y) = 0.  Built as
// prod_{s z != z} alpha_s^(2 m_s + 1) * prod_{w in W_z} f(w x) with f an
// affine-linear form vanishing at y; f is picked from a deterministic sequence
// of coordinate forms, skipping any that would vanish at z.
inline MultiPoly separating_polynomial(const std::vector<Rational>& z, const std::vector<Rational>& y,
                                       const QuasiInvariantProblem& P) {
    const CoxeterDatum& W = *P.W;
    const size_t n = W.rank();
    if (z.size() != n || y.size() != n)
        throw std::invalid_argument("separating_polynomial: point dimension does not match the group");
    if (z == y) throw std::invalid_argument("separating_polynomial: the two points must differ");

    std::vector<Scalar> zs(n), ys(n);
    for (size_t i = 0; i < n; ++i) {
        zs[i] = Scalar(z[i]);
        ys[i] = Scalar(y[i]);
    }

    // stabilizer W_z and the mirror factor over reflections moving z
    MultiPoly p = MultiPoly::constant(n, Scalar(1));
    std::vector<unsigned> stabilizer;
    for (unsigned w = 0; w < W.order(); ++w) {
        if (W.element(w).apply(zs) == zs) stabilizer.push_back(w);
    }
    for (size_t s = 0; s < W.num_reflections(); ++s) {
        const unsigned elem = W.reflection_element(s);
        if (W.element(elem).apply(zs) == zs) continue;
        p *= W.root_form(s).pow(2 * P.m.of_reflection(s) + 1);
    }

    // f(x) = x_i - y_i for the first coordinate where z and y differ
    size_t pick = n;
    for (size_t i = 0; i < n; ++i)
        if (z[i] != y[i]) {
            pick = i;
            break;
        }
    if (pick == n) throw std::logic_error("separating_polynomial: no separating coordinate");
    const MultiPoly f = MultiPoly::variable(n, pick) - MultiPoly::constant(n, Scalar(y[pick]));

    for (unsigned w : stabilizer) p *= W.compose(f, w);

    if (p.eval(zs).is_zero() || !p.eval(ys).is_zero())
        throw std::logic_error("separating_polynomial: construction failed the separation check");
    return p;
}

}  // namespace quasicox
