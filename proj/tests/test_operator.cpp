#include <catch2/catch_amalgamated.hpp>

#include <quasicox/operators.hpp>
#include <quasicox/quasi.hpp>

using namespace quasicox;

namespace {

MultiPoly P(const std::string& text, size_t nvars) { return MultiPoly::parse(text, nvars); }

// Deterministic rational coupling vectors for the property checks.
std::vector<CouplingData> sample_couplings(const CoxeterDatum& W, unsigned count) {
    static const Rational pool[] = {Rational(1),     Rational(2),      Rational(1, 2),
                                    Rational(-1, 3), Rational(3),      Rational(5, 2),
                                    Rational(2, 3),  Rational(-2)};
    std::vector<CouplingData> out;
    unsigned long long state = 0x9e3779b97f4a7c15ULL ^ W.order();
    for (unsigned t = 0; t < count; ++t) {
        std::vector<Scalar> c;
        for (size_t o = 0; o < W.reflection_orbits().size(); ++o) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            c.emplace_back(pool[(state >> 33) % 8]);
        }
        out.emplace_back(W, std::move(c));
    }
    return out;
}

OperatorElement conj_by(const std::shared_ptr<const CoxeterDatum>& W, unsigned w,
                        const OperatorElement& A) {
    return OperatorElement::group(W, w) * A * OperatorElement::group(W, W->inverse(w));
}

// W-symmetrized operator (an element of A^W).
OperatorElement symmetrize(const std::shared_ptr<const CoxeterDatum>& W,
                           const OperatorElement& A) {
    OperatorElement out(W);
    for (unsigned w = 0; w < W->order(); ++w) out += conj_by(W, w, A);
    return Scalar(Rational(1, static_cast<long>(W->order()))) * out;
}

}  // namespace

TEST_CASE("normal-form basics in rank 1") {
    auto W = build_group("A1");
    const auto x = OperatorElement::multiplication(W, P("x", 1));
    const auto d = OperatorElement::partial(W, 0);
    const auto s = OperatorElement::group(W, W->reflection_element(0));

    // ∂∘x = x∂ + 1 and [∂, x] = 1
    CHECK((d * x).str() == "(x)∂x + (1) [e]");
    CHECK(commutator(d, x) == OperatorElement::scalar(W, Scalar(1)));

    // s∘x = -x·s
    CHECK(s * x == -(x * s));

    // s∘(1/x) = -(1/x)·s
    const auto inv_x =
        OperatorElement::multiplication(W, LocalizedPoly(W, P("1", 1), {1}));
    CHECK(s * inv_x == -(inv_x * s));

    // s² = e, and the identity operator acts trivially
    CHECK(s * s == OperatorElement::scalar(W, Scalar(1)));
    const MultiPoly f = P("x^3 - 2*x", 1);
    CHECK(OperatorElement::scalar(W, Scalar(1)).apply(f) == LocalizedPoly(W, f));
    CHECK(s.apply(f) == LocalizedPoly(W, P("-x^3 + 2*x", 1)));
}

TEST_CASE("order and homogeneity bookkeeping") {
    auto W = build_group("B2");
    auto c = CouplingData::uniform(*W, Scalar(1));
    const auto D0 = dunkl_basis(W, c, 0);
    const auto D1 = dunkl_basis(W, c, 1);
    const auto x0 = OperatorElement::multiplication(W, P("x1", 2));

    CHECK(D0.order() == 1u);
    CHECK(D0.homogeneity() == -1);
    CHECK(x0.homogeneity() == 1);
    CHECK_FALSE(OperatorElement(W).order().has_value());

    // ord(AB) <= ord A + ord B
    const auto AB = D0 * (D1 * x0 * D1);
    REQUIRE(AB.order().has_value());
    CHECK(*AB.order() <= 3u);

    CHECK_THROWS_AS(OperatorElement::multiplication(build_group("A1"), P("x", 1)) + x0,
                    std::invalid_argument);
}

TEST_CASE("compose is associative and compatible with apply") {
    auto W = build_group("I2(3)");
    auto c = CouplingData::uniform(*W, Scalar(Rational(1, 2)));
    const std::vector<OperatorElement> ops = {
        dunkl_basis(W, c, 0),
        OperatorElement::multiplication(W, P("x1*x2", 2)),
        OperatorElement::group(W, W->reflection_element(1)),
        dunkl_basis(W, c, 1),
        OperatorElement::partial(W, 0),
    };
    const MultiPoly probe = P("x1^3 - x2^2 + 2", 2);
    for (size_t i = 0; i < ops.size(); ++i)
        for (size_t j = 0; j < ops.size(); ++j) {
            const auto AB = ops[i] * ops[j];
            CHECK(AB.apply(probe) == ops[i].apply(ops[j].apply(probe)));
            for (size_t k = 0; k < ops.size(); ++k)
                CHECK((ops[i] * ops[j]) * ops[k] == ops[i] * (ops[j] * ops[k]));
        }
}

TEST_CASE("dunkl operator normal form and action") {
    auto W = build_group("A1");

    SECTION("zero coupling is the plain derivative") {
        auto c0 = CouplingData::uniform(*W, Scalar(0));
        CHECK(dunkl_basis(W, c0, 0) == OperatorElement::partial(W, 0));
    }

    SECTION("three-term normal form, pinned") {
        auto c = CouplingData::uniform(*W, Scalar(1));
        CHECK(dunkl_basis(W, c, 0).str() == "(1)∂x + (-1/x) [e] + (1/x) [s0]");
    }

    SECTION("action on polynomials stays polynomial") {
        auto c = CouplingData(*W, {Scalar(Rational(3, 2))});
        const auto D = dunkl_basis(W, c, 0);
        // D(x^2) = 2x: the reflection term cancels on even powers
        CHECK(D.apply(P("x^2", 1)) == LocalizedPoly(W, P("2*x", 1)));
        // D(x) = 1 - 2c
        CHECK(D.apply(P("x", 1)) == LocalizedPoly(W, P("-2", 1)));
    }

    SECTION("linearity in the direction") {
        auto W2 = build_group("B2");
        auto c = CouplingData(*W2, {Scalar(2), Scalar(Rational(1, 3))});
        const std::vector<Scalar> y{Scalar(1), Scalar(-2)};
        const std::vector<Scalar> z{Scalar(Rational(1, 2)), Scalar(1)};
        std::vector<Scalar> yz{y[0] + z[0], y[1] + z[1]};
        CHECK(dunkl(W2, c, yz) == dunkl(W2, c, y) + dunkl(W2, c, z));
    }
}

TEST_CASE("dunkl operators commute for every supported group") {
    for (const std::string& name : CoxeterDatum::default_family()) {
        auto W = build_group(name);
        const size_t n = W->rank();
        INFO(name);
        for (const CouplingData& c : sample_couplings(*W, 3)) {
            std::vector<OperatorElement> D;
            for (size_t i = 0; i < n; ++i) D.push_back(dunkl_basis(W, c, i));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    CHECK(commutator(D[i], D[j]).is_zero());
        }
    }
}

TEST_CASE("restriction to invariants") {
    auto W = build_group("I2(3)");
    auto c = CouplingData::uniform(*W, Scalar(1));

    // m(w) = 1 and m(D_y) = ∂_y
    CHECK(restrict_invariants(OperatorElement::group(W, 3)) ==
          OperatorElement::scalar(W, Scalar(1)));
    CHECK(restrict_invariants(dunkl_basis(W, c, 0)) == OperatorElement::partial(W, 0));

    // m(sum D_i^2) = L
    const auto cm = calogero_moser(W, c);
    OperatorElement sum(W);
    for (size_t i = 0; i < 2; ++i) {
        const auto Di = dunkl_basis(W, c, i);
        sum += Di * Di;
    }
    CHECK(restrict_invariants(sum) == cm.L);

    // m(A) agrees with A on invariant inputs
    const MultiPoly inv = spherical_project(*W, P("x1^4", 2));
    const auto A = sum + OperatorElement::group(W, 2);
    CHECK(A.apply(inv) == restrict_invariants(A).apply(inv));

    // restriction is multiplicative on A^W
    const auto sA = symmetrize(W, dunkl_basis(W, c, 0) * dunkl_basis(W, c, 0));
    const auto sB = symmetrize(
        W, OperatorElement::multiplication(W, P("x1", 2)) * dunkl_basis(W, c, 1));
    for (unsigned w = 0; w < W->order(); ++w) {
        CHECK(conj_by(W, w, sA) == sA);
        CHECK(conj_by(W, w, sB) == sB);
    }
    CHECK(restrict_invariants(sA * sB) ==
          restrict_invariants(sA) * restrict_invariants(sB));
}

TEST_CASE("calogero-moser operator and gauge certificate") {
    SECTION("rank 1, c = 1, both displayed forms") {
        auto W = build_group("A1");
        const auto cm = calogero_moser(W, CouplingData::uniform(*W, Scalar(1)));
        CHECK(cm.L.str() == "(1)∂x^2 + (-2/x)∂x [e]");
        CHECK(cm.H.str() == "(1)∂x^2 + (-2/x^2) [e]");
    }
    SECTION("zero coupling collapses to the Laplacian") {
        auto W = build_group("A3");
        const auto cm = calogero_moser(W, CouplingData::uniform(*W, Scalar(0)));
        OperatorElement lap(W);
        for (size_t i = 0; i < 3; ++i) {
            Exponent beta(3, 0);
            beta[i] = 2;
            lap.add_term(0, std::move(beta), LocalizedPoly::constant(W, Scalar(1)));
        }
        CHECK(cm.H == lap);
        CHECK(cm.L == lap);
    }
    SECTION("gauge identity holds symbolically, including non-integer couplings") {
        CHECK_NOTHROW(calogero_moser(build_group("I2(3)"),
                                     CouplingData::uniform(*build_group("I2(3)"), Scalar(1))));
        auto W = build_group("A1");
        CHECK_NOTHROW(calogero_moser(W, CouplingData::uniform(*W, Scalar(Rational(3, 2)))));
        auto B2 = build_group("B2");
        CHECK_NOTHROW(calogero_moser(B2, CouplingData(*B2, {Scalar(1), Scalar(2)})));
    }
}

TEST_CASE("berest integrals reproduce the displayed rank-1 quantum integrals") {
    auto W = build_group("A1");
    const Multiplicity m1 = Multiplicity::uniform(*W, 1);

    const auto L2 = berest_integral(W, m1, P("x^2", 1));
    const auto L3 = berest_integral(W, m1, P("x^3", 1));
    CHECK(L2.str() == "(1)∂x^2 + (-2/x)∂x [e]");
    CHECK(L3.str() == "(1)∂x^3 + (-3/x)∂x^2 + (3/x^2)∂x [e]");

    // L_{q_1} = L for the defining quadratic
    CHECK(L2 == detail::calogero_L(W, CouplingData::from_multiplicity(*W, m1)));

    // homogeneity degree -d
    CHECK(L3.homogeneity() == -3);

    // the integrals commute with each other on polynomials
    for (unsigned d = 0; d <= 8; ++d) {
        const MultiPoly q = P("x", 1).pow(d);
        CHECK(commutator(L2, L3).apply(q).is_zero());
    }
}

TEST_CASE("berest integrals for the dihedral and hyperoctahedral groups") {
    for (const std::string& name : {"I2(3)", "B2"}) {
        auto W = build_group(name);
        const Multiplicity m = Multiplicity::uniform(*W, 1);
        INFO(name);

        // L_{q_1} = L where q_1 = x1^2 + x2^2
        const auto Lq = berest_integral(W, m, P("x1^2 + x2^2", 2));
        CHECK(Lq == detail::calogero_L(W, CouplingData::from_multiplicity(*W, m)));
    }
}

TEST_CASE("berest rejects non-quasi-invariants and reports the witness") {
    auto W = build_group("A1");
    const Multiplicity m1 = Multiplicity::uniform(*W, 1);
    CHECK_THROWS_WITH(berest_integral(W, m1, P("x", 1)),
                      "berest_integral: not in Q_m");
    CHECK_THROWS_AS(berest_integral(W, m1, P("x^2 + x", 1)), std::invalid_argument);

    // negative control: (ad L)^2 x = -8/x^3 != 0
    const auto L = detail::calogero_L(W, CouplingData::from_multiplicity(*W, m1));
    const auto witness = ad_power(L, OperatorElement::multiplication(W, P("x", 1)), 2);
    CHECK(witness.str() == "(-8/x^3) [e]");
    CHECK(witness ==
          OperatorElement::multiplication(W, LocalizedPoly(W, P("-8", 1), {3})));
}

TEST_CASE("quantum integrals preserve the quasi-invariant ring") {
    const unsigned N = 10;
    for (const std::string& name : {"A1", "I2(3)"}) {
        auto W = build_group(name);
        const Multiplicity m = Multiplicity::uniform(*W, 1);
        const QuasiInvariantProblem prob(W, m, N);
        const GradedBasis basis = graded_basis(prob);
        INFO(name);

        std::vector<MultiPoly> qs;
        if (W->rank() == 1) {
            qs = {P("x^2", 1), P("x^3", 1)};
        } else {
            qs = {P("x1^2 + x2^2", 2)};
            for (const MultiPoly& b : basis.by_degree[4]) qs.push_back(b);
        }
        for (const MultiPoly& q : qs) {
            const unsigned d = *q.degree();
            const auto Lq = berest_integral(W, m, q);
            for (unsigned r = 0; r + d <= N; ++r)
                for (const MultiPoly& b : basis.by_degree[r]) {
                    const LocalizedPoly img = Lq.apply(b);
                    REQUIRE(img.is_polynomial());
                    if (!img.is_zero())
                        CHECK(is_quasi_invariant(img.polynomial(), prob));
                }
        }
    }
}

TEST_CASE("sl(2) triple and lowest-weight structure") {
    SECTION("rank 1 constant is c - 1/2") {
        auto W = build_group("A1");
        for (const Rational& c : {Rational(1), Rational(2), Rational(1, 2)}) {
            const auto rep = sl2_triple(W, CouplingData::uniform(*W, Scalar(c)));
            CHECK(rep.C == Scalar(c - Rational(1, 2)));
        }
    }
    SECTION("zero coupling gives the Weyl-algebra constant -n/2") {
        for (const std::string& name : {"B2", "A3"}) {
            auto W = build_group(name);
            const auto rep = sl2_triple(W, CouplingData::uniform(*W, Scalar(0)));
            CHECK(rep.C == Scalar(Rational(-static_cast<long>(W->rank()), 2)));
        }
    }
    SECTION("quasi-invariants are lowest-weight vectors") {
        auto W = build_group("A1");
        const Multiplicity m1 = Multiplicity::uniform(*W, 1);
        const auto rep = sl2_triple(W, CouplingData::from_multiplicity(*W, m1));
        const MultiPoly q = P("x^3", 1);
        const auto Mq = OperatorElement::multiplication(W, q);
        CHECK(commutator(rep.F, Mq).is_zero());
        CHECK(commutator(rep.H, Mq) == Scalar(-3) * Mq);

        // nilpotency on both sides: (ad L)^{d+1} q = 0 and (ad F)^{d+1} L_q = 0
        const auto L = Scalar(-2) * rep.E;
        CHECK(ad_power(L, Mq, 4).is_zero());
        const auto Lq = berest_integral(W, m1, q);
        CHECK(ad_power(rep.F, Lq, 4).is_zero());
        CHECK_FALSE(ad_power(rep.F, Lq, 3).is_zero());
    }
}

TEST_CASE("cherednik commutation relations") {
    SECTION("rank 1 pinned bracket [D, x] = 1 - 2c s") {
        auto W = build_group("A1");
        auto c = CouplingData::uniform(*W, Scalar(1));
        const auto K = commutator(dunkl_basis(W, c, 0),
                                  OperatorElement::multiplication(W, P("x", 1)));
        CHECK(K.str() == "(1) [e] + (-2) [s0]");
        const auto rep = cherednik_relation_check(W, c);
        CHECK(rep.reflection_coeff[0][0] == Scalar(-2));
    }
    SECTION("full report across groups, including irrational root data") {
        for (const std::string& name : {"A1", "I2(3)", "B2", "I2(5)", "A3"}) {
            auto W = build_group(name);
            INFO(name);
            for (const CouplingData& c : sample_couplings(*W, 1)) {
                const auto rep = cherednik_relation_check(W, c);
                CHECK(rep.shape_ok);
                CHECK(rep.identity_delta_ok);
                CHECK(rep.formula_ok);
                CHECK(rep.xx_ok);
                CHECK(rep.dd_ok);
                CHECK(rep.equivariance_ok);
            }
        }
    }
}

TEST_CASE("pbw shadow: normal ordering and independent monomials") {
    {
        auto W = build_group("A1");
        const auto rep = pbw_shadow(W, CouplingData::uniform(*W, Scalar(1)), 6, 5);
        CHECK(rep.normal_order_ok);
        CHECK(rep.independent);
        CHECK(rep.monomial_count == 42u);  // 21 (a,b) pairs with a+b <= 5, two elements
        CHECK(rep.space_dim == 7u);
    }
    {
        // Once the word budget reaches the probe degree the restriction to
        // that space acquires a genuine kernel (e.g. sums of x^a D^{a+k}(e-s)
        // annihilating every low-degree polynomial), so the faithful shadow
        // must keep |I|+|J| strictly below the probe degree.
        auto W = build_group("A1");
        const auto rep = pbw_shadow(W, CouplingData::uniform(*W, Scalar(1)), 6, 6);
        CHECK(rep.normal_order_ok);
        CHECK_FALSE(rep.independent);
    }
    {
        auto W = build_group("I2(3)");
        const auto rep = pbw_shadow(W, CouplingData::uniform(*W, Scalar(Rational(1, 2))), 6, 2);
        CHECK(rep.normal_order_ok);
        CHECK(rep.independent);
        CHECK(rep.monomial_count == 90u);
    }
}

TEST_CASE("spherical projector") {
    auto W = build_group("B2");
    // e(f) = f on invariants, e(x) = 0 in rank 1, e∘e = e on a spanning set
    const MultiPoly inv = P("x1^2 + x2^2", 2);
    CHECK(spherical_project(*W, inv) == inv);

    auto A1 = build_group("A1");
    CHECK(spherical_project(*A1, P("x", 1)).is_zero());

    for (unsigned r = 0; r <= 6; ++r)
        for (const Exponent& e : detail::monomials_of_degree(2, r)) {
            const MultiPoly f = MultiPoly::monomial(2, e, Scalar(1));
            const MultiPoly once = spherical_project(*W, f);
            CHECK(spherical_project(*W, once) == once);
        }
}
