#include <catch2/catch_amalgamated.hpp>

#include <quasicox/baker.hpp>
#include <quasicox/quasi.hpp>

using namespace quasicox;

namespace {

MultiPoly P(const std::string& text, size_t nvars) { return MultiPoly::parse(text, nvars); }

// Independent oracle: apply the factors (x∂ - (2j-1)) one at a time directly
// to the exponential polynomial, never going through operator composition.
ExpPolynomial psi_by_recursion(const std::shared_ptr<const CoxeterDatum>& W, unsigned m) {
    ExpPolynomial psi = ExpPolynomial::exponential(W);
    const MultiPoly x = MultiPoly::variable(1, 0);
    for (unsigned j = 1; j <= m; ++j) {
        // psi_j = (x∂ - 2j + 1) psi_{j-1}
        psi = psi.x_partial(0).times_x(x) - Scalar(static_cast<long>(2 * j - 1)) * psi;
    }
    return psi;
}

}  // namespace

TEST_CASE("exponential polynomial mechanics") {
    auto W = build_group("A1");
    const auto e = ExpPolynomial::exponential(W);

    // ∂_x e^{kx} = k e^{kx}
    CHECK(e.x_partial(0).str() == "k");
    // x e^{kx}
    CHECK(e.times_x(P("x", 1)).str() == "x");
    // product rule through the exponential: ∂(x e^{kx}) = (kx + 1) e^{kx}
    CHECK(e.times_x(P("x", 1)).x_partial(0).str() == "k*x + 1");

    CHECK_THROWS_AS(ExpPolynomial(W, P("x1*x2*x3", 3)), std::invalid_argument);

    // operators with group terms do not act on a single exponential
    const auto s = OperatorElement::group(W, W->reflection_element(0));
    CHECK_THROWS_AS(e.apply_operator(s), std::invalid_argument);
}

TEST_CASE("rank-1 shift operator") {
    auto W = build_group("A1");

    CHECK(rank1_shift(W, 0) == OperatorElement::scalar(W, Scalar(1)));
    CHECK(rank1_shift(W, 1).str() == "(x)∂x + (-1) [e]");
    CHECK(rank1_shift(W, 2).str() == "(x^2)∂x^2 + (-3*x)∂x + (3) [e]");

    // cross-check S_2 by acting on monomials: S_2 x^j = (j-3)(j-1) x^j
    const auto S2 = rank1_shift(W, 2);
    for (unsigned j = 0; j <= 6; ++j) {
        const MultiPoly xj = P("x", 1).pow(j);
        const long expected = (static_cast<long>(j) - 3) * (static_cast<long>(j) - 1);
        CHECK(S2.apply(xj) == LocalizedPoly(W, Scalar(expected) * xj));
    }

    // the intertwining certificate runs for every m here
    for (unsigned m = 0; m <= 4; ++m) CHECK_NOTHROW(rank1_shift(W, m));
}

TEST_CASE("baker-akhiezer polynomial: pinned values and recursion oracle") {
    auto W = build_group("A1");

    CHECK(rank1_psi(W, 0).str() == "1");
    CHECK(rank1_psi(W, 1).str() == "k*x - 1");
    CHECK(rank1_psi(W, 2).str() == "k^2*x^2 - 3*k*x + 3");

    for (unsigned m = 0; m <= 4; ++m) {
        const auto psi = rank1_psi(W, m);
        CHECK(psi == psi_by_recursion(W, m));

        // leading monomial is (kx)^m with coefficient 1 under this normalization
        Exponent lead{m, m};
        const auto it = psi.P().terms().find(lead);
        REQUIRE(it != psi.P().terms().end());
        CHECK(it->second == Scalar(1));
    }
}

TEST_CASE("eigenfunction property for the quantum integrals") {
    auto W = build_group("A1");

    SECTION("m = 0 is the plain exponential") {
        const Multiplicity m0 = Multiplicity::uniform(*W, 0);
        const auto psi = rank1_psi(W, 0);
        CHECK(eigen_check(psi, P("x", 1), m0));
        CHECK(eigen_check(psi, P("x^2", 1), m0));
    }

    SECTION("m = 1 against the displayed system") {
        const Multiplicity m1 = Multiplicity::uniform(*W, 1);
        const auto psi = rank1_psi(W, 1);
        for (const char* q : {"x^2", "x^3", "x^4", "x^5", "x^7"})
            CHECK(eigen_check(psi, P(q, 1), m1));
    }

    SECTION("m = 2 against the analogous quasi-invariant set") {
        const Multiplicity m2 = Multiplicity::uniform(*W, 2);
        const auto psi = rank1_psi(W, 2);
        for (const char* q : {"x^2", "x^4", "x^5", "x^7", "x^9"})
            CHECK(eigen_check(psi, P(q, 1), m2));
    }

    SECTION("whole graded basis of Q_m up to degree 2m+5") {
        for (unsigned m = 1; m <= 2; ++m) {
            const Multiplicity mult = Multiplicity::uniform(*W, m);
            const auto psi = rank1_psi(W, m);
            const GradedBasis basis = graded_basis(QuasiInvariantProblem(W, mult, 2 * m + 5));
            for (const auto& layer : basis.by_degree)
                for (const MultiPoly& q : layer)
                    if (!q.is_zero() && *q.degree() > 0) CHECK(eigen_check(psi, q, mult));
        }
    }

    SECTION("detects a wrong candidate") {
        const Multiplicity m1 = Multiplicity::uniform(*W, 1);
        const auto wrong = ExpPolynomial(W, P("x1*x2 + 1", 2));  // (kx + 1)e^{kx}
        CHECK_FALSE(eigen_check(wrong, P("x^2", 1), m1));
    }
}

TEST_CASE("bispectral symmetry of the raw product normalization") {
    auto W = build_group("A1");
    for (unsigned m = 0; m <= 4; ++m) CHECK(symmetry_check(W, m));
}

TEST_CASE("induction identity for the gauged operators") {
    auto W = build_group("A1");
    for (unsigned m = 1; m <= 4; ++m) CHECK(rank1_induction_check(W, m));
    CHECK_THROWS_AS(rank1_induction_check(W, 0), std::invalid_argument);
}

TEST_CASE("rank-1 constructions reject higher-rank groups") {
    auto B2 = build_group("B2");
    CHECK_THROWS_AS(rank1_shift(B2, 1), std::invalid_argument);
    CHECK_THROWS_AS(rank1_psi(B2, 1), std::invalid_argument);
}
