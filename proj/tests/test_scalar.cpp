#include <catch2/catch_amalgamated.hpp>

#include "quasicox/cyclotomic.hpp"
#include "quasicox/matrix.hpp"
#include "quasicox/rational.hpp"

using namespace quasicox;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(7, 3) / Rational(7, 3) == Rational(1));
    CHECK(Rational(-5, 7).abs() == Rational(5, 7));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational parse and print round-trip") {
    CHECK(Rational::parse("3/2").str() == "3/2");
    CHECK(Rational::parse("-10/4").str() == "-5/2");
    CHECK(Rational::parse("42").str() == "42");
    CHECK(Rational::parse("0").is_zero());
    CHECK(Rational::parse("123456789012345678901234567890/3") ==
          Rational::parse("41152263004115226300411522630"));
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("binomial and factorial helpers") {
    CHECK(binomial(5, 2) == Rational(10));
    CHECK(binomial(3, 5) == Rational(0));
    CHECK(factorial(6) == Rational(720));
}

TEST_CASE("small conductors collapse to the rationals") {
    CHECK(CycloField::get(1) == nullptr);
    CHECK(CycloField::get(2) == nullptr);
    CHECK(CycloField::get(3) == nullptr);  // 2cos(2pi/3) = -1
    CHECK(CycloField::get(4) == nullptr);  // 2cos(pi/2) = 0
    CHECK(CycloField::get(6) == nullptr);  // 2cos(pi/3) = 1
}

TEST_CASE("minimal polynomials of 2cos(2pi/L)") {
    const CycloField* F5 = CycloField::get(5);
    REQUIRE(F5 != nullptr);
    CHECK(F5->degree() == 2);
    // x^2 + x - 1
    CHECK(F5->min_poly().coeff(0) == Rational(-1));
    CHECK(F5->min_poly().coeff(1) == Rational(1));
    CHECK(F5->min_poly().coeff(2) == Rational(1));

    const CycloField* F12 = CycloField::get(12);
    REQUIRE(F12 != nullptr);
    CHECK(F12->degree() == 2);
    // 2cos(pi/6) = sqrt(3): x^2 - 3
    CHECK(F12->min_poly().coeff(0) == Rational(-3));
    CHECK(F12->min_poly().coeff(1) == Rational(0));

    const CycloField* F20 = CycloField::get(20);
    REQUIRE(F20 != nullptr);
    CHECK(F20->degree() == 4);
    // 2cos(pi/10): x^4 - 5x^2 + 5
    CHECK(F20->min_poly().coeff(0) == Rational(5));
    CHECK(F20->min_poly().coeff(1) == Rational(0));
    CHECK(F20->min_poly().coeff(2) == Rational(-5));
    CHECK(F20->min_poly().coeff(3) == Rational(0));
    CHECK(F20->min_poly().coeff(4) == Rational(1));
}

TEST_CASE("two_cos values satisfy the product formula") {
    const CycloField* F = CycloField::get(20);
    auto D = [&](long j) { return Scalar(F, F->two_cos(j)); };
    // 2cos(A)2cos(B) = 2cos(A+B) + 2cos(A-B)
    for (long a = 0; a <= 10; ++a)
        for (long b = 0; b <= a; ++b) CHECK(D(a) * D(b) == D(a + b) + D(a - b));
    CHECK(D(0) == Scalar(2));
    CHECK(D(5) == Scalar(0));   // cos(pi/2)
    CHECK(D(10) == Scalar(-2)); // cos(pi)
    CHECK(D(20) == Scalar(2));
}

TEST_CASE("rational cosine table") {
    CHECK(Scalar::two_cos(nullptr, 1, 1) == Scalar(2));
    CHECK(Scalar::two_cos(nullptr, 1, 2) == Scalar(-2));
    CHECK(Scalar::two_cos(nullptr, 1, 3) == Scalar(-1));
    CHECK(Scalar::two_cos(nullptr, 1, 4) == Scalar(0));
    CHECK(Scalar::two_cos(nullptr, 1, 6) == Scalar(1));
    CHECK(Scalar::two_cos(nullptr, 2, 6) == Scalar(-1));
    CHECK(Scalar::two_cos(nullptr, -1, 4) == Scalar(0));
    CHECK_THROWS_AS(Scalar::two_cos(nullptr, 1, 5), std::invalid_argument);
}

TEST_CASE("field arithmetic, inverse and demotion") {
    const CycloField* F12 = CycloField::get(12);
    const Scalar g(F12, F12->two_cos(1));  // sqrt(3)
    CHECK_FALSE(g.is_rational());
    const Scalar g2 = g * g;
    CHECK(g2.is_rational());
    CHECK(g2 == Scalar(3));

    const Scalar s = g + Scalar(1);
    CHECK(s * s.inverse() == Scalar(1));
    CHECK(g * g.inverse() == Scalar(1));
    CHECK((g - g).is_zero());
    CHECK(g.pow(4) == Scalar(9));
    CHECK(g.pow(-2) == Scalar(Rational(1, 3)));

    const CycloField* F5 = CycloField::get(5);
    const Scalar h(F5, F5->two_cos(1));
    CHECK_THROWS_AS(g + h, std::invalid_argument);

    CHECK(g.str() == "g");
    CHECK((g + Scalar(1)).str() == "g+1");
    CHECK((Scalar(2) * g - Scalar(3)).str() == "2*g-3");
}

TEST_CASE("golden ratio relation in the conductor-5 field") {
    const CycloField* F = CycloField::get(5);
    const Scalar g(F, F->two_cos(1));  // 2cos(72 deg) = golden ratio - 1
    CHECK(g * g + g - Scalar(1) == Scalar(0));
    const Scalar phi = g + Scalar(1);  // golden ratio
    CHECK(phi * phi == phi + Scalar(1));
}

TEST_CASE("matrix inverse and determinant") {
    Matrix m(2, 2, {Scalar(1), Scalar(2), Scalar(3), Scalar(4)});
    CHECK(m.det() == Scalar(-2));
    const Matrix inv = m.inverse();
    CHECK(m * inv == Matrix::identity(2));
    CHECK(inv * m == Matrix::identity(2));
    CHECK(inv(0, 0) == Scalar(-2));
    CHECK(inv(0, 1) == Scalar(1));
    CHECK(inv(1, 0) == Scalar(Rational(3, 2)));
    CHECK(inv(1, 1) == Scalar(Rational(-1, 2)));

    Matrix sing(2, 2, {Scalar(1), Scalar(2), Scalar(2), Scalar(4)});
    CHECK(sing.det() == Scalar(0));
    CHECK_THROWS_AS(sing.inverse(), std::invalid_argument);
}

TEST_CASE("exact_kernel returns the canonical reduced basis") {
    // x + 2y + 3z = 0 (twice): kernel basis with free columns y, z
    Matrix A(2, 3,
             {Scalar(1), Scalar(2), Scalar(3),
              Scalar(2), Scalar(4), Scalar(6)});
    const auto basis = exact_kernel(A);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == std::vector<Scalar>{Scalar(-2), Scalar(1), Scalar(0)});
    CHECK(basis[1] == std::vector<Scalar>{Scalar(-3), Scalar(0), Scalar(1)});

    // full-rank square matrix: trivial kernel
    Matrix B(2, 2, {Scalar(1), Scalar(1), Scalar(0), Scalar(1)});
    CHECK(exact_kernel(B).empty());

    // zero matrix: identity basis
    Matrix Z(2, 2);
    const auto zb = exact_kernel(Z);
    REQUIRE(zb.size() == 2);
    CHECK(zb[0] == std::vector<Scalar>{Scalar(1), Scalar(0)});
    CHECK(zb[1] == std::vector<Scalar>{Scalar(0), Scalar(1)});
}

TEST_CASE("kernel vectors solve the system over a field") {
    const CycloField* F = CycloField::get(12);
    const Scalar g(F, F->two_cos(1));  // sqrt(3)
    Matrix A(1, 3, {g, Scalar(-1), Scalar(2)});
    const auto basis = exact_kernel(A);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        Scalar acc(0);
        for (size_t j = 0; j < 3; ++j) acc += A(0, j) * v[j];
        CHECK(acc.is_zero());
    }
}
