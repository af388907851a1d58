#include <catch2/catch_amalgamated.hpp>

#include "quasicox/coxeter.hpp"

using namespace quasicox;

namespace {

struct Shape {
    const char* name;
    size_t order;
    size_t reflections;
    std::vector<size_t> orbit_sizes;
    std::vector<unsigned> degrees;
    std::vector<unsigned> char_degrees;
};

const Shape kShapes[] = {
    {"A1", 2, 1, {1}, {2}, {1, 1}},
    {"A2", 6, 3, {3}, {2, 3}, {1, 1, 2}},
    {"A3", 24, 6, {6}, {2, 3, 4}, {1, 1, 2, 3, 3}},
    {"B2", 8, 4, {2, 2}, {2, 4}, {1, 1, 1, 1, 2}},
    {"B3", 48, 9, {3, 6}, {2, 4, 6}, {1, 1, 1, 1, 2, 2, 3, 3, 3, 3}},
    {"I2(5)", 10, 5, {5}, {2, 5}, {1, 1, 2, 2}},
    {"I2(6)", 12, 6, {3, 3}, {2, 6}, {1, 1, 1, 1, 2, 2}},
    {"I2(7)", 14, 7, {7}, {2, 7}, {1, 1, 2, 2, 2}},
};

// Molien's identity: the invariant-ring Hilbert series computed from the group
// equals the product over the fundamental degrees.
void check_molien_degrees(const CoxeterDatum& W) {
    UniPoly<Scalar> num;  // sum of |C| * prod_{other classes} charpoly
    UniPoly<Scalar> den = UniPoly<Scalar>::constant(Scalar(1));
    for (size_t c = 0; c < W.classes().size(); ++c) den *= W.char_poly(c);
    for (size_t c = 0; c < W.classes().size(); ++c) {
        UniPoly<Scalar> term = UniPoly<Scalar>::constant(Scalar(static_cast<long>(W.classes()[c].size())));
        for (size_t d = 0; d < W.classes().size(); ++d)
            if (d != c) term *= W.char_poly(d);
        num += term;
    }
    UniPoly<Scalar> target = UniPoly<Scalar>::constant(Scalar(static_cast<long>(W.order())));
    for (unsigned d : W.degrees()) {
        std::vector<Scalar> f(d + 1, Scalar(0));
        f[0] = Scalar(1);
        f[d] = Scalar(-1);
        num *= UniPoly<Scalar>(std::move(f));
    }
    CHECK(num == target * den);
}

}  // namespace

TEST_CASE("group shapes: order, reflections, orbits, degrees") {
    for (const Shape& sh : kShapes) {
        CAPTURE(sh.name);
        auto W = build_group(sh.name);
        CHECK(W->order() == sh.order);
        CHECK(W->num_reflections() == sh.reflections);
        std::vector<size_t> orbit_sizes;
        for (const auto& o : W->reflection_orbits()) orbit_sizes.push_back(o.size());
        std::sort(orbit_sizes.begin(), orbit_sizes.end());
        CHECK(orbit_sizes == sh.orbit_sizes);
        CHECK(W->degrees() == sh.degrees);
        std::vector<unsigned> char_degrees;
        for (const auto& ch : W->character_table()) char_degrees.push_back(ch.degree);
        std::sort(char_degrees.begin(), char_degrees.end());
        CHECK(char_degrees == sh.char_degrees);

        // product of degrees is the group order; sum of (d_i - 1) counts reflections
        size_t prod = 1, sum = 0;
        for (unsigned d : W->degrees()) {
            prod *= d;
            sum += d - 1;
        }
        CHECK(prod == W->order());
        CHECK(sum == W->num_reflections());
    }
}

TEST_CASE("every supported dihedral builds with order 2k") {
    for (unsigned k = 3; k <= 12; ++k) {
        auto W = build_group("I2(" + std::to_string(k) + ")");
        CHECK(W->order() == 2 * k);
        CHECK(W->num_reflections() == k);
        CHECK(W->reflection_orbits().size() == (k % 2 == 0 ? 2 : 1));
        check_molien_degrees(*W);
    }
}

TEST_CASE("group name parsing rejects unsupported labels") {
    CHECK_THROWS_AS(build_group("C3"), std::invalid_argument);
    CHECK_THROWS_AS(build_group("A4"), std::invalid_argument);
    CHECK_THROWS_AS(build_group("B1"), std::invalid_argument);
    CHECK_THROWS_AS(build_group("I2(2)"), std::invalid_argument);
    CHECK_THROWS_AS(build_group("I2(13)"), std::invalid_argument);
    CHECK_THROWS_AS(build_group("H3"), std::invalid_argument);
    CHECK(GroupName::parse("I2(10)").str() == "I2(10)");
    CHECK(GroupName::parse("B3").rank() == 3);
}

TEST_CASE("reflections satisfy the root reflection formula") {
    for (const char* name : {"A1", "A2", "A3", "B2", "B3", "I2(5)", "I2(8)"}) {
        CAPTURE(name);
        auto W = build_group(name);
        const size_t n = W->rank();
        for (size_t s = 0; s < W->num_reflections(); ++s) {
            const Matrix& m = W->element(W->reflection_element(s));
            const auto& a = W->root(s);
            const Scalar norm2 = W->root_norm2(s);
            // s(e_j) = e_j - 2 (a, e_j)/(a, a) * a
            for (size_t j = 0; j < n; ++j) {
                for (size_t i = 0; i < n; ++i) {
                    Scalar expect = (i == j ? Scalar(1) : Scalar(0)) -
                                    Scalar(2) * a[j] * a[i] / norm2;
                    CHECK(m(i, j) == expect);
                }
            }
        }
    }
}

TEST_CASE("Molien series matches the hardcoded fundamental degrees") {
    for (const Shape& sh : kShapes) {
        CAPTURE(sh.name);
        check_molien_degrees(*build_group(sh.name));
    }
}

TEST_CASE("regular character vanishes away from the identity") {
    for (const char* name : {"A2", "A3", "B3", "I2(5)", "I2(11)", "I2(12)"}) {
        CAPTURE(name);
        auto W = build_group(name);
        const auto& tbl = W->character_table();
        for (size_t c = 0; c < W->classes().size(); ++c) {
            Scalar acc(0);
            for (const auto& ch : tbl)
                acc += Scalar(static_cast<long>(ch.degree)) * ch.values[c];
            CHECK(acc == (c == 0 ? Scalar(static_cast<long>(W->order())) : Scalar(0)));
        }
    }
}

TEST_CASE("frozen character values for A2 and B2") {
    auto A2 = build_group("A2");
    const size_t std2 = A2->reflection_char();
    CHECK(A2->character_table()[std2].degree == 2);
    const unsigned refl = A2->reflection_element(0);
    CHECK(A2->char_value(std2, refl) == Scalar(0));
    // a rotation: product of two distinct reflections
    const unsigned rot = A2->product(A2->reflection_element(0), A2->reflection_element(1));
    CHECK(A2->element_order(rot) == 3);
    CHECK(A2->char_value(std2, rot) == Scalar(-1));
    CHECK(A2->char_value(A2->trivial_char(), rot) == Scalar(1));
    CHECK(A2->char_value(A2->sign_char(), refl) == Scalar(-1));

    auto B2 = build_group("B2");
    const size_t stdB = B2->reflection_char();
    const unsigned r0 = B2->reflection_element(0), r1 = B2->reflection_element(1);
    CHECK(B2->char_value(stdB, r0) == Scalar(0));
    unsigned rot90 = 0;
    for (unsigned i = 0; i < B2->order(); ++i)
        if (B2->element_order(i) == 4) {
            rot90 = i;
            break;
        }
    CHECK(B2->char_value(stdB, rot90) == Scalar(0));
    (void)r1;
    // the central -1 lies in the class of (r0 r1)^2
    const unsigned minus1 = B2->product(B2->product(r0, r1), B2->product(r0, r1));
    CHECK(B2->char_value(stdB, minus1) == Scalar(-2));
}

TEST_CASE("I2(5) character values live in the golden field") {
    auto W = build_group("I2(5)");
    REQUIRE(W->field() != nullptr);
    CHECK(W->field()->conductor() == 20);
    // rotation by 2pi/5: the two 2-dimensional characters take values
    // 2cos(2pi/5) and 2cos(4pi/5), whose sum is -1 and product is -1
    unsigned rot = 0;
    for (unsigned i = 0; i < W->order(); ++i)
        if (W->element_order(i) == 5) {
            rot = i;
            break;
        }
    std::vector<Scalar> vals;
    for (const auto& ch : W->character_table())
        if (ch.degree == 2) vals.push_back(ch.values[W->class_of(rot)]);
    REQUIRE(vals.size() == 2);
    CHECK(vals[0] + vals[1] == Scalar(-1));
    CHECK(vals[0] * vals[1] == Scalar(-1));
    CHECK(vals[0] != vals[1]);
}

TEST_CASE("group action on polynomials is a homomorphism") {
    auto W = build_group("B2");
    const MultiPoly p = MultiPoly::parse("x1^3 - 2*x1*x2 + x2^2", 2);
    for (unsigned g = 0; g < W->order(); ++g)
        for (unsigned h = 0; h < W->order(); ++h)
            CHECK(W->act(W->product(g, h), p) == W->act(g, W->act(h, p)));
    // invariant polynomial: x1^2 + x2^2
    const MultiPoly inv = MultiPoly::parse("x1^2 + x2^2", 2);
    for (unsigned g = 0; g < W->order(); ++g) CHECK(W->act(g, inv) == inv);
}

TEST_CASE("root conjugation data is consistent with the action") {
    for (const char* name : {"A3", "B3", "I2(6)"}) {
        CAPTURE(name);
        auto W = build_group(name);
        for (unsigned w = 0; w < W->order(); ++w)
            for (size_t s = 0; s < W->num_reflections(); ++s) {
                const auto [sp, lambda] = W->root_conjugate(w, s);
                // alpha_s composed with w^{-1} equals lambda * alpha_{s'}
                const MultiPoly lhs = W->act(w, W->root_form(s));
                CHECK(lhs == lambda * W->root_form(sp));
            }
    }
}

TEST_CASE("multiplicity values are per orbit") {
    auto B2 = build_group("B2");
    const Multiplicity m(*B2, {2, 1});
    CHECK(m.num_orbits() == 2);
    CHECK(m.orbit_value(0) == 2);
    CHECK(m.of_reflection(B2->reflection_orbits()[1][0]) == 1);
    CHECK(m.str() == "(2,1)");
    CHECK(Multiplicity::uniform(*B2, 3).values() == std::vector<unsigned>{3, 3});
    CHECK_THROWS_AS(Multiplicity(*B2, {1}), std::invalid_argument);

    auto A2 = build_group("A2");
    CHECK(Multiplicity::uniform(*A2, 2).str() == "(2)");
}
