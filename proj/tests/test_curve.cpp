#include <doctest.h>

#include <random>

#include "qit/curve.hpp"

using namespace qit;

namespace {

GaussianInt pow_g(const GaussianInt& z, int k) {
    GaussianInt r(1);
    for (int j = 0; j < k; ++j) r = r * z;
    return r;
}

}  // namespace

TEST_CASE("discriminant quantity and height") {
    CHECK(discriminant_quantity(Curve{GaussianInt(0), GaussianInt(1)}) == GaussianInt(27));
    CHECK(discriminant_quantity(Curve{GaussianInt(-3), GaussianInt(2)}) == GaussianInt(0));
    CHECK(height(Curve{GaussianInt(1, 1), GaussianInt(1)}) == 8);
    CHECK(height(Curve{GaussianInt(2), GaussianInt(3)}) == 81);
}

TEST_CASE("minimality and minimalization") {
    CHECK(!is_minimal(Curve{GaussianInt(16), GaussianInt(64)}));
    CHECK(is_minimal(Curve{GaussianInt(1), GaussianInt(1)}));
    CHECK_THROWS_AS(is_minimal(Curve{GaussianInt(0), GaussianInt(0)}), std::domain_error);

    Curve m = minimalize(Curve{GaussianInt(16), GaussianInt(64)});
    CHECK(m.A == GaussianInt(1));
    CHECK(m.B == GaussianInt(1));

    // 48 = 2^4*3, -320 = -2^6*5: d = 2 strips to (3,-5)
    Curve m2 = minimalize(Curve{GaussianInt(48), GaussianInt(-320)});
    CHECK(m2.A == GaussianInt(3));
    CHECK(m2.B == GaussianInt(-5));
    CHECK(minimalize_scale(Curve{GaussianInt(48), GaussianInt(-320)}) == GaussianInt(2));

    // Ramified-prime example: A = (1+i)^8 * 3, B = (1+i)^12 * 5.  The prime
    // 1+i carries min(8/4, 12/6) = 2 strips, so d ~ (1+i)^2 ~ 2 and the
    // minimal model is (3, -5) since (1+i)^8 = 2^4 and (1+i)^12 = -2^6.
    GaussianInt A = pow_g(GaussianInt(1, 1), 8) * GaussianInt(3);
    GaussianInt B = pow_g(GaussianInt(1, 1), 12) * GaussianInt(5);
    Curve m3 = minimalize(Curve{A, B});
    CHECK(m3.A == GaussianInt(3));
    CHECK(m3.B == GaussianInt(-5));
    CHECK(minimalize_scale(Curve{A, B}) == GaussianInt(2));
    CHECK(is_minimal(m3));

    CHECK_THROWS_AS(minimalize(Curve{GaussianInt(-3), GaussianInt(2)}), std::domain_error);

    // One-sided zero coefficients still minimalize
    Curve m4 = minimalize(Curve{GaussianInt(0), GaussianInt(64)});
    CHECK(m4.A == GaussianInt(0));
    CHECK(m4.B == GaussianInt(1));
    Curve m5 = minimalize(Curve{GaussianInt(16), GaussianInt(0)});
    CHECK(m5.A == GaussianInt(1));
    CHECK(m5.B == GaussianInt(0));
}

TEST_CASE("iso_class picks the canonical twin") {
    IsoClass c = iso_class(Curve{GaussianInt(1), GaussianInt(-2)});
    CHECK(c.rep.A == GaussianInt(1));
    CHECK(c.rep.B == GaussianInt(2));
    IsoClass c2 = iso_class(Curve{GaussianInt(1), GaussianInt(2)});
    CHECK(c2.rep.B == GaussianInt(2));
    // B = 0 maps to itself
    IsoClass c3 = iso_class(Curve{GaussianInt(1), GaussianInt(0)});
    CHECK(c3.rep.B == GaussianInt(0));
    // B = -i -> lex compares (0,-1) vs (0,1): keep i
    IsoClass c4 = iso_class(Curve{GaussianInt(1), GaussianInt(0, -1)});
    CHECK(c4.rep.B == GaussianInt(0, 1));
    CHECK_THROWS_AS(iso_class(Curve{GaussianInt(16), GaussianInt(64)}), std::invalid_argument);
}

TEST_CASE("group law pinned examples") {
    Curve e{GaussianInt(0), GaussianInt(1)};  // y^2 = x^3 + 1
    Point p(GaussianRational(2), GaussianRational(3));
    Point q(GaussianRational(0), GaussianRational(1));
    CHECK(on_curve(e, p));
    CHECK(on_curve(e, q));
    Point s = add(e, p, q);
    CHECK(s.x == GaussianRational(-1));
    CHECK(s.y == GaussianRational(0));
    // (2,3) has order 6
    Point acc = Point::at_infinity();
    for (int k = 1; k <= 6; ++k) {
        acc = add(e, acc, p);
        if (k < 6) CHECK(!acc.infinity);
    }
    CHECK(acc.infinity);
    CHECK(scalar_mul(e, 6, p).infinity);
    CHECK(scalar_mul(e, 3, p) == negate(scalar_mul(e, -3, p)));

    Point bad(GaussianRational(5), GaussianRational(5));
    CHECK_THROWS_AS(add(e, bad, bad), std::domain_error);
}

TEST_CASE("group law randomized associativity") {
    std::mt19937_64 rng(0xc0ffeeULL);
    Curve e{GaussianInt(0), GaussianInt(1)};
    Point g(GaussianRational(2), GaussianRational(3));
    std::uniform_int_distribution<int> d(-11, 11);
    for (int iter = 0; iter < 100; ++iter) {
        int a = d(rng), b = d(rng), c = d(rng);
        Point pa = scalar_mul(e, a, g), pb = scalar_mul(e, b, g), pc = scalar_mul(e, c, g);
        CHECK(add(e, add(e, pa, pb), pc) == add(e, pa, add(e, pb, pc)));
        CHECK(add(e, pa, pb) == add(e, pb, pa));
        CHECK(scalar_mul(e, a + b, g) == add(e, pa, pb));
    }
}

TEST_CASE("j invariant") {
    // y^2 = x^3 + x: j = 1728
    Curve e{GaussianInt(1), GaussianInt(0)};
    CHECK(j_invariant(e) == GaussianRational(1728));
    // y^2 = x^3 + 1: j = 0
    CHECK(j_invariant(Curve{GaussianInt(0), GaussianInt(1)}) == GaussianRational(0));
    CHECK_THROWS_AS(j_invariant(Curve{GaussianInt(-3), GaussianInt(2)}), std::domain_error);
    // j is an isomorphism invariant: scale (A,B) -> (d^4 A, d^6 B)
    Curve big{GaussianInt(16), GaussianInt(64)};
    CHECK(j_invariant(big) == j_invariant(minimalize(big)));
}

TEST_CASE("curve and point text grammar") {
    Curve e = parse_curve("[1+i,-2]");
    CHECK(e.A == GaussianInt(1, 1));
    CHECK(e.B == GaussianInt(-2));
    CHECK(to_string(e) == "[1+i,-2]");
    Point p = parse_point("(2,3)");
    CHECK(p.x == GaussianRational(2));
    CHECK(to_string(p) == "(2,3)");
    CHECK(parse_point("O").infinity);
    CHECK(to_string(Point::at_infinity()) == "O");
    Point h = parse_point("(1/2,(1+i)/4)");
    CHECK(h.y == GaussianRational(GaussianInt(1, 1), GaussianInt(4)));
    CHECK(parse_point(to_string(h)) == h);
    CHECK_THROWS_AS(parse_curve("[1,2"), std::invalid_argument);
}
