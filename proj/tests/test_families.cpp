#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qit/families.hpp"
#include "qit/torsion.hpp"

using namespace qit;

namespace {

GaussianRational frac(long n, long d) {
    return GaussianRational(GaussianInt(n), GaussianInt(d));
}

long order_of(const Curve& c, const Point& p) {
    Point acc = p;
    for (long k = 1; k <= 40; ++k) {
        if (acc.infinity) return k;
        acc = add(c, acc, p);
    }
    return -1;
}

}  // namespace

TEST_CASE("catalog shape and degree table") {
    const auto& cat = builtin_families();
    REQUIRE(cat.families.size() == 13);
    REQUIRE(cat.case2.size() == 3);
    REQUIRE(cat.case3.size() == 5);

    struct Row {
        TorsionLabel g;
        long r, s, n, m, d, lambda;
    };
    const Row expected[] = {
        {{1, 4}, 2, 3, 1, 2, 4, 6},     {{1, 5}, 4, 6, 1, 1, 6, 6},
        {{1, 6}, 4, 6, 1, 1, 6, 6},     {{1, 7}, 8, 12, 2, 1, 12, 6},
        {{1, 8}, 8, 12, 2, 1, 12, 6},   {{1, 9}, 12, 18, 3, 1, 18, 6},
        {{1, 10}, 12, 18, 3, 1, 18, 6}, {{1, 12}, 16, 24, 4, 1, 24, 6},
        {{2, 2}, 2, 3, 1, 1, 3, 3},     {{2, 4}, 4, 6, 1, 1, 6, 12},
        {{2, 6}, 8, 12, 2, 1, 12, 6},   {{2, 8}, 16, 24, 4, 1, 24, 12},
        {{4, 4}, 8, 12, 2, 1, 12, 3},
    };
    for (std::size_t k = 0; k < cat.families.size(); ++k) {
        const auto& fr = cat.families[k];
        const auto& e = expected[k];
        CHECK(fr.group == e.g);
        CHECK(fr.r == e.r);
        CHECK(fr.s == e.s);
        CHECK(fr.n == e.n);
        CHECK(fr.m == e.m);
        CHECK(fr.d_exponent == mpq_class(e.d));
        CHECK(fr.lambda == e.lambda);
        CHECK(fr.f.degree() == e.r);
        CHECK(fr.g.degree() == e.s);
        CHECK(gcd(fr.f, fr.g).degree() == 0);
        CHECK(fr.has_tate == (fr.group != TorsionLabel{2, 2}));
    }
}

TEST_CASE("full 2-torsion record is stored verbatim") {
    const auto& fr = family_for(TorsionLabel{2, 2});
    CHECK(fr.scheme == WeightScheme::w23);
    CHECK(fr.f == parse_polynomial("1/3,-1/3,1/3"));
    CHECK(fr.g == parse_polynomial("-2/27,1/9,1/9,-2/27"));
    CHECK(fr.d_exponent == mpq_class(3));
    CHECK(fr.lambda == 3);
}

TEST_CASE("exponent") {
    ExponentData e1 = exponent(2, 3, WeightScheme::w46);
    CHECK(e1.n == 1);
    CHECK(e1.m == 2);
    CHECK(e1.d == mpq_class(4));
    ExponentData e2 = exponent(16, 24, WeightScheme::w46);
    CHECK(e2.n == 4);
    CHECK(e2.m == 1);
    CHECK(e2.d == mpq_class(24));
    ExponentData e3 = exponent(2, 3, WeightScheme::w23);
    CHECK(e3.n == 1);
    CHECK(e3.m == 1);
    CHECK(e3.d == mpq_class(3));
    // one-sided degrees
    ExponentData e4 = exponent(0, 6, WeightScheme::w46);
    CHECK(e4.n == 1);
    CHECK(e4.m == 1);
    ExponentData e5 = exponent(5, 0, WeightScheme::w46);
    CHECK(e5.n == 5);
    CHECK(e5.m == 4);
    CHECK_THROWS_AS(exponent(0, 0, WeightScheme::w46), std::domain_error);
    CHECK_THROWS_AS(exponent(-1, 3, WeightScheme::w46), std::invalid_argument);
}

TEST_CASE("tate_to_short pinned values") {
    // constants a=1, b=1, d=0
    TateForm tf{RationalFunction(parse_polynomial("1")), RationalFunction(parse_polynomial("1")),
                RationalFunction()};
    ShortForm sf = tate_to_short(tf);
    CHECK(sf.f == RationalPolynomial::constant(frac(23, 48)));
    CHECK(sf.g == RationalPolynomial::constant(frac(181, 864)));
    CHECK(sf.u == parse_polynomial("1"));
    CHECK(sf.marked_x == RationalPolynomial::constant(frac(1, 12)));
    CHECK(sf.marked_y == RationalPolynomial::constant(frac(1, 2)));

    // all-zero input degenerates to f = g = 0
    ShortForm z = tate_to_short(TateForm{});
    CHECK(z.f.is_zero());
    CHECK(z.g.is_zero());
}

TEST_CASE("tate_to_short agrees with the classical c4/c6 reduction") {
    for (const auto& fr : builtin_families().families) {
        if (!fr.has_tate) continue;
        const auto& sf = fr.shortform;
        // b2 = a1^2 + 4 d1, b4 = a1 b1, b6 = b1^2 (a4 = a6 = 0 in Tate form)
        RationalPolynomial b2 = sf.a1 * sf.a1 + frac(4, 1) * sf.d1;
        RationalPolynomial b4 = sf.a1 * sf.b1;
        RationalPolynomial b6 = sf.b1 * sf.b1;
        RationalPolynomial c4 = b2 * b2 - frac(24, 1) * b4;
        RationalPolynomial c6 = -(b2 * b2 * b2) + frac(36, 1) * (b2 * b4) - frac(216, 1) * b6;
        CHECK(sf.f == frac(-1, 48) * c4);
        CHECK(sf.g == frac(-1, 864) * c6);
    }
}

TEST_CASE("clearing uses the minimal weighted scale") {
    // b with a squared denominator only needs u = q, not q^2, since u^3
    // enters the b-slot: deg u stays 2 for the Z/10 parameterization.
    const auto& z10 = family_for(TorsionLabel{1, 10});
    CHECK(z10.shortform.u == parse_polynomial("1,-3,1"));
    const auto& z8 = family_for(TorsionLabel{1, 8});
    CHECK(z8.shortform.u == parse_polynomial("0,1"));
    // denominator with a non-monic constant: folded into coefficients
    const auto& z28 = family_for(TorsionLabel{2, 8});
    CHECK(z28.shortform.u == parse_polynomial("-32,-8,4,1"));
    CHECK(z28.shortform.a1.coeff(4) == frac(1, 2));
}

TEST_CASE("specialization carries the marked torsion point") {
    for (const auto& fr : builtin_families().families) {
        if (!fr.has_tate) continue;
        GaussianRational u(GaussianInt(fr.lambda));
        for (long tv : {2, 3, 5, 7}) {
            GaussianRational t(tv);
            Curve c;
            try {
                c = specialize(fr, u, t);
            } catch (const std::domain_error&) {
                continue;  // degenerate fiber, try the next t
            }
            Point mp = marked_point(fr, u, t);
            CHECK(on_curve(c, mp));
            CHECK(order_of(c, mp) == static_cast<long>(fr.group.b));
            break;
        }
    }
}

TEST_CASE("specialization torsion contains the group at small parameters") {
    // full torsion check on cheap fibers (one per family where feasible)
    struct Probe {
        TorsionLabel g;
        long t;
    };
    const Probe probes[] = {{{1, 4}, 2}, {{1, 5}, 2}, {{1, 6}, 2}, {{2, 4}, 2}, {{4, 4}, 2}};
    for (const auto& pr : probes) {
        const auto& fr = family_for(pr.g);
        Curve c = specialize(fr, GaussianRational(GaussianInt(fr.lambda)),
                             GaussianRational(pr.t));
        TorsionLabel got = torsion_structure(minimalize(c));
        CHECK(got.contains(pr.g));
    }
}

TEST_CASE("specialization scale invariance of j") {
    const auto& fr = family_for(TorsionLabel{1, 5});
    GaussianRational t(2);
    Curve c1 = specialize(fr, GaussianRational(6), t);
    Curve c2 = specialize(fr, GaussianRational(12), t);
    Curve c3 = specialize(fr, GaussianRational(GaussianInt(6, 6)), t);
    CHECK(j_invariant(c1) == j_invariant(c2));
    CHECK(j_invariant(c1) == j_invariant(c3));
}

TEST_CASE("specialize error taxonomy") {
    const auto& z4 = family_for(TorsionLabel{1, 4});
    // non-integral: u = 1 leaves the 1/48 denominators in place
    CHECK_THROWS_AS(specialize(z4, GaussianRational(1), GaussianRational(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(specialize(z4, GaussianRational(0), GaussianRational(2)),
                    std::invalid_argument);
    // roots of g are degenerate parameters
    for (const auto& fr : builtin_families().families) {
        for (const auto& root : gaussian_rational_roots(fr.g)) {
            CHECK_THROWS_AS(specialize(fr, GaussianRational(GaussianInt(fr.lambda)), root),
                            std::domain_error);
        }
    }
    // singular fiber: Z/12 at t = 2
    CHECK_THROWS_AS(specialize(family_for(TorsionLabel{1, 12}), GaussianRational(6),
                               GaussianRational(2)),
                    std::domain_error);
    // no marked section on the full 2-torsion family
    CHECK_THROWS_AS(marked_point(family_for(TorsionLabel{2, 2}), GaussianRational(3),
                                 GaussianRational(0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(family_for(TorsionLabel{1, 11}), std::invalid_argument);
    CHECK_THROWS_AS(case2_for(TorsionLabel{1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(case3_for(TorsionLabel{1, 13}), std::invalid_argument);
}

TEST_CASE("case2 point search") {
    const auto& z16 = case2_for(TorsionLabel{1, 16});
    auto pts = case2_point_search(z16, 64);
    bool saw_origin = false, saw_i = false;
    for (const auto& p : pts) {
        // every reported pair satisfies the relation exactly
        CHECK(p.s * p.s == z16.h.eval(p.t));
        if (p.s.num.is_zero() && p.t.num.is_zero()) saw_origin = true;
        if (p.s.num.is_zero() && p.t == GaussianRational(GaussianInt(0, 1))) saw_i = true;
    }
    CHECK(saw_origin);
    CHECK(saw_i);
    CHECK(pts.size() == 7);

    CHECK(case2_point_search(case2_for(TorsionLabel{1, 13}), 64).size() == 4);
    CHECK(case2_point_search(case2_for(TorsionLabel{1, 18}), 64).size() == 4);
    CHECK_THROWS_AS(case2_point_search(z16, 0), std::invalid_argument);
}

TEST_CASE("case3 table") {
    CHECK(case3_for(TorsionLabel{1, 11}).mw_group == "Z/5");
    CHECK(case3_for(TorsionLabel{1, 14}).mw_group == "Z/6");
    CHECK(case3_for(TorsionLabel{1, 15}).mw_group == "Z/4");
    CHECK(case3_for(TorsionLabel{2, 10}).mw_group == "Z/6");
    CHECK(case3_for(TorsionLabel{2, 12}).mw_group == "Z/8");
}

TEST_CASE("shipped data file matches the embedded catalog") {
    std::ifstream in(std::string(QIT_DATA_DIR) + "/families.v1.txt", std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == render_family_data(builtin_families()));
}
