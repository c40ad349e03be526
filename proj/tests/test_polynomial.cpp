#include <doctest.h>

#include "qit/polynomial.hpp"

using namespace qit;

namespace {

RationalPolynomial P(std::initializer_list<long> cs) {
    std::vector<GaussianRational> v;
    for (long c : cs) v.emplace_back(c);
    return RationalPolynomial(v);
}

}  // namespace

TEST_CASE("degree and trimming") {
    CHECK(RationalPolynomial().degree() == -1);
    CHECK(P({5}).degree() == 0);
    CHECK(P({0, 0, 1}).degree() == 2);
    CHECK(P({1, 0, 0}).degree() == 0);  // trailing zeros trimmed
    CHECK(RationalPolynomial::x().degree() == 1);
}

TEST_CASE("arithmetic and evaluation") {
    auto f = P({1, 2, 1});  // (x+1)^2
    auto g = P({1, 1});     // x+1
    CHECK(f == g * g);
    CHECK((f - g * g).degree() == -1);
    CHECK(f.eval(GaussianRational(2)) == GaussianRational(9));
    CHECK(f.eval(GaussianRational(GaussianInt(0, 1))) ==
          GaussianRational(GaussianInt(0, 2)));  // (i+1)^2 = 2i
    CHECK(f.derivative() == P({2, 2}));
}

TEST_CASE("divmod and gcd") {
    auto f = P({-1, 0, 0, 1});  // x^3 - 1
    auto g = P({-1, 1});        // x - 1
    auto [q, r] = divmod(f, g);
    CHECK(q == P({1, 1, 1}));
    CHECK(r.degree() == -1);
    CHECK_THROWS_AS(divmod(f, RationalPolynomial()), std::domain_error);

    // gcd(x^2-1, x^2-2x+1) = x-1 (monic)
    CHECK(gcd(P({-1, 0, 1}), P({1, -2, 1})) == P({-1, 1}));
    CHECK(gcd(P({1, 1}), RationalPolynomial()) == P({1, 1}));
}

TEST_CASE("squarefree machinery") {
    CHECK(is_squarefree(P({-1, 0, 1})));
    CHECK(!is_squarefree(P({1, 2, 1})));
    // (x-1)^1 * (x+2)^3
    auto f = P({-1, 1}) * P({2, 1}) * P({2, 1}) * P({2, 1});
    auto dec = squarefree_decomposition(f);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0] == std::pair{P({-1, 1}), 1u});
    CHECK(dec[1] == std::pair{P({2, 1}), 3u});
    RationalPolynomial prod = RationalPolynomial::constant(GaussianRational(1));
    for (const auto& [s, j] : dec) prod = prod * pow(s, j);
    CHECK(prod == f.monic());
}

TEST_CASE("scale_to_integral") {
    std::vector<GaussianRational> cs = {
        GaussianRational(GaussianInt(1), GaussianInt(2)),
        GaussianRational(GaussianInt(1), GaussianInt(3))};
    auto [cleared, s] = scale_to_integral(RationalPolynomial(cs));
    CHECK(s == GaussianInt(6));
    CHECK(cleared == P({3, 2}));
}

TEST_CASE("polynomial text grammar") {
    CHECK(to_string(P({-1, 0, 1})) == "-1,0,1");
    CHECK(parse_polynomial("-1,0,1") == P({-1, 0, 1}));
    CHECK(parse_polynomial("1/2,i") ==
          RationalPolynomial({GaussianRational(GaussianInt(1), GaussianInt(2)),
                              GaussianRational(GaussianInt(0, 1))}));
    CHECK(parse_polynomial(to_string(parse_polynomial("0"))).degree() == -1);
}

TEST_CASE("rational functions") {
    RationalFunction r(P({0, 1}), P({-1, 0, 1}));  // x / (x^2-1)
    CHECK(!r.eval(GaussianRational(1)).has_value());  // pole
    CHECK(r.eval(GaussianRational(2)) ==
          GaussianRational(GaussianInt(2), GaussianInt(3)));
    // reduction: (x^2-1)/(x-1) = x+1
    RationalFunction s(P({-1, 0, 1}), P({-1, 1}));
    CHECK(s.num == P({1, 1}));
    CHECK(s.den.degree() == 0);
    RationalFunction sum = r + r;
    CHECK(sum.eval(GaussianRational(2)) ==
          GaussianRational(GaussianInt(4), GaussianInt(3)));
}
