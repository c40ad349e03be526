#pragma once

// Exact univariate polynomial arithmetic over Q(i), plus rational functions.
//
// Coefficients are stored ascending (coefficient of t^k at index k) with the
// leading entry nonzero; the zero polynomial is the empty list.  The text
// grammar is a comma-separated ascending coefficient list in the Gaussian
// rational grammar, e.g. "1/3,-1/3,1/3" for (t^2 - t + 1)/3.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qit/gaussian.hpp"

namespace qit {

class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) {
        trim();
    }
    static RationalPolynomial constant(const GaussianRational& v);
    static RationalPolynomial monomial(const GaussianRational& v, std::size_t k);
    static RationalPolynomial x() { return monomial(GaussianRational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<GaussianRational>& coeffs() const { return c_; }
    GaussianRational coeff(std::size_t k) const {
        return k < c_.size() ? c_[k] : GaussianRational(0);
    }
    GaussianRational leading() const {
        return c_.empty() ? GaussianRational(0) : c_.back();
    }

    GaussianRational eval(const GaussianRational& t) const;

    RationalPolynomial derivative() const;
    RationalPolynomial monic() const;  // zero polynomial maps to itself

    friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
    friend RationalPolynomial operator*(const GaussianRational& s, const RationalPolynomial& p);
    RationalPolynomial operator-() const;
    friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const RationalPolynomial& a, const RationalPolynomial& b) {
        return !(a == b);
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

// Long division over the field Q(i); zero divisor is a domain error.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);

// Monic gcd; gcd(0,0) = 0.
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial lcm(const RationalPolynomial& a, const RationalPolynomial& b);

RationalPolynomial pow(const RationalPolynomial& p, unsigned k);

// gcd(p, p') constant (true for constants and degree-1 polynomials).
bool is_squarefree(const RationalPolynomial& p);

// Yun decomposition p = lc * prod S_j^j with the S_j squarefree, monic and
// pairwise coprime; only nonconstant S_j are reported, ascending in j.
std::vector<std::pair<RationalPolynomial, unsigned>> squarefree_decomposition(
    const RationalPolynomial& p);

// Smallest scalar multiple with Z[i] coefficients: returns (q, s) with
// q = s*p integral and s = lcm of coefficient denominators.
std::pair<RationalPolynomial, GaussianInt> scale_to_integral(const RationalPolynomial& p);

std::string to_string(const RationalPolynomial& p);
RationalPolynomial parse_polynomial(const std::string& text);

struct RationalFunction {
    // Reduced with monic denominator; den = 1 for polynomials.
    RationalPolynomial num, den;

    RationalFunction() : num(), den(RationalPolynomial::constant(GaussianRational(1))) {}
    RationalFunction(RationalPolynomial n, RationalPolynomial d);
    RationalFunction(RationalPolynomial n)  // NOLINT(google-explicit-constructor)
        : RationalFunction(std::move(n), RationalPolynomial::constant(GaussianRational(1))) {}

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.degree() == 0; }

    // nullopt when t is a pole
    std::optional<GaussianRational> eval(const GaussianRational& t) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num == b.num && a.den == b.den;
    }
};

}  // namespace qit
