#pragma once

// Exact arithmetic in Z[i] and Q(i).
//
// Z[i] is a Euclidean domain with unit group {1, i, -1, -i}.  Every nonzero
// z has a unique "canonical associate" u*z lying in the fundamental domain
//   re > 0, im >= 0
// (first quadrant including the positive real axis, excluding the positive
// imaginary axis).  All gcd/factor outputs are canonicalized so that results
// are deterministic and directly comparable in tests.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qit {

struct GaussianInt {
    mpz_class re, im;

    GaussianInt() : re(0), im(0) {}
    GaussianInt(long r) : re(r), im(0) {}               // NOLINT(google-explicit-constructor)
    GaussianInt(long r, long i) : re(r), im(i) {}
    GaussianInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_unit() const { return norm() == 1; }
    bool is_one() const { return re == 1 && im == 0; }

    mpz_class norm() const { return re * re + im * im; }
    GaussianInt conj() const { return {im == 0 ? re : mpz_class(re), mpz_class(-im)}; }
    GaussianInt mul_i() const { return {mpz_class(-im), mpz_class(re)}; }  // i*z

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return {mpz_class(a.re + b.re), mpz_class(a.im + b.im)};
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return {mpz_class(a.re - b.re), mpz_class(a.im - b.im)};
    }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {mpz_class(a.re * b.re - a.im * b.im), mpz_class(a.re * b.im + a.im * b.re)};
    }
    GaussianInt operator-() const { return {mpz_class(-re), mpz_class(-im)}; }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianInt& a, const GaussianInt& b) { return !(a == b); }
};

// Total order: lexicographic on (re, im).  Used for deterministic containers.
bool lex_less(const GaussianInt& a, const GaussianInt& b);
struct GaussianIntLexLess {
    bool operator()(const GaussianInt& a, const GaussianInt& b) const { return lex_less(a, b); }
};

mpz_class norm(const GaussianInt& z);

// (c, u) with c = u*z, u a unit, and c in the fundamental domain (c = 0 only
// for z = 0).  Idempotent: canonical_associate(c) = (c, 1).
std::pair<GaussianInt, GaussianInt> canonical_associate(const GaussianInt& z);

// Euclidean division: a = q*b + r with norm(r) <= norm(b)/2.  The quotient
// rounds each component of a/b to the nearest integer, ties to even, so the
// result is reproducible bit-for-bit.
std::pair<GaussianInt, GaussianInt> euclid_divmod(const GaussianInt& a, const GaussianInt& b);

// Exact quotient a/b when b | a, otherwise nullopt.
std::optional<GaussianInt> try_divide(const GaussianInt& a, const GaussianInt& b);

// Canonical associate of a greatest common divisor.  gcd(0,0) is a domain error.
GaussianInt gcd(const GaussianInt& a, const GaussianInt& b);

struct GaussianPrime {
    enum class Kind { ramified, split, inert };
    GaussianInt value;  // canonical associate of an irreducible element
    Kind kind;
};

struct Factorization {
    GaussianInt unit;  // one of 1, i, -1, -i
    std::vector<std::pair<GaussianPrime, unsigned>> factors;  // sorted by (norm, (re,im))

    GaussianInt reassemble() const;
};

// Unique factorization: z = unit * prod p^e with canonical, pairwise
// non-associate primes.  Splits the rational primes dividing norm(z):
// 2 ramifies through 1+i, p = 1 mod 4 splits via a square root of -1 mod p,
// p = 3 mod 4 stays inert.  z = 0 is a domain error.
Factorization factor(const GaussianInt& z);

// Largest k with p^k | z (z != 0 is required).
unsigned valuation(const GaussianInt& z, const GaussianPrime& p);
unsigned valuation(const GaussianInt& z, const GaussianInt& prime_value);

// z = d^k * rest up to a unit with d maximal: d = prod p^floor(val_p(z)/k).
// Both components are canonical associates.
std::pair<GaussianInt, GaussianInt> kth_power_part(const GaussianInt& z, unsigned k);

// All divisors of z up to unit multiples (each canonical), deterministic
// (norm, lex) order.  The full divisor set is obtained by multiplying with
// the four units.
std::vector<GaussianInt> divisors_up_to_units(const GaussianInt& z);

// Text grammar "a+bi" / "a-bi", no spaces: "0", "3", "-4", "i", "-i", "2i",
// "1+i", "3-4i".  parse_gaussian throws std::invalid_argument on misparse.
std::string to_string(const GaussianInt& z);
GaussianInt parse_gaussian(const std::string& text);

struct GaussianRational {
    // Reduced canonical form: gcd(num, den) is a unit and den is its own
    // canonical associate (so den = 1 for integral values; never zero).
    GaussianInt num, den;

    GaussianRational() : num(0), den(1) {}
    GaussianRational(long n) : num(n), den(1) {}        // NOLINT(google-explicit-constructor)
    GaussianRational(GaussianInt n) : num(std::move(n)), den(1) {}  // NOLINT
    GaussianRational(const GaussianInt& n, const GaussianInt& d);

    bool is_zero() const { return num.is_zero(); }
    bool is_integral() const { return den.is_one(); }
    mpq_class norm() const;

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    GaussianRational operator-() const;
    GaussianRational inverse() const;
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.num == b.num && a.den == b.den;  // canonical form makes this value equality
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }
};

bool lex_less(const GaussianRational& a, const GaussianRational& b);
struct GaussianRationalLexLess {
    bool operator()(const GaussianRational& a, const GaussianRational& b) const {
        return lex_less(a, b);
    }
};

// val_p(num) - val_p(den); q must be nonzero.
long valuation(const GaussianRational& q, const GaussianPrime& p);

// Rendering "num" or "num/den"; composite parts are parenthesized so the
// grammar round-trips: "1/3", "(1+i)/2", "-2/27", "i".
std::string to_string(const GaussianRational& q);
GaussianRational parse_gaussian_rational(const std::string& text);

namespace detail {
// Rational-integer helpers shared across the library.
mpz_class round_half_even(const mpz_class& n, const mpz_class& d);  // d > 0
std::vector<std::pair<mpz_class, unsigned>> factor_mpz(const mpz_class& n);  // n >= 1
bool is_square(const mpz_class& n, mpz_class* root = nullptr);
std::uint64_t gcd_int64_pair(std::int64_t re1, std::int64_t im1, std::int64_t re2,
                             std::int64_t im2);  // returns norm of a Gaussian gcd
}  // namespace detail

}  // namespace qit
