#pragma once

// Short Weierstrass curves y^2 = x^3 + Ax + B over Z[i], the exact group law
// on Q(i)-points, and the census normal forms (minimality and the sign class).
//
// Nonsingularity is tracked through the quantity 4A^3 + 27B^2 (no -16
// normalization; only its nonvanishing matters here).  The height is
// max(N(A)^3, N(B)^2), and a model is minimal when gcd(A^3, B^2) has no
// 12th power of a non-unit, i.e. no prime p has p^4 | A and p^6 | B.

#include <string>
#include <utility>

#include "qit/gaussian.hpp"

namespace qit {

struct Curve {
    GaussianInt A, B;
};

struct Point {
    bool infinity = true;
    GaussianRational x, y;

    Point() = default;
    Point(GaussianRational px, GaussianRational py)
        : infinity(false), x(std::move(px)), y(std::move(py)) {}
    static Point at_infinity() { return Point(); }

    friend bool operator==(const Point& p, const Point& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.x == q.x && p.y == q.y;
    }
    friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
};

struct IsoClass {
    Curve rep;  // minimal model with the canonical sign of B
};

GaussianInt discriminant_quantity(const Curve& c);  // 4A^3 + 27B^2
mpz_class height(const Curve& c);                   // max(N(A)^3, N(B)^2)

// (0,0) is a domain error; singular curves are otherwise fine to query.
bool is_minimal(const Curve& c);

// Divides out the maximal d with d^4 | A, d^6 | B; singular input is a
// domain error.  Returns a minimal model of the same curve.
Curve minimalize(const Curve& c);
GaussianInt minimalize_scale(const Curve& c);  // the d that minimalize divides out

// Canonical representative of {(A,B), (A,-B)}: keeps the B whose (re, im) is
// lexicographically >= that of -B.  Input must be minimal (usage error).
IsoClass iso_class(const Curve& c);

bool on_curve(const Curve& c, const Point& p);

// Chord-tangent group law with the point at infinity as identity; off-curve
// arguments are a domain error.  All arithmetic is exact over Q(i).
Point add(const Curve& c, const Point& p, const Point& q);
Point negate(const Point& p);
Point scalar_mul(const Curve& c, long k, const Point& p);

// j = 6912 A^3 / (4A^3 + 27B^2); singular input is a domain error.
GaussianRational j_invariant(const Curve& c);

// Text forms: curve "[A,B]" (e.g. "[1+i,-2]"), point "(x,y)" or "O".
std::string to_string(const Curve& c);
Curve parse_curve(const std::string& text);
std::string to_string(const Point& p);
Point parse_point(const std::string& text);

}  // namespace qit
