#pragma once

// Exact Q(i)-torsion of short Weierstrass curves over Z[i], classified into
// the 24 admissible groups (cyclic orders 1..16 and 18, Z/2 x Z/2M for
// M = 1..6, and Z/4 x Z/4).
//
// The completeness argument for torsion_points: on an integral model every
// Q(i)-torsion point has x, y in Z[i] (a point with a denominator lies in the
// kernel of reduction at some prime, and the formal group at every prime of
// Z[i] has no torsion of the relevant orders), and every torsion point with
// y != 0 satisfies y^2 | 4A^3 + 27B^2 (the x-coordinate of its double is
// integral, and eliminating it against the curve equation exhibits
// 4A^3 + 27B^2 as y^2 times a Gaussian integer).  Enumerating y over square
// divisors of 4A^3 + 27B^2 and solving the resulting cubics in x therefore
// reaches every torsion point; an order check via the group law discards the
// finitely many non-torsion integral points that slip through the divisor
// screen.  The division-polynomial sweep stays available as a cross-check.

#include <optional>
#include <string>
#include <vector>

#include "qit/curve.hpp"
#include "qit/polynomial.hpp"

namespace qit {

struct TorsionLabel {
    // Z/a x Z/b with a | b; cyclic groups use a = 1 (Z/1 is (1,1)).
    int a = 1, b = 1;

    static TorsionLabel cyclic(int m) { return {1, m}; }
    static TorsionLabel product(int a, int b) { return {a, b}; }

    int order() const { return a * b; }
    bool is_cyclic() const { return a == 1; }
    // Membership in the admissible list of torsion subgroups over Q(i).
    bool is_admissible() const;
    // Does a subgroup isomorphic to `sub` embed into this group?  With both
    // sides in elementary-divisor form (a | b), this is componentwise
    // divisibility.
    bool contains(const TorsionLabel& sub) const { return a % sub.a == 0 && b % sub.b == 0; }

    friend bool operator==(const TorsionLabel& x, const TorsionLabel& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const TorsionLabel& x, const TorsionLabel& y) { return !(x == y); }
    friend bool operator<(const TorsionLabel& x, const TorsionLabel& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    }
};

// Exact strings "Z/M", "Z/2xZ/2M", "Z/4xZ/4" (e.g. "Z/7", "Z/2xZ/6").
std::string to_string(const TorsionLabel& label);
TorsionLabel parse_torsion_label(const std::string& text);

// Univariate polynomial in x whose roots are exactly the x-coordinates of
// the nonzero points P with nP = O: the classical psi_n for odd n; for even
// n the 2y factor of psi_n is replaced by the curve cubic, so the 2-torsion
// abscissas stay among the roots (n = 2 gives x^3 + Ax + B itself).
// n outside 1..18 is a usage error.
RationalPolynomial division_polynomial(const Curve& c, int n);

// All roots of p lying in Q(i), multiplicity collapsed, deterministic order.
// Scales to Z[i] and enumerates divisor candidates; when the constant or
// leading coefficient is too large to factor comfortably it switches to
// root finding modulo an inert prime followed by Hensel lifting.  The zero
// polynomial is a domain error.
std::vector<GaussianRational> gaussian_rational_roots(const RationalPolynomial& p);

// r with r^2 = q, if one exists in Q(i).
std::optional<GaussianRational> sqrt_in_Qi(const GaussianRational& q);

// The complete set of Q(i)-torsion points, including O; singular input is a
// domain error.  Deterministic order: O first, then by (x, y) lexicographic.
std::vector<Point> torsion_points(const Curve& c);

// Group structure of torsion_points: N points total with k of order
// dividing 2; k <= 2 forces a cyclic group, k = 4 forces Z/2 x Z/(N/2)
// unless the full 4-level is present (16 points of order dividing 4), which
// is Z/4 x Z/4.  A result outside the admissible list throws (internal
// consistency failure, not a user error).
TorsionLabel torsion_structure(const Curve& c);

}  // namespace qit
