#pragma once

#include <string>
#include <vector>

#include "qit/curve.hpp"
#include "qit/polynomial.hpp"
#include "qit/torsion.hpp"

namespace qit {

// Tate normal form y^2 + a*xy + b*y = x^3 + d*x^2 with coefficients in
// Q(i)(t).  A parameter value t with nonsingular specialization carries the
// marked point (0, 0).
struct TateForm {
    RationalFunction a, b, d;
};

// Specialization weights: (u^4, u^6) for the generic families, (u^2, u^3)
// for the full 2-torsion family.
enum class WeightScheme { w46, w23 };

// A Tate form converted to short Weierstrass shape y^2 = x^3 + f(t)x + g(t).
// The substitution (a, b, d) -> (u*a, u^3*b, u^2*d) with the minimal
// polynomial scale u clears denominators first; (a1, b1, d1) are the cleared
// coefficients.  The marked point (0,0) lands at
// (a1^2/12 + d1/3, b1/2) on the short model.
struct ShortForm {
    RationalPolynomial u;
    RationalPolynomial a1, b1, d1;
    RationalPolynomial f, g;
    RationalPolynomial marked_x, marked_y;
};

// Reduced degree data n/m = max(r/w4, s/w6) and the growth exponent
// d = 12n/(m+1) under (4,6) weights, 6n/(m+1) under (2,3) weights.
struct ExponentData {
    long n = 1;
    long m = 1;
    mpq_class d;
};

// One parameterized family y^2 = x^3 + u^w4 f(t) x + u^w6 g(t).  Records
// sourced from a Tate form keep it (has_tate) together with the derived
// short form, whose marked point has exact order group.b on nonsingular
// fibers.  lambda is the smallest positive rational integer such that
// u = lambda * z clears the coefficient denominators of (f, g) for every
// Gaussian integer z.
struct FamilyRecord {
    TorsionLabel group;
    WeightScheme scheme = WeightScheme::w46;
    RationalPolynomial f, g;
    long r = 0, s = 0;
    long n = 1, m = 1;
    mpq_class d_exponent;
    long lambda = 1;
    bool has_tate = false;
    TateForm tate;
    ShortForm shortform;
};

// Hyperelliptic parameter curve s^2 = h(t) of genus > 1: torsion growth for
// these groups is capped by the finitely many Q(i)-points.
struct Case2Curve {
    TorsionLabel group;
    RationalPolynomial h;
};

// Parameter curve of genus 1 with finite Mordell-Weil group over Q(i);
// only the group label is stored.
struct Case3Record {
    TorsionLabel group;
    std::string mw_group;
};

struct FamilyCatalog {
    std::vector<FamilyRecord> families;
    std::vector<Case2Curve> case2;
    std::vector<Case3Record> case3;
};

// Appendix-style completion of the square/cube: clears denominators of the
// Tate coefficients with the minimal polynomial scale, then returns the
// short-form data.  Throws std::domain_error if a denominator vanishes
// identically.
ShortForm tate_to_short(const TateForm& tf);

// Reduced max(r/w4, s/w6) = n/m and the derived exponent.  r = s = 0 is a
// domain error.
ExponentData exponent(long r, long s, WeightScheme scheme);

// The embedded family data set: the twelve finite-exponent generic families
// (validated against their expected degree table at load; a mismatch throws
// std::runtime_error), the full 2-torsion family, the three hyperelliptic
// parameter curves, and the five finite Mordell-Weil records.
const FamilyCatalog& builtin_families();

// Lookup helpers; throw std::invalid_argument when the group has no record
// of the requested kind.
const FamilyRecord& family_for(const TorsionLabel& group);
const Case2Curve& case2_for(const TorsionLabel& group);
const Case3Record& case3_for(const TorsionLabel& group);

// A = u^w4 f(t), B = u^w6 g(t).  Degenerate parameters (g(t) = 0 or a
// singular fiber) throw std::domain_error; non-integral A or B throws
// std::invalid_argument (scale u to fix).
Curve specialize(const FamilyRecord& fr, const GaussianRational& u,
                 const GaussianRational& t);

// The marked torsion point on specialize(fr, u, t); requires fr.has_tate.
Point marked_point(const FamilyRecord& fr, const GaussianRational& u,
                   const GaussianRational& t);

struct Case2Point {
    GaussianRational s, t;
};

// All (s, t) with s^2 = h(t) where numerator and denominator of t have norm
// at most H.  Results sorted by (t, s), each satisfying the relation exactly.
std::vector<Case2Point> case2_point_search(const Case2Curve& c, const mpz_class& H);

// The versioned plain-text rendering of the catalog (the contents of
// data/families.v1.txt).
std::string render_family_data(const FamilyCatalog& cat);

std::string to_string(WeightScheme scheme);

}  // namespace qit
