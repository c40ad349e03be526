#include "qit/families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "families_data.hpp"

namespace qit {

namespace {

const RationalPolynomial kOne = RationalPolynomial::constant(GaussianRational(1));

GaussianRational frac(long num, long den) {
    return GaussianRational(GaussianInt(num), GaussianInt(den));
}

// Minimal monic u with den | u^k: each squarefree factor S_j^j of den forces
// S_j^ceil(j/k) into u.
RationalPolynomial clear_power(const RationalPolynomial& den, unsigned k) {
    if (den.degree() <= 0) return kOne;
    RationalPolynomial out = kOne;
    for (const auto& [s, j] : squarefree_decomposition(den)) {
        out = out * pow(s, (j + k - 1) / k);
    }
    return out;
}

// u^k * v for a rational function v whose denominator divides u^k; the
// result is a genuine polynomial (rational constant denominators excepted,
// which fold into the coefficients).
RationalPolynomial apply_clearing(const RationalPolynomial& u, unsigned k,
                                  const RationalFunction& v) {
    RationalFunction scaled = RationalFunction(pow(u, k)) * v;
    if (!scaled.is_polynomial()) {
        throw std::logic_error("tate_to_short: clearing scale failed to clear");
    }
    return scaled.num;
}

// Smallest positive rational integer lam with den(p) | lam^w, where den(p)
// is the lcm of the coefficient denominators.
mpz_class integral_scale(const RationalPolynomial& p, unsigned w) {
    auto [cleared, den] = scale_to_integral(p);
    (void)cleared;
    mpz_class out = 1;
    if (den.is_unit()) return out;
    for (const auto& [pr, e] : factor(den).factors) {
        mpz_class under;   // the rational prime below pr
        unsigned long ram; // valuation of pr at that rational prime
        switch (pr.kind) {
            case GaussianPrime::Kind::ramified:
                under = 2;
                ram = 2;
                break;
            case GaussianPrime::Kind::split:
                under = pr.value.norm();
                ram = 1;
                break;
            case GaussianPrime::Kind::inert:
                under = pr.value.re;
                ram = 1;
                break;
            default:
                throw std::logic_error("integral_scale: bad prime kind");
        }
        unsigned long need = (e + w * ram - 1) / (w * ram);
        for (unsigned long j = 0; j < need; ++j) out *= under;
    }
    return out;
}

long family_lambda(const RationalPolynomial& f, const RationalPolynomial& g,
                   WeightScheme scheme) {
    unsigned w4 = scheme == WeightScheme::w46 ? 4 : 2;
    unsigned w6 = scheme == WeightScheme::w46 ? 6 : 3;
    mpz_class lf = integral_scale(f, w4), lg = integral_scale(g, w6);
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), lf.get_mpz_t(), lg.get_mpz_t());
    if (!l.fits_slong_p()) throw std::logic_error("family_lambda: scale overflow");
    return l.get_si();
}

FamilyRecord build_generic(const detail::RawTateRow& row) {
    TateForm tf{RationalFunction(parse_polynomial(row.a_num), parse_polynomial(row.a_den)),
                RationalFunction(parse_polynomial(row.b_num), parse_polynomial(row.b_den)),
                RationalFunction(parse_polynomial(row.d_num), parse_polynomial(row.d_den))};
    FamilyRecord fr;
    fr.group = parse_torsion_label(row.label);
    fr.scheme = WeightScheme::w46;
    fr.has_tate = true;
    fr.tate = tf;
    fr.shortform = tate_to_short(tf);
    fr.f = fr.shortform.f;
    fr.g = fr.shortform.g;
    fr.r = fr.f.degree();
    fr.s = fr.g.degree();
    ExponentData ed = exponent(fr.r, fr.s, fr.scheme);
    fr.n = ed.n;
    fr.m = ed.m;
    fr.d_exponent = ed.d;
    fr.lambda = family_lambda(fr.f, fr.g, fr.scheme);

    const std::string where = std::string("family data integrity (") + row.label + "): ";
    if (fr.r != row.r || fr.s != row.s) {
        throw std::runtime_error(where + "degree mismatch");
    }
    if (fr.n != row.n || fr.m != row.m || fr.d_exponent != mpq_class(row.d_exp)) {
        throw std::runtime_error(where + "exponent mismatch");
    }
    if (fr.lambda != row.lambda) {
        throw std::runtime_error(where + "integrality scale mismatch");
    }
    if (gcd(fr.f, fr.g).degree() != 0) {
        throw std::runtime_error(where + "f, g not coprime");
    }
    return fr;
}

FamilyRecord build_two_two() {
    FamilyRecord fr;
    fr.group = TorsionLabel{2, 2};
    fr.scheme = WeightScheme::w23;
    fr.f = parse_polynomial("1/3,-1/3,1/3");
    fr.g = parse_polynomial("-2/27,1/9,1/9,-2/27");
    fr.r = fr.f.degree();
    fr.s = fr.g.degree();
    ExponentData ed = exponent(fr.r, fr.s, fr.scheme);
    fr.n = ed.n;
    fr.m = ed.m;
    fr.d_exponent = ed.d;
    fr.lambda = family_lambda(fr.f, fr.g, fr.scheme);
    if (fr.d_exponent != mpq_class(3) || fr.n != 1 || fr.m != 1 || fr.lambda != 3) {
        throw std::runtime_error("family data integrity (Z/2xZ/2): exponent mismatch");
    }
    return fr;
}

FamilyCatalog build_catalog() {
    FamilyCatalog cat;
    for (std::size_t k = 0; k < detail::kRawTateRowCount; ++k) {
        cat.families.push_back(build_generic(detail::kRawTateRows[k]));
    }
    cat.families.push_back(build_two_two());
    std::sort(cat.families.begin(), cat.families.end(),
              [](const FamilyRecord& a, const FamilyRecord& b) { return a.group < b.group; });

    cat.case2 = {
        {TorsionLabel{1, 13}, parse_polynomial("1,-4,6,-2,1,-2,1")},
        {TorsionLabel{1, 16}, parse_polynomial("0,-1,2,0,2,1")},
        // Z/18 constant term: 1 (completes the degree-6 squarefree model)
        {TorsionLabel{1, 18}, parse_polynomial("1,4,10,10,5,2,1")},
    };
    for (const auto& c : cat.case2) {
        if (c.h.degree() < 5 || !is_squarefree(c.h)) {
            throw std::runtime_error("family data integrity (" + to_string(c.group) +
                                     "): parameter curve not squarefree of degree >= 5");
        }
    }

    cat.case3 = {
        {TorsionLabel{1, 11}, "Z/5"},  {TorsionLabel{1, 14}, "Z/6"},
        {TorsionLabel{1, 15}, "Z/4"},  {TorsionLabel{2, 10}, "Z/6"},
        {TorsionLabel{2, 12}, "Z/8"},
    };
    return cat;
}

}  // namespace

ShortForm tate_to_short(const TateForm& tf) {
    if (tf.a.den.is_zero() || tf.b.den.is_zero() || tf.d.den.is_zero()) {
        throw std::domain_error("tate_to_short: zero denominator");
    }
    ShortForm sf;
    sf.u = lcm(lcm(clear_power(tf.a.den, 1), clear_power(tf.b.den, 3)),
               clear_power(tf.d.den, 2));
    sf.a1 = apply_clearing(sf.u, 1, tf.a);
    sf.b1 = apply_clearing(sf.u, 3, tf.b);
    sf.d1 = apply_clearing(sf.u, 2, tf.d);

    const RationalPolynomial &a = sf.a1, &b = sf.b1, &d = sf.d1;
    RationalPolynomial a2 = a * a, a4 = a2 * a2, d2 = d * d;
    // e = d^2/3 + a^4/48 + a^2 d/6 - a b/2; short model y^2 = x^3 - e x + g
    RationalPolynomial e = frac(1, 3) * d2 + frac(1, 48) * a4 +
                           frac(1, 6) * (a2 * d) - frac(1, 2) * (a * b);
    sf.f = -e;
    sf.g = (frac(1, 3) * d + frac(1, 12) * a2) * e - frac(1, 1728) * (a4 * a2) -
           frac(1, 144) * (a4 * d) - frac(1, 36) * (a2 * d2) - frac(1, 27) * (d2 * d) +
           frac(1, 4) * (b * b);
    sf.marked_x = frac(1, 12) * a2 + frac(1, 3) * d;
    sf.marked_y = frac(1, 2) * b;
    return sf;
}

ExponentData exponent(long r, long s, WeightScheme scheme) {
    if (r < 0 || s < 0) throw std::invalid_argument("exponent: negative degree");
    if (r == 0 && s == 0) throw std::domain_error("exponent: r = s = 0");
    long w4 = scheme == WeightScheme::w46 ? 4 : 2;
    long w6 = scheme == WeightScheme::w46 ? 6 : 3;
    long num, den;
    if (r * w6 >= s * w4) {
        num = r;
        den = w4;
    } else {
        num = s;
        den = w6;
    }
    long g = std::gcd(num, den);
    ExponentData out;
    out.n = num / g;
    out.m = den / g;
    out.d = mpq_class(scheme == WeightScheme::w46 ? 12 * out.n : 6 * out.n, out.m + 1);
    out.d.canonicalize();
    return out;
}

const FamilyCatalog& builtin_families() {
    static const FamilyCatalog cat = build_catalog();
    return cat;
}

const FamilyRecord& family_for(const TorsionLabel& group) {
    for (const auto& fr : builtin_families().families) {
        if (fr.group == group) return fr;
    }
    throw std::invalid_argument("family_for: no finite-exponent family for " +
                                to_string(group));
}

const Case2Curve& case2_for(const TorsionLabel& group) {
    for (const auto& c : builtin_families().case2) {
        if (c.group == group) return c;
    }
    throw std::invalid_argument("case2_for: no parameter curve for " + to_string(group));
}

const Case3Record& case3_for(const TorsionLabel& group) {
    for (const auto& c : builtin_families().case3) {
        if (c.group == group) return c;
    }
    throw std::invalid_argument("case3_for: no record for " + to_string(group));
}

namespace {

GaussianRational upow(const GaussianRational& u, unsigned k) {
    GaussianRational out(1);
    for (unsigned j = 0; j < k; ++j) out = out * u;
    return out;
}

}  // namespace

Curve specialize(const FamilyRecord& fr, const GaussianRational& u,
                 const GaussianRational& t) {
    if (u.num.is_zero()) throw std::invalid_argument("specialize: u = 0");
    unsigned w4 = fr.scheme == WeightScheme::w46 ? 4 : 2;
    unsigned w6 = fr.scheme == WeightScheme::w46 ? 6 : 3;
    GaussianRational gt = fr.g.eval(t);
    if (gt.num.is_zero()) {
        throw std::domain_error("specialize: degenerate parameter (g(t) = 0)");
    }
    GaussianRational A = upow(u, w4) * fr.f.eval(t);
    GaussianRational B = upow(u, w6) * gt;
    GaussianRational disc =
        GaussianRational(4) * A * A * A + GaussianRational(27) * B * B;
    if (disc.num.is_zero()) {
        throw std::domain_error("specialize: degenerate parameter (singular fiber)");
    }
    if (!A.den.is_one() || !B.den.is_one()) {
        throw std::invalid_argument("specialize: non-integral model; rescale u");
    }
    return Curve{A.num, B.num};
}

Point marked_point(const FamilyRecord& fr, const GaussianRational& u,
                   const GaussianRational& t) {
    if (!fr.has_tate) {
        throw std::invalid_argument("marked_point: family has no marked section");
    }
    GaussianRational x = upow(u, 2) * fr.shortform.marked_x.eval(t);
    GaussianRational y = upow(u, 3) * fr.shortform.marked_y.eval(t);
    return Point(x, y);
}

namespace {

long isqrt_long(long v) {
    if (v < 0) return -1;
    long r = static_cast<long>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

}  // namespace

std::vector<Case2Point> case2_point_search(const Case2Curve& c, const mpz_class& H) {
    if (H < 1) throw std::invalid_argument("case2_point_search: H < 1");
    if (!H.fits_slong_p()) throw std::invalid_argument("case2_point_search: H too large");
    const long Hl = H.get_si();
    const long lim = isqrt_long(Hl);
    std::vector<Case2Point> out;

    // denominators: canonical associates of norm <= H
    std::vector<GaussianInt> dens;
    for (long re = 1; re <= lim; ++re) {
        long imlim = isqrt_long(Hl - re * re);
        for (long im = 0; im <= imlim; ++im) dens.emplace_back(re, im);
    }

    for (const auto& q : dens) {
        for (long re = -lim; re <= lim; ++re) {
            long imlim = isqrt_long(Hl - re * re);
            for (long im = -imlim; im <= imlim; ++im) {
                GaussianInt p(re, im);
                if (p.is_zero() && !q.is_one()) continue;
                if (!p.is_zero() && !gcd(p, q).is_unit()) continue;
                GaussianRational t(p, q);
                auto s = sqrt_in_Qi(c.h.eval(t));
                if (!s) continue;
                out.push_back({*s, t});
                if (!s->num.is_zero()) out.push_back({-*s, t});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Case2Point& a, const Case2Point& b) {
        if (a.t != b.t) return lex_less(a.t, b.t);
        return lex_less(a.s, b.s);
    });
    return out;
}

std::string to_string(WeightScheme scheme) {
    return scheme == WeightScheme::w46 ? "w46" : "w23";
}

std::string render_family_data(const FamilyCatalog& cat) {
    std::string out;
    out += "# families.v1 data file\n";
    out += "# family <group> <w46|w23> <f coeffs> <g coeffs>\n";
    out += "#   y^2 = x^3 + u^4 f(t) x + u^6 g(t)  (w46; u^2/u^3 under w23)\n";
    out += "# case2 <group> <h coeffs>   hyperelliptic parameter curve s^2 = h(t)\n";
    out += "# case3 <group> <mw>         parameter curve Mordell-Weil group\n";
    for (const auto& fr : cat.families) {
        out += "family " + to_string(fr.group) + " " + to_string(fr.scheme) + " " +
               to_string(fr.f) + " " + to_string(fr.g) + "\n";
    }
    for (const auto& c : cat.case2) {
        if (c.group == TorsionLabel{1, 18}) {
            out += "# Z/18 constant term: 1 (completes the degree-6 squarefree model)\n";
        }
        out += "case2 " + to_string(c.group) + " " + to_string(c.h) + "\n";
    }
    for (const auto& c : cat.case3) {
        out += "case3 " + to_string(c.group) + " " + c.mw_group + "\n";
    }
    return out;
}

}  // namespace qit
