#include "qit/torsion.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>

namespace qit {

bool TorsionLabel::is_admissible() const {
    if (a == 1) return (b >= 1 && b <= 16) || b == 18;
    if (a == 2) return b % 2 == 0 && b >= 2 && b <= 12;
    if (a == 4) return b == 4;
    return false;
}

std::string to_string(const TorsionLabel& label) {
    if (label.a == 1) return "Z/" + std::to_string(label.b);
    return "Z/" + std::to_string(label.a) + "xZ/" + std::to_string(label.b);
}

TorsionLabel parse_torsion_label(const std::string& text) {
    auto parse_part = [](const std::string& s) {
        if (s.rfind("Z/", 0) != 0) throw std::invalid_argument("bad torsion label: " + s);
        return std::stoi(s.substr(2));
    };
    std::size_t x = text.find('x');
    TorsionLabel label;
    if (x == std::string::npos) {
        label = TorsionLabel::cyclic(parse_part(text));
    } else {
        label = TorsionLabel::product(parse_part(text.substr(0, x)),
                                      parse_part(text.substr(x + 1)));
    }
    if (!label.is_admissible()) throw std::invalid_argument("inadmissible torsion label: " + text);
    return label;
}

// ---------------------------------------------------------------------------
// Division polynomials.
//
// With C = x^3 + Ax + B and psi_n the classical division polynomial, store
// P_n = psi_n for odd n and psi_n/(2y) for even n.  Using (2y)^2 = 4C, both
// doubling rules collapse to polynomial recurrences:
//   P_{2m}   = P_m (P_{m+2} P_{m-1}^2 - P_{m-2} P_{m+1}^2)
//   P_{2m+1} = P_{m+2} P_m^3 - 16 C^2 P_{m-1} P_{m+1}^3   (m odd)
//            = 16 C^2 P_{m+2} P_m^3 - P_{m-1} P_{m+1}^3   (m even)
// ---------------------------------------------------------------------------

RationalPolynomial division_polynomial(const Curve& c, int n) {
    if (n < 1 || n > 18) throw std::invalid_argument("division_polynomial: n must be in 1..18");
    const GaussianRational A{c.A}, B{c.B};
    const RationalPolynomial X = RationalPolynomial::x();
    const RationalPolynomial C =
        pow(X, 3) + A * X + RationalPolynomial::constant(B);  // x^3 + Ax + B
    const RationalPolynomial C2_16 = GaussianRational(16) * (C * C);

    std::array<RationalPolynomial, 19> P;
    P[0] = {};
    P[1] = RationalPolynomial::constant(GaussianRational(1));
    P[2] = P[1];
    // psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2
    P[3] = GaussianRational(3) * pow(X, 4) + GaussianRational(6) * A * pow(X, 2) +
           GaussianRational(12) * B * X - RationalPolynomial::constant(A * A);
    // psi_4 = 4y (x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
    P[4] = GaussianRational(2) *
           (pow(X, 6) + GaussianRational(5) * A * pow(X, 4) + GaussianRational(20) * B * pow(X, 3) -
            GaussianRational(5) * A * A * pow(X, 2) - GaussianRational(4) * A * B * X -
            RationalPolynomial::constant(GaussianRational(8) * B * B + A * A * A));
    for (int k = 5; k <= n; ++k) {
        int m = k / 2;
        if (k % 2 == 1) {
            RationalPolynomial t1 = P[m + 2] * P[m] * P[m] * P[m];
            RationalPolynomial t2 = P[m - 1] * P[m + 1] * P[m + 1] * P[m + 1];
            P[k] = (m % 2 == 0) ? C2_16 * t1 - t2 : t1 - C2_16 * t2;
        } else {
            P[k] = P[m] * (P[m + 2] * P[m - 1] * P[m - 1] - P[m - 2] * P[m + 1] * P[m + 1]);
        }
    }
    if (n % 2 == 1) return P[n];
    return C * P[n];  // keeps the 2-torsion abscissas among the roots
}

// ---------------------------------------------------------------------------
// Square roots in Q(i).
// ---------------------------------------------------------------------------

namespace {

std::optional<mpq_class> mpq_sqrt_exact(const mpq_class& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class rn, rd;
    if (!detail::is_square(q.get_num(), &rn)) return std::nullopt;
    if (!detail::is_square(q.get_den(), &rd)) return std::nullopt;
    return mpq_class(rn, rd);
}

GaussianRational from_rational_parts(const mpq_class& a, const mpq_class& b) {
    // a + bi with rational a, b -> num/den over Z[i] with a common denominator.
    mpz_class d = lcm(a.get_den(), b.get_den());
    mpz_class re = a.get_num() * (d / a.get_den());
    mpz_class im = b.get_num() * (d / b.get_den());
    return {GaussianInt(re, im), GaussianInt(d, mpz_class(0))};
}

}  // namespace

std::optional<GaussianRational> sqrt_in_Qi(const GaussianRational& q) {
    if (q.is_zero()) return GaussianRational(0);
    // Split q into rational components a + bi.
    GaussianInt t = q.num * q.den.conj();
    mpz_class nd = q.den.norm();
    mpq_class a(t.re, nd), b(t.im, nd);
    a.canonicalize();
    b.canonicalize();
    if (b == 0) {
        if (auto s = mpq_sqrt_exact(a)) return from_rational_parts(*s, mpq_class(0));
        if (auto s = mpq_sqrt_exact(mpq_class(-a))) return from_rational_parts(mpq_class(0), *s);
        return std::nullopt;
    }
    // (c + di)^2 = a + bi forces c^2 + d^2 = |a+bi| =: m and c^2 = (a+m)/2,
    // d = b/(2c); both m and (a+m)/2 must be rational squares.
    auto m = mpq_sqrt_exact(a * a + b * b);
    if (!m) return std::nullopt;
    auto cc = mpq_sqrt_exact((a + *m) / 2);
    if (!cc) return std::nullopt;
    mpq_class cv = *cc;
    if (cv == 0) return std::nullopt;  // b != 0 needs c != 0
    mpq_class dv = b / (2 * cv);
    GaussianRational r = from_rational_parts(cv, dv);
    if (r * r == q) return r;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rational roots over Q(i).
// ---------------------------------------------------------------------------

namespace {

// Integral coefficient view of a polynomial with unit content.
std::vector<GaussianInt> primitive_integral(const RationalPolynomial& p) {
    auto [scaled, mult] = scale_to_integral(p);
    (void)mult;
    std::vector<GaussianInt> c;
    c.reserve(scaled.coeffs().size());
    for (const auto& v : scaled.coeffs()) c.push_back(v.num);
    GaussianInt g = c.front();
    for (std::size_t k = 1; k < c.size() && !g.is_unit(); ++k) {
        const auto& v = c[k];
        if (v.is_zero()) continue;
        g = g.is_zero() ? v : gcd(g, v);
    }
    if (!g.is_zero() && !g.is_unit())
        for (auto& v : c) v = *try_divide(v, g);
    return c;
}

GaussianRational eval_integral(const std::vector<GaussianInt>& c, const GaussianRational& x) {
    GaussianRational acc(0);
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + GaussianRational(c[k]);
    return acc;
}

// Divisor-enumeration candidates: num | c0 (up to units, expanded by the four
// units), den | lead (canonical associates only; the unit is carried by num).
void roots_by_divisors(const std::vector<GaussianInt>& c, std::vector<GaussianRational>& out) {
    const GaussianInt& c0 = c.front();
    const GaussianInt& lead = c.back();
    std::vector<GaussianInt> nums = divisors_up_to_units(c0);
    std::vector<GaussianInt> dens = divisors_up_to_units(lead);
    // Cauchy bound: |root| <= 1 + max_k |c_k| / |lead|, so
    // N(num)/N(den) <= (1 + sqrt(max N(c_k)/N(lead)))^2 <= 2 + 2 max N(c_k)/N(lead).
    mpz_class maxn = 0;
    for (const auto& v : c) maxn = std::max(maxn, v.norm());
    mpz_class nl = lead.norm();
    for (const auto& d : dens) {
        mpz_class bound = (2 * nl + 2 * maxn) * d.norm();  // N(num)*N(lead) <= bound
        for (const auto& n0 : nums) {
            if (n0.norm() * nl > bound) continue;
            GaussianInt n = n0;
            for (int u = 0; u < 4; ++u, n = n.mul_i()) {
                GaussianRational cand(n, d);
                if (eval_integral(c, cand).is_zero()) out.push_back(cand);
            }
        }
    }
}

// --- Hensel path: roots of a monic squarefree integral polynomial ---------

struct Fq2 {
    std::int64_t q;
    // elements are (re, im) mod q; q = 3 mod 4 makes this the field F_{q^2}
};

// Newton lifting in Z[i]/q^k.  Coefficients and points are component pairs.
struct ModPair {
    mpz_class re, im;
};

ModPair mod_reduce(const ModPair& z, const mpz_class& m) {
    mpz_class r = z.re % m, i = z.im % m;
    if (r < 0) r += m;
    if (i < 0) i += m;
    return {r, i};
}

ModPair mod_mul(const ModPair& x, const ModPair& y, const mpz_class& m) {
    return mod_reduce({x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}, m);
}

ModPair mod_add(const ModPair& x, const ModPair& y, const mpz_class& m) {
    return mod_reduce({x.re + y.re, x.im + y.im}, m);
}

std::optional<ModPair> mod_inverse(const ModPair& z, const mpz_class& m) {
    // (a+bi)^-1 = (a-bi) * (a^2+b^2)^-1 when the norm is invertible mod m.
    mpz_class n = (z.re * z.re + z.im * z.im) % m;
    mpz_class ninv;
    if (!mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
    return mod_reduce({z.re * ninv, -z.im * ninv}, m);
}

ModPair mod_eval(const std::vector<ModPair>& c, const ModPair& x, const mpz_class& m) {
    ModPair acc{0, 0};
    for (std::size_t k = c.size(); k-- > 0;) acc = mod_add(mod_mul(acc, x, m), c[k], m);
    return acc;
}

void roots_by_hensel(const std::vector<GaussianInt>& mono, std::vector<GaussianInt>& out) {
    // mono: monic integral coefficients, squarefree over Q(i).  Scan roots in
    // F_{q^2} for an inert prime q, insist they are all simple (true for all
    // but finitely many q), then Newton-lift and recognize.
    const int deg = static_cast<int>(mono.size()) - 1;
    std::vector<GaussianInt> deriv(deg);
    for (int k = 1; k <= deg; ++k) deriv[k - 1] = GaussianInt(long(k)) * mono[k];

    mpz_class maxn = 0;
    for (const auto& v : mono) maxn = std::max(maxn, v.norm());
    // Cauchy: |root| <= 1 + max |c_k|; components are bounded by the same.
    mpz_class comp_bound;
    mpz_sqrt(comp_bound.get_mpz_t(), maxn.get_mpz_t());
    comp_bound += 2;

    static const long inert_primes[] = {59, 67, 71, 79, 83, 103, 107, 127, 131, 139, 151, 163};
    for (long q : inert_primes) {
        std::vector<std::int64_t> cr(deg + 1), ci(deg + 1), dr(deg), di(deg);
        for (int k = 0; k <= deg; ++k) {
            cr[k] = mpz_class(mono[k].re % q).get_si();
            ci[k] = mpz_class(mono[k].im % q).get_si();
            if (cr[k] < 0) cr[k] += q;
            if (ci[k] < 0) ci[k] += q;
        }
        for (int k = 0; k < deg; ++k) {
            dr[k] = mpz_class(deriv[k].re % q).get_si();
            di[k] = mpz_class(deriv[k].im % q).get_si();
            if (dr[k] < 0) dr[k] += q;
            if (di[k] < 0) di[k] += q;
        }
        auto eval_small = [&](const std::vector<std::int64_t>& vr, const std::vector<std::int64_t>& vi,
                              std::int64_t a, std::int64_t b) {
            std::int64_t ar = 0, ai = 0;
            for (std::size_t k = vr.size(); k-- > 0;) {
                std::int64_t nr = (ar * a - ai * b + vr[k]) % q;
                std::int64_t ni = (ar * b + ai * a + vi[k]) % q;
                ar = nr < 0 ? nr + q : nr;
                ai = ni < 0 ? ni + q : ni;
            }
            return std::pair<std::int64_t, std::int64_t>{ar, ai};
        };
        std::vector<std::pair<std::int64_t, std::int64_t>> base_roots;
        bool simple = true;
        for (std::int64_t a = 0; a < q && simple; ++a)
            for (std::int64_t b = 0; b < q && simple; ++b) {
                auto [pr, pi] = eval_small(cr, ci, a, b);
                if (pr || pi) continue;
                auto [er, ei] = eval_small(dr, di, a, b);
                if (!er && !ei)
                    simple = false;  // multiple root mod q; try the next prime
                else
                    base_roots.emplace_back(a, b);
            }
        if (!simple) continue;

        std::vector<ModPair> coeffs(deg + 1), dcoeffs(deg);
        for (int k = 0; k <= deg; ++k) coeffs[k] = {mono[k].re, mono[k].im};
        for (int k = 0; k < deg; ++k) dcoeffs[k] = {deriv[k].re, deriv[k].im};
        for (auto [a, b] : base_roots) {
            mpz_class m(q);
            ModPair x{a, b};
            while (m <= 2 * comp_bound) {
                m = m * m;
                ModPair fx = mod_eval(coeffs, x, m);
                ModPair dfx = mod_eval(dcoeffs, x, m);
                auto inv = mod_inverse(dfx, m);
                if (!inv) break;  // cannot happen for a simple root; defensive
                ModPair delta = mod_mul(fx, *inv, m);
                x = mod_reduce({x.re - delta.re, x.im - delta.im}, m);
            }
            // Balanced representative and exact verification.
            mpz_class re = x.re, im = x.im;
            if (2 * re > m) re -= m;
            if (2 * im > m) im -= m;
            GaussianInt cand{re, im};
            GaussianRational v = eval_integral(mono, GaussianRational(cand));
            if (v.is_zero()) out.push_back(cand);
        }
        return;
    }
    throw std::runtime_error("gaussian_rational_roots: no usable inert prime (unexpected)");
}

}  // namespace

std::vector<GaussianRational> gaussian_rational_roots(const RationalPolynomial& p) {
    if (p.is_zero()) throw std::domain_error("gaussian_rational_roots: zero polynomial");
    std::vector<GaussianRational> out;
    if (p.is_constant()) return out;

    // Multiplicity is collapsed anyway, so work with the squarefree part.
    RationalPolynomial sf = p;
    RationalPolynomial g = gcd(sf, sf.derivative());
    if (g.degree() > 0) sf = divmod(sf, g).first;

    std::vector<GaussianInt> c = primitive_integral(sf);
    std::size_t shift = 0;
    while (shift < c.size() && c[shift].is_zero()) ++shift;
    if (shift) {
        out.push_back(GaussianRational(0));
        c.erase(c.begin(), c.begin() + shift);
    }
    if (c.size() == 1) {
        // ok: constant after stripping x^k
    } else if (c.size() == 2) {
        out.push_back(GaussianRational(-c[0], c[1]));
    } else {
        // Divisor enumeration is preferred while the constant and leading
        // coefficients factor comfortably; otherwise lift roots q-adically.
        const mpz_class divisor_cap = mpz_class("1000000000000");
        if (c.front().norm() <= divisor_cap && c.back().norm() <= 1000000) {
            roots_by_divisors(c, out);
        } else {
            // Monicize via y = lead*x: the roots of
            // M(y) = lead^(deg-1) p(y/lead) = y^deg + sum c_k lead^(deg-1-k) y^k
            // are lead times the roots of p, and M is integral and monic.
            const GaussianInt& lead = c.back();
            int deg = static_cast<int>(c.size()) - 1;
            std::vector<GaussianInt> mono(c.size());
            mono[deg] = GaussianInt(1);
            GaussianInt pw(1);
            for (int k = deg - 1; k >= 0; --k) {
                mono[k] = c[k] * pw;
                pw = pw * lead;
            }
            std::vector<GaussianInt> integral_roots;
            roots_by_hensel(mono, integral_roots);
            for (const auto& r : integral_roots) out.push_back(GaussianRational(r, lead));
        }
    }
    std::sort(out.begin(), out.end(), GaussianRationalLexLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Torsion points and structure.
// ---------------------------------------------------------------------------

namespace {

// Order of p on c if it divides 18, otherwise nullopt (not torsion for our
// purposes; admissible orders are at most 18).
std::optional<int> order_at_most_18(const Curve& c, const Point& p) {
    Point acc = p;
    for (int n = 1; n <= 18; ++n) {
        if (acc.infinity) return n;
        acc = add(c, acc, p);
    }
    return std::nullopt;
}

}  // namespace

std::vector<Point> torsion_points(const Curve& c) {
    GaussianInt disc = discriminant_quantity(c);
    if (disc.is_zero()) throw std::domain_error("torsion_points: singular curve");

    std::vector<Point> pts{Point::at_infinity()};

    // 2-torsion: y = 0, x a root of the cubic.
    RationalPolynomial X = RationalPolynomial::x();
    RationalPolynomial cubic = pow(X, 3) + GaussianRational(c.A) * X +
                               RationalPolynomial::constant(GaussianRational(c.B));
    for (const auto& r : gaussian_rational_roots(cubic)) pts.emplace_back(r, GaussianRational(0));

    // y != 0: every torsion point is integral with y^2 | disc, so y runs over
    // unit multiples of the "half divisors" d with d^2 | disc.  Integrality
    // needs care only at the ramified prime 1+i (odd primes are unramified and
    // their formal groups are torsion-free).  There a non-integral torsion
    // point would have x-valuation -2 and exact order 4, but then the doubling
    // formula x(2P) = (x^4 - 2Ax^2 - 8Bx + A^2)/(4y^2) gives x(2P) valuation
    // -6, contradicting integrality of 2-torsion (roots of a monic cubic).
    Factorization f = factor(disc);
    std::vector<GaussianInt> half{GaussianInt(1)};
    for (const auto& [pr, e] : f.factors) {
        std::size_t base = half.size();
        GaussianInt pk(1);
        for (unsigned j = 1; j <= e / 2; ++j) {
            pk = pk * pr.value;
            for (std::size_t i = 0; i < base; ++i) half.push_back(half[i] * pk);
        }
    }
    for (const auto& d : half) {
        for (int u = 0; u < 2; ++u) {
            GaussianInt y = u ? d.mul_i() : d;  // -y is added alongside each hit
            GaussianRational y2{y * y};
            RationalPolynomial shifted =
                pow(X, 3) + GaussianRational(c.A) * X +
                RationalPolynomial::constant(GaussianRational(c.B) - y2);
            for (const auto& x : gaussian_rational_roots(shifted)) {
                Point cand(x, GaussianRational(y));
                if (!on_curve(c, cand)) continue;
                if (order_at_most_18(c, cand)) {
                    pts.push_back(cand);
                    pts.push_back(negate(cand));
                }
            }
        }
    }
    std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) {
        if (p.infinity != q.infinity) return p.infinity;
        if (p.infinity) return false;
        if (lex_less(p.x, q.x)) return true;
        if (lex_less(q.x, p.x)) return false;
        return lex_less(p.y, q.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

TorsionLabel torsion_structure(const Curve& c) {
    std::vector<Point> pts = torsion_points(c);
    const int n = static_cast<int>(pts.size());
    int two = 0, four = 0;
    for (const auto& p : pts) {
        Point d = p.infinity ? p : add(c, p, p);
        if (d.infinity) {
            ++two;
            ++four;
        } else if (add(c, d, d).infinity) {
            ++four;
        }
    }
    TorsionLabel label;
    if (two <= 2) {
        label = TorsionLabel::cyclic(n);
    } else if (n == 16 && four == 16) {
        label = TorsionLabel::product(4, 4);
    } else {
        label = TorsionLabel::product(2, n / 2);
    }
    if (!label.is_admissible())
        throw std::logic_error("torsion_structure: computed group " + to_string(label) +
                               " is outside the admissible list");
    return label;
}

}  // namespace qit
