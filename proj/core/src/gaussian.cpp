#include "qit/gaussian.hpp"

#include <algorithm>
#include <cstdlib>

namespace qit {

bool lex_less(const GaussianInt& a, const GaussianInt& b) {
    int c = cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return cmp(a.im, b.im) < 0;
}

mpz_class norm(const GaussianInt& z) { return z.norm(); }

std::pair<GaussianInt, GaussianInt> canonical_associate(const GaussianInt& z) {
    // Multiply by the unique unit that lands z in {re > 0, im >= 0}.
    if (z.is_zero()) return {GaussianInt(0), GaussianInt(1)};
    GaussianInt c = z, u(1);
    // u *= i rotates by a quarter turn; at most three rotations are needed.
    while (!(c.re > 0 && c.im >= 0)) {
        c = c.mul_i();
        u = u.mul_i();
    }
    return {c, u};
}

namespace detail {

mpz_class round_half_even(const mpz_class& n, const mpz_class& d) {
    // Nearest integer to n/d (d > 0), ties to even.
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class twice = 2 * r;
    int c = cmp(twice, d);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    return q;
}

bool is_square(const mpz_class& n, mpz_class* root) {
    if (sgn(n) < 0) return false;
    if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
    if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
    return true;
}

}  // namespace detail

std::pair<GaussianInt, GaussianInt> euclid_divmod(const GaussianInt& a, const GaussianInt& b) {
    if (b.is_zero()) throw std::invalid_argument("euclid_divmod: division by zero");
    // a/b = a*conj(b)/N(b); round both components half-to-even.  The rounded
    // quotient differs from a/b by at most 1/2 per component, so
    // N(r) <= N(b)/2 < N(b).
    GaussianInt t = a * b.conj();
    mpz_class d = b.norm();
    GaussianInt q{detail::round_half_even(t.re, d), detail::round_half_even(t.im, d)};
    GaussianInt r = a - q * b;
    return {q, r};
}

std::optional<GaussianInt> try_divide(const GaussianInt& a, const GaussianInt& b) {
    if (b.is_zero()) return std::nullopt;
    GaussianInt t = a * b.conj();
    mpz_class d = b.norm();
    if (!mpz_divisible_p(t.re.get_mpz_t(), d.get_mpz_t()) ||
        !mpz_divisible_p(t.im.get_mpz_t(), d.get_mpz_t()))
        return std::nullopt;
    return GaussianInt{mpz_class(t.re / d), mpz_class(t.im / d)};
}

GaussianInt gcd(const GaussianInt& a, const GaussianInt& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0,0) is undefined");
    GaussianInt x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = euclid_divmod(x, y);
        x = y;
        y = r;
    }
    return canonical_associate(x).first;
}

GaussianInt Factorization::reassemble() const {
    GaussianInt z = unit;
    for (const auto& [p, e] : factors)
        for (unsigned k = 0; k < e; ++k) z = z * p.value;
    return z;
}

namespace detail {

namespace {

mpz_class pollard_brent(const mpz_class& n) {
    // Brent's cycle variant of Pollard rho; n is odd, composite, not a
    // perfect power of a small prime (trial division already ran).
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1, q = 1, ys = 0;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto f = [&](const mpz_class& v) {
            mpz_class w = (v * v + c) % n;
            return w;
        };
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(x - y)) % n;
                }
                d = ::gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            // Backtrack one step at a time.
            d = 1;
            while (d == 1) {
                ys = f(ys);
                d = ::gcd(mpz_class(abs(x - ys)), n);
            }
        }
        if (d != n) return d;
        // Rare failure: retry with the next polynomial constant.
    }
}

void factor_into(const mpz_class& n, std::vector<std::pair<mpz_class, unsigned>>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out.emplace_back(n, 1);
        return;
    }
    mpz_class d = pollard_brent(n);
    factor_into(d, out);
    factor_into(mpz_class(n / d), out);
}

}  // namespace

std::vector<std::pair<mpz_class, unsigned>> factor_mpz(const mpz_class& n) {
    if (n < 1) throw std::domain_error("factor_mpz requires n >= 1");
    std::vector<std::pair<mpz_class, unsigned>> out;
    mpz_class rem = n;
    auto strip = [&](unsigned long p) {
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) return;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
            ++e;
        }
        out.emplace_back(mpz_class(p), e);
    };
    strip(2);
    strip(3);
    strip(5);
    // 30-wheel over the residues coprime to 2*3*5, up to 10^6; census inputs
    // have all prime factors far below this, so the rho tail is cold.
    static const int wheel[8] = {1, 7, 11, 13, 17, 19, 23, 29};
    for (unsigned long base = 0; base <= 1000000; base += 30) {
        for (int w : wheel) {
            unsigned long p = base + w;
            if (p < 7 || p * p > rem) continue;
            strip(p);
        }
        if (rem == 1) break;
        mpz_class bound = mpz_class(base + 30) * (base + 30);
        if (bound > rem) break;
    }
    if (rem > 1) {
        if (mpz_class(1000001) * 1000001 > rem) {
            out.emplace_back(rem, 1);  // cofactor below the trial bound squared is prime
        } else {
            std::vector<std::pair<mpz_class, unsigned>> tail;
            factor_into(rem, tail);
            std::sort(tail.begin(), tail.end());
            for (auto& [p, e] : tail) {
                if (!out.empty() && out.back().first == p)
                    out.back().second += e;
                else
                    out.emplace_back(p, e);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t gcd_int64_pair(std::int64_t re1, std::int64_t im1, std::int64_t re2,
                             std::int64_t im2) {
    // Euclidean gcd on machine-word Gaussian integers; returns N(gcd).
    // Norms strictly decrease, so intermediates stay within the input range.
    std::int64_t ar = re1, ai = im1, br = re2, bi = im2;
    auto rnd = [](__int128 n, std::int64_t d) -> std::int64_t {
        // Nearest integer to n/d, d > 0 (tie direction is irrelevant for gcd).
        __int128 twice = 2 * n + d;
        __int128 q = twice >= 0 ? twice / (2 * d) : -((-twice + 2 * d - 1) / (2 * d));
        return static_cast<std::int64_t>(q);
    };
    while (br != 0 || bi != 0) {
        std::int64_t d = br * br + bi * bi;
        __int128 tr = static_cast<__int128>(ar) * br + static_cast<__int128>(ai) * bi;
        __int128 ti = static_cast<__int128>(ai) * br - static_cast<__int128>(ar) * bi;
        std::int64_t qr = rnd(tr, d), qi = rnd(ti, d);
        std::int64_t rr = ar - (qr * br - qi * bi);
        std::int64_t ri = ai - (qr * bi + qi * br);
        ar = br;
        ai = bi;
        br = rr;
        bi = ri;
    }
    return static_cast<std::uint64_t>(ar) * ar + static_cast<std::uint64_t>(ai) * ai;
}

namespace {

// Smallest quadratic non-residue mod p (p = 1 mod 4), then r = n^((p-1)/4)
// satisfies r^2 = -1 mod p by Euler's criterion.
mpz_class sqrt_minus_one(const mpz_class& p) {
    mpz_class e = (p - 1) / 2, pm1 = p - 1;
    for (mpz_class n = 2;; ++n) {
        mpz_class t;
        mpz_powm(t.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (t == pm1) {
            mpz_class q = (p - 1) / 4, r;
            mpz_powm(r.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
            return r;
        }
    }
}

}  // namespace

}  // namespace detail

Factorization factor(const GaussianInt& z) {
    if (z.is_zero()) throw std::domain_error("factor(0) is undefined");
    Factorization out;
    GaussianInt w = z;
    auto divide_out = [&w](const GaussianInt& p) {
        unsigned v = 0;
        for (;;) {
            auto q = try_divide(w, p);
            if (!q) return v;
            w = *q;
            ++v;
        }
    };
    for (const auto& [p, e] : detail::factor_mpz(z.norm())) {
        if (p == 2) {
            GaussianPrime pi{GaussianInt(1, 1), GaussianPrime::Kind::ramified};
            unsigned v = divide_out(pi.value);
            out.factors.emplace_back(pi, v);  // N(1+i) = 2, so v = e
        } else if (p % 4 == 3) {
            GaussianPrime pi{GaussianInt(p, mpz_class(0)), GaussianPrime::Kind::inert};
            unsigned v = divide_out(pi.value);
            out.factors.emplace_back(pi, v);  // N(p) = p^2, so v = e/2
        } else {
            mpz_class r = detail::sqrt_minus_one(p);
            GaussianInt pi_val = gcd(GaussianInt(p, mpz_class(0)), GaussianInt(r, mpz_class(1)));
            GaussianPrime pi{pi_val, GaussianPrime::Kind::split};
            GaussianPrime pibar{canonical_associate(pi_val.conj()).first,
                                GaussianPrime::Kind::split};
            unsigned v1 = divide_out(pi.value);
            unsigned v2 = divide_out(pibar.value);
            if (v1) out.factors.emplace_back(pi, v1);
            if (v2) out.factors.emplace_back(pibar, v2);
        }
    }
    if (!w.is_unit()) throw std::logic_error("factor: non-unit cofactor after prime removal");
    out.unit = w;
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        int c = cmp(a.first.value.norm(), b.first.value.norm());
        if (c != 0) return c < 0;
        return lex_less(a.first.value, b.first.value);
    });
    return out;
}

unsigned valuation(const GaussianInt& z, const GaussianInt& prime_value) {
    if (z.is_zero()) throw std::domain_error("valuation of 0 is undefined");
    unsigned v = 0;
    GaussianInt w = z;
    for (;;) {
        auto q = try_divide(w, prime_value);
        if (!q) return v;
        w = *q;
        ++v;
    }
}

unsigned valuation(const GaussianInt& z, const GaussianPrime& p) { return valuation(z, p.value); }

std::pair<GaussianInt, GaussianInt> kth_power_part(const GaussianInt& z, unsigned k) {
    if (z.is_zero()) throw std::domain_error("kth_power_part of 0 is undefined");
    if (k == 0) throw std::invalid_argument("kth_power_part requires k >= 1");
    Factorization f = factor(z);
    GaussianInt d(1);
    for (const auto& [p, e] : f.factors)
        for (unsigned j = 0; j < e / k; ++j) d = d * p.value;
    d = canonical_associate(d).first;
    GaussianInt dk(1);
    for (unsigned j = 0; j < k; ++j) dk = dk * d;
    auto rest = try_divide(z, dk);
    if (!rest) throw std::logic_error("kth_power_part: d^k does not divide z");
    return {d, canonical_associate(*rest).first};
}

std::vector<GaussianInt> divisors_up_to_units(const GaussianInt& z) {
    Factorization f = factor(z);
    std::vector<GaussianInt> out{GaussianInt(1)};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = out.size();
        GaussianInt pk(1);
        for (unsigned j = 1; j <= e; ++j) {
            pk = pk * p.value;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    for (auto& d : out) d = canonical_associate(d).first;
    std::sort(out.begin(), out.end(), [](const GaussianInt& a, const GaussianInt& b) {
        int c = cmp(a.norm(), b.norm());
        if (c != 0) return c < 0;
        return lex_less(a, b);
    });
    return out;
}

std::string to_string(const GaussianInt& z) {
    if (z.im == 0) return z.re.get_str();
    std::string im_part;
    if (z.im == 1)
        im_part = "i";
    else if (z.im == -1)
        im_part = "-i";
    else
        im_part = z.im.get_str() + "i";
    if (z.re == 0) return im_part;
    if (z.im > 0) return z.re.get_str() + "+" + im_part;
    return z.re.get_str() + im_part;  // im_part already carries the minus sign
}

namespace {

// One signed term of the "a+bi" grammar: [+|-] (digits [i] | i).
// Returns (value, is_imaginary) and advances pos.
std::pair<mpz_class, bool> parse_term(const std::string& s, std::size_t& pos) {
    mpz_class sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') sign = -1;
        ++pos;
    }
    if (pos < s.size() && s[pos] == 'i') {
        ++pos;
        return {sign, true};
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("bad Gaussian integer literal");
    mpz_class mag(s.substr(start, pos - start));
    bool imag = false;
    if (pos < s.size() && s[pos] == 'i') {
        imag = true;
        ++pos;
    }
    return {mpz_class(sign * mag), imag};
}

}  // namespace

GaussianInt parse_gaussian(const std::string& text) {
    std::size_t pos = 0;
    auto [v1, imag1] = parse_term(text, pos);
    if (pos == text.size()) return imag1 ? GaussianInt(mpz_class(0), v1) : GaussianInt(v1, mpz_class(0));
    auto [v2, imag2] = parse_term(text, pos);
    if (pos != text.size() || imag1 == imag2)
        throw std::invalid_argument("bad Gaussian integer literal: " + text);
    if (imag1) return {v2, v1};
    return {v1, v2};
}

GaussianRational::GaussianRational(const GaussianInt& n, const GaussianInt& d) {
    if (d.is_zero()) throw std::invalid_argument("GaussianRational: zero denominator");
    if (n.is_zero()) {
        num = GaussianInt(0);
        den = GaussianInt(1);
        return;
    }
    GaussianInt g = gcd(n, d);
    GaussianInt rn = *try_divide(n, g), rd = *try_divide(d, g);
    auto [c, u] = canonical_associate(rd);
    num = rn * u;
    den = c;
}

mpq_class GaussianRational::norm() const {
    mpq_class q(num.norm(), den.norm());
    q.canonicalize();
    return q;
}

GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.num * b.num, a.den * b.den};
}
GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
    return {a.num * b.den, a.den * b.num};
}
GaussianRational GaussianRational::operator-() const {
    GaussianRational r;
    r.num = -num;
    r.den = den;
    return r;
}
GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: inverse of zero");
    return {den, num};
}

bool lex_less(const GaussianRational& a, const GaussianRational& b) {
    if (lex_less(a.num, b.num)) return true;
    if (lex_less(b.num, a.num)) return false;
    return lex_less(a.den, b.den);
}

long valuation(const GaussianRational& q, const GaussianPrime& p) {
    if (q.is_zero()) throw std::domain_error("valuation of 0 is undefined");
    return static_cast<long>(valuation(q.num, p)) - static_cast<long>(valuation(q.den, p));
}

namespace {

std::string wrap_composite(const std::string& s) {
    // Parenthesize iff a sign appears past position 0 ("1+i", "3-4i").
    for (std::size_t k = 1; k < s.size(); ++k)
        if (s[k] == '+' || s[k] == '-') return "(" + s + ")";
    return s;
}

}  // namespace

std::string to_string(const GaussianRational& q) {
    if (q.den.is_one()) return to_string(q.num);
    return wrap_composite(to_string(q.num)) + "/" + wrap_composite(to_string(q.den));
}

GaussianRational parse_gaussian_rational(const std::string& text) {
    int depth = 0;
    std::size_t slash = std::string::npos;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] == '(') ++depth;
        if (text[k] == ')') --depth;
        if (text[k] == '/' && depth == 0) {
            if (slash != std::string::npos)
                throw std::invalid_argument("bad Gaussian rational literal: " + text);
            slash = k;
        }
    }
    auto strip = [](std::string s) {
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')') return s.substr(1, s.size() - 2);
        return s;
    };
    if (slash == std::string::npos) return GaussianRational(parse_gaussian(strip(text)));
    GaussianInt n = parse_gaussian(strip(text.substr(0, slash)));
    GaussianInt d = parse_gaussian(strip(text.substr(slash + 1)));
    return {n, d};
}

}  // namespace qit
