#include "qit/curve.hpp"

namespace qit {

GaussianInt discriminant_quantity(const Curve& c) {
    return GaussianInt(4) * c.A * c.A * c.A + GaussianInt(27) * c.B * c.B;
}

mpz_class height(const Curve& c) {
    mpz_class na = c.A.norm(), nb = c.B.norm();
    mpz_class ha = na * na * na, hb = nb * nb;
    return ha > hb ? ha : hb;
}

namespace {

// Exponent of the largest d with d^4 | A and d^6 | B at each prime, i.e.
// min(floor(v_p(A)/4), floor(v_p(B)/6)); primes only need checking when they
// divide the relevant gcd.
GaussianInt reduction_scale(const Curve& c) {
    GaussianInt d(1);
    const bool a0 = c.A.is_zero(), b0 = c.B.is_zero();
    GaussianInt probe = a0 ? c.B : (b0 ? c.A : gcd(c.A, c.B));
    if (probe.is_zero() || probe.is_unit()) return d;
    for (const auto& [p, e] : factor(probe).factors) {
        (void)e;
        unsigned va = a0 ? 0 : valuation(c.A, p);
        unsigned vb = b0 ? 0 : valuation(c.B, p);
        unsigned k = a0 ? vb / 6 : (b0 ? va / 4 : std::min(va / 4, vb / 6));
        for (unsigned j = 0; j < k; ++j) d = d * p.value;
    }
    return canonical_associate(d).first;
}

}  // namespace

bool is_minimal(const Curve& c) {
    if (c.A.is_zero() && c.B.is_zero()) throw std::domain_error("is_minimal: A = B = 0");
    return reduction_scale(c).is_unit();
}

GaussianInt minimalize_scale(const Curve& c) {
    if (discriminant_quantity(c).is_zero()) throw std::domain_error("minimalize: singular curve");
    return reduction_scale(c);
}

Curve minimalize(const Curve& c) {
    GaussianInt d = minimalize_scale(c);
    if (d.is_unit()) return c;
    GaussianInt d2 = d * d, d4 = d2 * d2, d6 = d4 * d2;
    return {*try_divide(c.A, d4), *try_divide(c.B, d6)};
}

IsoClass iso_class(const Curve& c) {
    if (!is_minimal(c)) throw std::invalid_argument("iso_class: input must be minimal");
    GaussianInt nb = -c.B;
    if (lex_less(c.B, nb)) return {{c.A, nb}};
    return {{c.A, c.B}};
}

bool on_curve(const Curve& c, const Point& p) {
    if (p.infinity) return true;
    GaussianRational rhs = p.x * p.x * p.x + GaussianRational(c.A) * p.x + GaussianRational(c.B);
    return p.y * p.y == rhs;
}

Point negate(const Point& p) {
    if (p.infinity) return p;
    return {p.x, -p.y};
}

Point add(const Curve& c, const Point& p, const Point& q) {
    if (!on_curve(c, p) || !on_curve(c, q)) throw std::domain_error("add: point not on curve");
    if (p.infinity) return q;
    if (q.infinity) return p;
    GaussianRational lambda;
    if (p.x == q.x) {
        if (p.y == -q.y) return Point::at_infinity();
        // Tangent line; y != 0 here since y = -y would have matched above.
        lambda = (GaussianRational(3) * p.x * p.x + GaussianRational(c.A)) /
                 (GaussianRational(2) * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    GaussianRational x3 = lambda * lambda - p.x - q.x;
    GaussianRational y3 = lambda * (p.x - x3) - p.y;  // already the reflected ordinate
    return {x3, y3};
}

Point scalar_mul(const Curve& c, long k, const Point& p) {
    if (!on_curve(c, p)) throw std::domain_error("scalar_mul: point not on curve");
    Point base = p;
    if (k < 0) {
        base = negate(base);
        k = -k;
    }
    Point acc = Point::at_infinity();
    while (k > 0) {
        if (k & 1) acc = add(c, acc, base);
        k >>= 1;
        if (k) base = add(c, base, base);
    }
    return acc;
}

GaussianRational j_invariant(const Curve& c) {
    GaussianInt disc = discriminant_quantity(c);
    if (disc.is_zero()) throw std::domain_error("j_invariant: singular curve");
    GaussianInt a3 = c.A * c.A * c.A;
    return GaussianRational(GaussianInt(6912) * a3, disc);
}

std::string to_string(const Curve& c) {
    return "[" + to_string(c.A) + "," + to_string(c.B) + "]";
}

Curve parse_curve(const std::string& text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw std::invalid_argument("bad curve literal: " + text);
    std::string body = text.substr(1, text.size() - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad curve literal: " + text);
    return {parse_gaussian(body.substr(0, comma)), parse_gaussian(body.substr(comma + 1))};
}

std::string to_string(const Point& p) {
    if (p.infinity) return "O";
    return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
}

Point parse_point(const std::string& text) {
    if (text == "O") return Point::at_infinity();
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw std::invalid_argument("bad point literal: " + text);
    std::string body = text.substr(1, text.size() - 2);
    int depth = 0;
    for (std::size_t k = 0; k < body.size(); ++k) {
        if (body[k] == '(') ++depth;
        if (body[k] == ')') --depth;
        if (body[k] == ',' && depth == 0)
            return {parse_gaussian_rational(body.substr(0, k)),
                    parse_gaussian_rational(body.substr(k + 1))};
    }
    throw std::invalid_argument("bad point literal: " + text);
}

}  // namespace qit
