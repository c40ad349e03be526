#include "qit/polynomial.hpp"

#include <sstream>

namespace qit {

RationalPolynomial RationalPolynomial::constant(const GaussianRational& v) {
    return RationalPolynomial(std::vector<GaussianRational>{v});
}

RationalPolynomial RationalPolynomial::monomial(const GaussianRational& v, std::size_t k) {
    std::vector<GaussianRational> c(k + 1, GaussianRational(0));
    c[k] = v;
    return RationalPolynomial(std::move(c));
}

GaussianRational RationalPolynomial::eval(const GaussianRational& t) const {
    GaussianRational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussianRational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = GaussianRational(long(k)) * c_[k];
    return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
    if (is_zero()) return {};
    return leading().inverse() * *this;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()), GaussianRational(0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()), GaussianRational(0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1, GaussianRational(0));
    for (std::size_t j = 0; j < a.c_.size(); ++j)
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[j + k] = c[j + k] + a.c_[j] * b.c_[k];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const GaussianRational& s, const RationalPolynomial& p) {
    if (s.is_zero()) return {};
    std::vector<GaussianRational> c(p.c_);
    for (auto& v : c) v = s * v;
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-() const {
    std::vector<GaussianRational> c(c_);
    for (auto& v : c) v = -v;
    return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<GaussianRational> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {{}, a};
    std::vector<GaussianRational> quot(a.degree() - db + 1, GaussianRational(0));
    GaussianRational inv_lead = b.leading().inverse();
    for (int k = a.degree(); k >= db; --k) {
        GaussianRational c = rem[k] * inv_lead;
        if (c.is_zero()) continue;
        quot[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - c * b.coeff(j);
    }
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial x = a, y = b;
    while (!y.is_zero()) {
        auto [q, r] = divmod(x, y);
        x = y;
        y = r;
    }
    return x.monic();
}

RationalPolynomial lcm(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    RationalPolynomial g = gcd(a, b);
    return divmod(a * b, g).first.monic();
}

RationalPolynomial pow(const RationalPolynomial& p, unsigned k) {
    RationalPolynomial acc = RationalPolynomial::constant(GaussianRational(1));
    for (unsigned j = 0; j < k; ++j) acc = acc * p;
    return acc;
}

bool is_squarefree(const RationalPolynomial& p) {
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

std::vector<std::pair<RationalPolynomial, unsigned>> squarefree_decomposition(
    const RationalPolynomial& p) {
    // Yun's algorithm (characteristic 0).
    std::vector<std::pair<RationalPolynomial, unsigned>> out;
    if (p.is_zero() || p.is_constant()) return out;
    RationalPolynomial a = p.monic();
    RationalPolynomial g = gcd(a, a.derivative());
    RationalPolynomial c = divmod(a, g).first;
    RationalPolynomial d = divmod(a.derivative(), g).first - c.derivative();
    for (unsigned j = 1; !c.is_constant(); ++j) {
        RationalPolynomial s = gcd(c, d);
        if (s.degree() > 0) out.emplace_back(s, j);
        c = divmod(c, s).first;
        d = divmod(d, s).first - c.derivative();
    }
    return out;
}

std::pair<RationalPolynomial, GaussianInt> scale_to_integral(const RationalPolynomial& p) {
    GaussianInt l(1);
    for (const auto& c : p.coeffs())
        if (!c.den.is_one()) l = canonical_associate(*try_divide(l * c.den, gcd(l, c.den))).first;
    return {GaussianRational(l) * p, l};
}

std::string to_string(const RationalPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (k) os << ',';
        os << to_string(p.coeffs()[k]);
    }
    return os.str();
}

RationalPolynomial parse_polynomial(const std::string& text) {
    std::vector<GaussianRational> c;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        c.push_back(parse_gaussian_rational(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return RationalPolynomial(std::move(c));
}

RationalFunction::RationalFunction(RationalPolynomial n, RationalPolynomial d) {
    if (d.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    if (n.is_zero()) {
        num = {};
        den = RationalPolynomial::constant(GaussianRational(1));
        return;
    }
    RationalPolynomial g = gcd(n, d);
    n = divmod(n, g).first;
    d = divmod(d, g).first;
    GaussianRational lead = d.leading();
    num = lead.inverse() * n;
    den = lead.inverse() * d;
}

std::optional<GaussianRational> RationalFunction::eval(const GaussianRational& t) const {
    GaussianRational dv = den.eval(t);
    if (dv.is_zero()) return std::nullopt;
    return num.eval(t) / dv;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num * b.num, a.den * b.den};
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    return {a.num * b.den, a.den * b.num};
}

}  // namespace qit
