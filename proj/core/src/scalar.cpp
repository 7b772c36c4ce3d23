#include "hyperaff/scalar.hpp"

#include <sstream>

namespace hyperaff {

std::pair<Rational, Monomial> sqrt_monomial(const Rational& d) {
    if (d <= 0) throw std::invalid_argument("sqrt: positive rational required");
    // sqrt(p/q) = sqrt(p*q)/q
    Int p = boost::multiprecision::numerator(d);
    Int q = boost::multiprecision::denominator(d);
    auto [root, sf] = squarefree_split(p * q);
    Monomial m;
    m.radicand = sf;
    return {Rational(root, q), m};
}

std::pair<Rational, Monomial> mul(const Monomial& x, const Monomial& y) {
    Monomial out;
    Rational coeff = 1;
    if (x.radicand == 1) {
        out.radicand = y.radicand;
    } else if (y.radicand == 1) {
        out.radicand = x.radicand;
    } else {
        Int g = gcd_int(x.radicand, y.radicand);
        coeff = g;
        out.radicand = (x.radicand / g) * (y.radicand / g);
    }
    // merge sorted Laurent parts, dropping cancelled exponents
    auto it = x.trans.begin(), jt = y.trans.begin();
    while (it != x.trans.end() || jt != y.trans.end()) {
        if (jt == y.trans.end() || (it != x.trans.end() && it->first < jt->first)) {
            out.trans.push_back(*it++);
        } else if (it == x.trans.end() || jt->first < it->first) {
            out.trans.push_back(*jt++);
        } else {
            int e = it->second + jt->second;
            if (e != 0) out.trans.emplace_back(it->first, e);
            ++it, ++jt;
        }
    }
    return {coeff, out};
}

void SymScalar::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymScalar& SymScalar::operator+=(const SymScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SymScalar& SymScalar::operator-=(const SymScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SymScalar operator-(const SymScalar& a) {
    SymScalar out;
    for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
}

SymScalar operator*(const Rational& c, const SymScalar& a) {
    SymScalar out;
    if (c == 0) return out;
    for (const auto& [m, k] : a.terms_) out.terms_[m] = c * k;
    return out;
}

SymScalar operator*(const SymScalar& a, const SymScalar& b) {
    SymScalar out;
    for (const auto& [mx, cx] : a.terms_)
        for (const auto& [my, cy] : b.terms_) {
            auto [red, m] = mul(mx, my);
            out.add_term(m, cx * cy * red);
        }
    return out;
}

bool SymScalar::try_invert(SymScalar& out) const {
    if (terms_.size() != 1) return false;
    const auto& [m, c] = *terms_.begin();
    Monomial inv;
    Rational coeff = Rational(1) / c;
    if (m.radicand != 1) {
        inv.radicand = m.radicand;  // 1/sqrt(d) = sqrt(d)/d
        coeff /= Rational(m.radicand);
    }
    for (const auto& [sym, exp] : m.trans) inv.trans.emplace_back(sym, -exp);
    out = SymScalar(coeff, inv);
    return true;
}

std::string Monomial::str() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    if (radicand != 1) {
        os << "sqrt(" << radicand.str() << ")";
        first = false;
    }
    for (const auto& [sym, exp] : trans) {
        if (!first) os << "*";
        first = false;
        os << sym.name;
        if (exp != 1) os << "^" << exp;
    }
    return os.str();
}

std::string SymScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational ac = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << to_string(ac);
        } else if (ac == 1) {
            os << m.str();
        } else {
            os << to_string(ac) << "*" << m.str();
        }
    }
    return os.str();
}

std::pair<std::vector<Monomial>, std::vector<std::vector<Rational>>> q_coordinates(
    const std::vector<SymScalar>& xs) {
    std::vector<Monomial> basis;
    for (const auto& x : xs)
        for (const auto& [m, c] : x.terms()) basis.push_back(m);
    std::sort(basis.begin(), basis.end());
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

    std::vector<std::vector<Rational>> coords;
    coords.reserve(xs.size());
    for (const auto& x : xs) {
        std::vector<Rational> row(basis.size(), Rational(0));
        for (const auto& [m, c] : x.terms()) {
            auto it = std::lower_bound(basis.begin(), basis.end(), m);
            row[static_cast<size_t>(it - basis.begin())] = c;
        }
        coords.push_back(std::move(row));
    }
    return {basis, coords};
}

}  // namespace hyperaff
