#ifndef HYPERAFF_SCALAR_HPP
#define HYPERAFF_SCALAR_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyperaff/rational.hpp"
#include "hyperaff/symbols.hpp"

namespace hyperaff {

/// Canonical monomial: at most one radical sqrt(d) with d squarefree >= 2,
/// times a Laurent monomial in transcendental symbols (nonzero integer
/// exponents, sorted by name). The empty monomial is 1.
struct Monomial {
    Int radicand = 1;  // 1 means no radical
    std::vector<std::pair<Symbol, int>> trans;

    bool is_one() const { return radicand == 1 && trans.empty(); }

    long double approx() const {
        long double v = radicand == 1
                            ? 1.0L
                            : std::sqrt(static_cast<long double>(radicand));
        for (const auto& [sym, exp] : trans) v *= std::pow(sym.approx, static_cast<long double>(exp));
        return v;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.radicand == b.radicand && a.trans == b.trans;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.radicand != b.radicand) return a.radicand < b.radicand;
        return a.trans < b.trans;
    }

    std::string str() const;
};

/// Product of two canonical monomials; radical collision produces a rational
/// cofactor (sqrt(a)sqrt(b) = g sqrt(ab/g^2), g = gcd(a,b)).
std::pair<Rational, Monomial> mul(const Monomial& x, const Monomial& y);

/// Builds sqrt(d) for rational d > 0 in canonical form: a rational
/// coefficient times a squarefree radical monomial.
std::pair<Rational, Monomial> sqrt_monomial(const Rational& d);

inline Monomial symbol_monomial(const Symbol& s, int exp = 1) {
    Monomial m;
    if (exp != 0) m.trans.emplace_back(s, exp);
    return m;
}

/// Exact real scalar: finite Q-linear combination of canonical monomials.
/// Zero coefficients are never stored, so equality of term maps is equality
/// of values (conditional on the declared independence of the symbols).
class SymScalar {
public:
    SymScalar() = default;
    explicit SymScalar(const Rational& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    SymScalar(const Rational& c, const Monomial& m) {
        if (c != 0) terms_[m] = c;
    }

    static SymScalar sqrt(const Rational& d) {
        auto [c, m] = sqrt_monomial(d);
        return SymScalar(c, m);
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    /// Value as a rational; only valid when is_rational().
    Rational rational_value() const {
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    long double approx() const {
        long double v = 0.0L;
        for (const auto& [m, c] : terms_) v += to_long_double(c) * m.approx();
        return v;
    }

    SymScalar& operator+=(const SymScalar& o);
    SymScalar& operator-=(const SymScalar& o);
    friend SymScalar operator+(SymScalar a, const SymScalar& b) { return a += b; }
    friend SymScalar operator-(SymScalar a, const SymScalar& b) { return a -= b; }
    friend SymScalar operator*(const SymScalar& a, const SymScalar& b);
    friend SymScalar operator-(const SymScalar& a);
    friend SymScalar operator*(const Rational& c, const SymScalar& a);

    friend bool operator==(const SymScalar& a, const SymScalar& b) {
        return a.terms_ == b.terms_;
    }

    /// Inverse, when this is a single term c*m: 1/(c*m) = (1/c') * m^(-1)
    /// with the radical inverted via sqrt(d)^(-1) = sqrt(d)/d. Returns false
    /// for multi-term scalars (the tower is a ring, not a field).
    bool try_invert(SymScalar& out) const;

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

inline bool is_zero_exact(const SymScalar& x) { return x.is_zero(); }

/// Expands a family of scalars over the union of their monomials: returns the
/// sorted monomial basis and, per scalar, its rational coordinate row.
std::pair<std::vector<Monomial>, std::vector<std::vector<Rational>>> q_coordinates(
    const std::vector<SymScalar>& xs);

}  // namespace hyperaff

#endif
