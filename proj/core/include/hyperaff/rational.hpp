#ifndef HYPERAFF_RATIONAL_HPP
#define HYPERAFF_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperaff {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline long double to_long_double(const Rational& q) {
    return static_cast<long double>(boost::multiprecision::numerator(q)) /
           static_cast<long double>(boost::multiprecision::denominator(q));
}

/// Trial-division factorization. Inputs are desk-scale (radicands,
/// numerators/denominators of diagonal entries), so this is plenty.
inline std::map<Int, int> factorize(Int n) {
    if (n <= 0) throw std::invalid_argument("factorize: positive integer required");
    std::map<Int, int> out;
    for (Int p = 2; p * p <= n; ++p) {
        while (n % p == 0) { ++out[p]; n /= p; }
    }
    if (n > 1) ++out[n];
    return out;
}

/// Splits n = square * squarefree, returning (sqrt(square), squarefree).
inline std::pair<Int, Int> squarefree_split(const Int& n) {
    Int root = 1, sf = 1;
    for (const auto& [p, e] : factorize(n)) {
        for (int i = 0; i < e / 2; ++i) root *= p;
        if (e % 2) sf *= p;
    }
    return {root, sf};
}

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

/// Parses "p" or "p/q" with optional sign. Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: '" + s + "'");
    }
}

inline std::string to_string(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1)
        s += "/" + boost::multiprecision::denominator(q).str();
    return s;
}

}  // namespace hyperaff

#endif
