#ifndef HYPERAFF_LINALG_HPP
#define HYPERAFF_LINALG_HPP

#include <vector>

#include "hyperaff/scalar.hpp"

namespace hyperaff {

/// Fraction over the scalar tower (no polynomial gcd; normalization divides
/// out rational content and absorbs single-term denominators).
struct SymFrac {
    SymScalar num, den = SymScalar(Rational(1));

    SymFrac() = default;
    explicit SymFrac(SymScalar n) : num(std::move(n)) {}
    SymFrac(SymScalar n, SymScalar d);

    bool is_zero() const { return num.is_zero(); }
    long double approx() const { return num.approx() / den.approx(); }

    friend SymFrac operator+(const SymFrac& a, const SymFrac& b);
    friend SymFrac operator-(const SymFrac& a, const SymFrac& b);
    friend SymFrac operator*(const SymFrac& a, const SymFrac& b);
    friend SymFrac operator/(const SymFrac& a, const SymFrac& b);
    friend SymFrac operator-(const SymFrac& a);
};

/// Positive rational content (gcd of coefficient numerators over lcm of
/// denominators); content of 0 is 1.
Rational rational_content(const SymScalar& x);

struct SymRankResult {
    std::size_t rank = 0;
    /// Right null-space basis with denominators cleared to SymScalar entries,
    /// each vector divided by its rational content.
    std::vector<std::vector<SymScalar>> nullspace;
};

/// Gauss-Jordan over the fraction field with full pivoting on the float
/// shadow magnitude (pivot choice only; zero tests are exact).
SymRankResult sym_rank_nullspace(const std::vector<std::vector<SymScalar>>& m);

/// Null-space basis of a rational matrix (RREF).
std::vector<std::vector<Rational>> rational_nullspace(
    const std::vector<std::vector<Rational>>& m);

/// Scales a rational vector to coprime integers.
std::vector<Int> to_integer_vector(const std::vector<Rational>& v);

/// In-place LLL reduction (delta = 3/4) of the lattice spanned by the rows.
void lll_reduce(std::vector<std::vector<Int>>& basis);

}  // namespace hyperaff

#endif
