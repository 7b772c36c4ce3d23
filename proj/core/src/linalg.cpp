#include "hyperaff/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperaff {

Rational rational_content(const SymScalar& x) {
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : x.terms()) {
        num_gcd = gcd_int(num_gcd, boost::multiprecision::numerator(c));
        den_lcm = lcm_int(den_lcm, boost::multiprecision::denominator(c));
    }
    if (num_gcd == 0) return Rational(1);
    if (num_gcd < 0) num_gcd = -num_gcd;
    return Rational(num_gcd, den_lcm);
}

SymFrac::SymFrac(SymScalar n, SymScalar d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("SymFrac: zero denominator");
    if (num.is_zero()) {
        den = SymScalar(Rational(1));
        return;
    }
    SymScalar dinv;
    if (den.try_invert(dinv)) {
        num = num * dinv;
        den = SymScalar(Rational(1));
        return;
    }
    Rational c = rational_content(den);
    Rational cinv = Rational(1) / c;
    num = cinv * num;
    den = cinv * den;
}

SymFrac operator+(const SymFrac& a, const SymFrac& b) {
    return SymFrac(a.num * b.den + b.num * a.den, a.den * b.den);
}
SymFrac operator-(const SymFrac& a, const SymFrac& b) {
    return SymFrac(a.num * b.den - b.num * a.den, a.den * b.den);
}
SymFrac operator*(const SymFrac& a, const SymFrac& b) {
    return SymFrac(a.num * b.num, a.den * b.den);
}
SymFrac operator/(const SymFrac& a, const SymFrac& b) {
    if (b.is_zero()) throw std::invalid_argument("SymFrac: division by zero");
    return SymFrac(a.num * b.den, a.den * b.num);
}
SymFrac operator-(const SymFrac& a) {
    SymFrac out;
    out.num = -a.num;
    out.den = a.den;
    return out;
}

SymRankResult sym_rank_nullspace(const std::vector<std::vector<SymScalar>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<SymFrac>> f(rows, std::vector<SymFrac>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) f[i][j] = SymFrac(m[i][j]);

    std::vector<std::size_t> perm(cols);
    for (std::size_t j = 0; j < cols; ++j) perm[j] = j;

    std::size_t rank = 0;
    for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
        // full pivoting by shadow magnitude among exactly nonzero candidates
        std::size_t pi = rows, pj = cols;
        long double best = -1.0L;
        for (std::size_t i = step; i < rows; ++i)
            for (std::size_t j = step; j < cols; ++j) {
                if (f[i][j].is_zero()) continue;
                long double mag = std::fabs(static_cast<long double>(f[i][j].approx()));
                if (mag > best) { best = mag; pi = i; pj = j; }
            }
        if (pi == rows) break;
        std::swap(f[step], f[pi]);
        if (pj != step) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(f[i][step], f[i][pj]);
            std::swap(perm[step], perm[pj]);
        }
        SymFrac pinv = SymFrac(SymScalar(Rational(1))) / f[step][step];
        for (std::size_t j = step; j < cols; ++j) f[step][j] = f[step][j] * pinv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == step || f[i][step].is_zero()) continue;
            SymFrac factor = f[i][step];
            for (std::size_t j = step; j < cols; ++j)
                f[i][j] = f[i][j] - factor * f[step][j];
        }
        ++rank;
    }

    SymRankResult out;
    out.rank = rank;
    // reduced form (in permuted columns): [I_rank B; 0 0]
    for (std::size_t free_col = rank; free_col < cols; ++free_col) {
        std::vector<SymFrac> x(cols);
        x[free_col] = SymFrac(SymScalar(Rational(1)));
        for (std::size_t i = 0; i < rank; ++i) x[i] = -f[i][free_col];
        // clear denominators
        SymScalar mult(Rational(1));
        for (const auto& e : x)
            if (!e.is_zero()) mult = mult * e.den;
        std::vector<SymScalar> v(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            if (x[j].is_zero()) continue;
            SymFrac cleared = x[j] * SymFrac(mult);
            if (!cleared.den.is_rational())
                throw std::logic_error("sym_rank_nullspace: denominator clearing failed");
            v[perm[j]] = (Rational(1) / cleared.den.rational_value()) * cleared.num;
        }
        Rational content = 0;
        for (const auto& e : v)
            if (!e.is_zero()) {
                // gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2)
                Rational c = rational_content(e);
                content = content == 0
                              ? c
                              : Rational(gcd_int(boost::multiprecision::numerator(content),
                                                 boost::multiprecision::numerator(c)),
                                         lcm_int(boost::multiprecision::denominator(content),
                                                 boost::multiprecision::denominator(c)));
            }
        if (content != 0 && content != 1) {
            Rational inv = Rational(1) / content;
            for (auto& e : v) e = inv * e;
        }
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Rational>> rational_nullspace(
    const std::vector<std::vector<Rational>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<Rational>> f = m;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (f[i][c] != 0) { piv = i; break; }
        if (piv == rows) continue;
        std::swap(f[r], f[piv]);
        Rational inv = Rational(1) / f[r][c];
        for (std::size_t j = c; j < cols; ++j) f[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f[i][c] == 0) continue;
            Rational factor = f[i][c];
            for (std::size_t j = c; j < cols; ++j) f[i][j] -= factor * f[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> x(cols, Rational(0));
        x[c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = -f[i][c];
        basis.push_back(std::move(x));
    }
    return basis;
}

std::vector<Int> to_integer_vector(const std::vector<Rational>& v) {
    Int den_lcm = 1;
    for (const auto& q : v) den_lcm = lcm_int(den_lcm, boost::multiprecision::denominator(q));
    std::vector<Int> out;
    Int g = 0;
    for (const auto& q : v) {
        Int x = boost::multiprecision::numerator(q) *
                (den_lcm / boost::multiprecision::denominator(q));
        g = gcd_int(g, x);
        out.push_back(x);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

void lll_reduce(std::vector<std::vector<Int>>& basis) {
    const std::size_t m = basis.size();
    if (m < 2) return;
    const std::size_t d = basis[0].size();

    auto dot = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    auto as_rational = [&](const std::vector<Int>& v) {
        std::vector<Rational> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
        return r;
    };

    std::vector<std::vector<Rational>> gso(m);
    std::vector<std::vector<Rational>> mu(m, std::vector<Rational>(m, Rational(0)));
    std::vector<Rational> norm2(m);

    auto recompute = [&]() {
        for (std::size_t i = 0; i < m; ++i) {
            gso[i] = as_rational(basis[i]);
            for (std::size_t j = 0; j < i; ++j) {
                mu[i][j] = norm2[j] == 0 ? Rational(0)
                                         : dot(as_rational(basis[i]), gso[j]) / norm2[j];
                for (std::size_t k = 0; k < d; ++k) gso[i][k] -= mu[i][j] * gso[j][k];
            }
            norm2[i] = dot(gso[i], gso[i]);
        }
    };
    recompute();

    auto round_rational = [](const Rational& q) {
        Int n = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
        Int twice = 2 * n + den;  // floor((2n + den) / (2 den)) = round(n/den)
        Int r = twice / (2 * den);
        if (twice < 0 && twice % (2 * den) != 0) --r;
        return r;
    };

    const Rational delta(3, 4);
    std::size_t k = 1;
    std::size_t guard = 0, guard_max = 10000 * m * m;
    while (k < m && ++guard < guard_max) {
        for (std::size_t j = k; j-- > 0;) {
            Int r = round_rational(mu[k][j]);
            if (r != 0) {
                for (std::size_t t = 0; t < d; ++t) basis[k][t] -= r * basis[j][t];
                recompute();
            }
        }
        if (norm2[k - 1] == 0 ||
            norm2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norm2[k - 1]) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
}

}  // namespace hyperaff
