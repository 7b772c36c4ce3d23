#include "hyperaff/density.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace hyperaff {

std::vector<CVector> q_w0_generators(const std::vector<AffineMap>& fprimes,
                                     const NormalForm& nf) {
    const std::size_t n = nf.w0.size();
    std::vector<CVector> gens;
    for (const auto& fp : fprimes) {
        if (fp.n != n) throw DimensionMismatch("q_w0_generators: witness dimension mismatch");
        gens.push_back(fp(nf.w0));
    }
    CNumber two_pi_i(SymScalar(), SymScalar(Rational(2), symbol_monomial(pi_symbol())));
    for (std::size_t k = 2; k <= nf.partition.r(); ++k) {
        CVector pe = nf.P.apply(basis_vector_e(k, nf.partition));
        CVector g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = two_pi_i * pe[i + 1];
        gens.push_back(std::move(g));
    }
    return gens;
}

PropertyDMatrix assemble_property_d(const DensityInstance& instance) {
    PropertyDMatrix m;
    m.n = instance.n;
    m.q = instance.q();
    m.exact = true;
    for (const auto& g : instance.generators) {
        if (g.size() != instance.n)
            throw DimensionMismatch("assemble_property_d: generator length mismatch");
        for (const auto& c : g)
            if (!c.is_exact()) m.exact = false;
    }
    m.rows.assign(2 * m.n, std::vector<SymScalar>(m.q));
    m.shadow.assign(2 * m.n, std::vector<double>(m.q, 0.0));
    for (std::size_t j = 0; j < m.q; ++j) {
        for (std::size_t i = 0; i < m.n; ++i) {
            const CNumber& c = instance.generators[j][i];
            if (m.exact) {
                m.rows[i][j] = c.re();
                m.rows[m.n + i][j] = c.im();
            }
            m.shadow[i][j] = c.approx().real();
            m.shadow[m.n + i][j] = c.approx().imag();
        }
    }
    return m;
}

namespace {

/// Subset DP determinant (division-free) over the scalar tower.
SymScalar sym_det(const std::vector<std::vector<SymScalar>>& a) {
    const std::size_t k = a.size();
    if (k == 0) return SymScalar(Rational(1));
    std::vector<SymScalar> dp(std::size_t(1) << k);
    dp[0] = SymScalar(Rational(1));
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << k); ++mask) {
        std::size_t r = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
        SymScalar acc;
        for (std::size_t col = 0; col < k; ++col) {
            if (!(mask & (std::uint64_t(1) << col))) continue;
            if (a[r][col].is_zero()) continue;
            int parity = __builtin_popcountll(mask >> (col + 1));
            SymScalar contrib = a[r][col] * dp[mask ^ (std::uint64_t(1) << col)];
            acc += parity % 2 ? -contrib : contrib;
        }
        dp[mask] = std::move(acc);
    }
    return dp[(std::uint64_t(1) << k) - 1];
}

std::vector<Int> unit_witness(std::size_t q) {
    std::vector<Int> s(q, 0);
    if (!s.empty()) s[0] = 1;
    return s;
}

}  // namespace

std::vector<SymScalar> determinant_linear_form(const PropertyDMatrix& m) {
    if (!m.exact || m.q != 2 * m.n + 1)
        throw std::invalid_argument("determinant_linear_form: exact q = 2n + 1 required");
    std::vector<SymScalar> coeffs(m.q);
    for (std::size_t j = 0; j < m.q; ++j) {
        std::vector<std::vector<SymScalar>> minor(2 * m.n, std::vector<SymScalar>(m.q - 1));
        for (std::size_t i = 0; i < 2 * m.n; ++i)
            for (std::size_t c = 0, t = 0; c < m.q; ++c)
                if (c != j) minor[i][t++] = m.rows[i][c];
        SymScalar d = sym_det(minor);
        coeffs[j] = (2 * m.n + j) % 2 ? -d : d;
    }
    return coeffs;
}

DensityVerdict decide_dense_exact(const PropertyDMatrix& m) {
    if (!m.exact) throw std::invalid_argument("decide_dense_exact: inexact instance");
    DensityVerdict v;
    v.certified = true;
    if (m.q == 2 * m.n + 1) v.det_linear_form = determinant_linear_form(m);
    if (m.q <= 2 * m.n) {
        v.result = Density::NotDense;
        v.integer_witness = unit_witness(m.q);
        v.detail = "too few generators: " + std::to_string(m.q) + " <= 2n = " +
                   std::to_string(2 * m.n);
        return v;
    }
    SymRankResult rr = sym_rank_nullspace(m.rows);
    if (rr.rank < 2 * m.n) {
        v.result = Density::NotDense;
        v.integer_witness = unit_witness(m.q);
        v.detail = "generator span has real rank " + std::to_string(rr.rank) + " < 2n";
        return v;
    }
    // s in Z^q \ {0} lies in the row space iff it is orthogonal to every
    // null-space vector; expand those orthogonality conditions over the
    // monomial basis into a rational homogeneous system in s.
    std::vector<std::vector<Rational>> system;
    for (const auto& x : rr.nullspace) {
        auto [monos, coords] = q_coordinates(x);
        for (std::size_t t = 0; t < monos.size(); ++t) {
            std::vector<Rational> eq(m.q);
            for (std::size_t i = 0; i < m.q; ++i) eq[i] = coords[i][t];
            system.push_back(std::move(eq));
        }
    }
    auto sols = rational_nullspace(system);
    if (sols.empty()) {
        v.result = Density::Dense;
        v.detail = "full real rank and no rational point in the orthogonal "
                   "complement of the null space";
        return v;
    }
    v.result = Density::NotDense;
    v.integer_witness = to_integer_vector(sols.front());
    v.detail = "row space contains a nonzero integer vector";
    return v;
}

DensityVerdict decide_dense_numeric(const PropertyDMatrix& m,
                                    const NumericDensityOptions& opts) {
    DensityVerdict v;
    if (m.q <= 2 * m.n) {
        v.result = Density::NotDense;
        v.certified = true;
        v.integer_witness = unit_witness(m.q);
        v.detail = "too few generators: " + std::to_string(m.q) + " <= 2n = " +
                   std::to_string(2 * m.n);
        return v;
    }
    Eigen::MatrixXd a(2 * m.n, m.q);
    for (std::size_t i = 0; i < 2 * m.n; ++i)
        for (std::size_t j = 0; j < m.q; ++j)
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.shadow[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double cutoff = opts.rank_tol * (sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    if (rank < static_cast<Eigen::Index>(2 * m.n)) {
        v.result = Density::NotDense;
        v.certified = false;
        v.integer_witness = unit_witness(m.q);
        v.detail = "numeric real rank " + std::to_string(rank) + " < 2n";
        return v;
    }
    // null-space basis = trailing right singular vectors
    const Eigen::Index nullity = static_cast<Eigen::Index>(m.q) - rank;
    std::vector<std::vector<double>> xs;
    for (Eigen::Index j = 0; j < nullity; ++j) {
        std::vector<double> x(m.q);
        for (std::size_t i = 0; i < m.q; ++i)
            x[i] = svd.matrixV()(static_cast<Eigen::Index>(i), rank + j);
        xs.push_back(std::move(x));
    }
    // integer relation search: rows (e_i | C * x_1[i] ... C * x_m[i])
    std::vector<std::vector<Int>> lattice(m.q,
                                          std::vector<Int>(m.q + xs.size(), 0));
    for (std::size_t i = 0; i < m.q; ++i) {
        lattice[i][i] = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double scaled = opts.embed_scale * xs[j][i];
            lattice[i][m.q + j] = Int(static_cast<long long>(std::llround(scaled)));
        }
    }
    lll_reduce(lattice);
    for (const auto& row : lattice) {
        std::vector<Int> s(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m.q));
        bool nonzero = false;
        Int maxabs = 0;
        double s1norm = 0;
        for (const auto& x : s) {
            Int ax = x < 0 ? Int(-x) : x;
            if (ax > maxabs) maxabs = ax;
            if (x != 0) nonzero = true;
            s1norm += std::abs(static_cast<double>(x.convert_to<long long>()));
        }
        if (!nonzero || maxabs > opts.witness_bound) continue;
        double worst = 0;
        for (const auto& x : xs) {
            double dot = 0;
            for (std::size_t i = 0; i < m.q; ++i)
                dot += static_cast<double>(s[i].convert_to<long long>()) * x[i];
            worst = std::max(worst, std::abs(dot));
        }
        if (worst <= opts.residual_tol * std::max(1.0, s1norm)) {
            v.result = Density::NotDense;
            v.certified = false;
            v.integer_witness = std::move(s);
            v.detail = "LLL found a small integer vector in the row space "
                       "(residual " + std::to_string(worst) + ")";
            return v;
        }
    }
    v.result = Density::Dense;
    v.certified = false;
    v.detail = "full numeric rank; no small integer relation up to bound " +
               opts.witness_bound.str();
    return v;
}

DensityVerdict decide_dense(const DensityInstance& instance,
                            const NumericDensityOptions& opts) {
    PropertyDMatrix m = assemble_property_d(instance);
    if (m.exact) return decide_dense_exact(m);
    return decide_dense_numeric(m, opts);
}

}  // namespace hyperaff
