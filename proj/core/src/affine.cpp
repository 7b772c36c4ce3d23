#include "hyperaff/affine.hpp"

namespace hyperaff {

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    if (f.n != g.n) throw DimensionMismatch("compose: dimension mismatch");
    CVector t = f.A.apply(g.a);
    for (std::size_t i = 0; i < f.n; ++i) t[i] += f.a[i];
    return AffineMap(f.A * g.A, std::move(t));
}

AffineMap affine_sum(const AffineMap& f, const AffineMap& g) {
    if (f.n != g.n) throw DimensionMismatch("affine_sum: dimension mismatch");
    CVector t(f.n);
    for (std::size_t i = 0; i < f.n; ++i) t[i] = f.a[i] + g.a[i];
    return AffineMap(f.A + g.A, std::move(t));
}

AffineMap affine_scale(const AffineMap& f, const CNumber& c) {
    CVector t(f.n);
    for (std::size_t i = 0; i < f.n; ++i) t[i] = f.a[i] * c;
    return AffineMap(f.A.scale(c), std::move(t));
}

static CMatrix embed(const AffineMap& f, const CNumber& corner) {
    CMatrix m(f.n + 1, f.n + 1);
    m.at(0, 0) = corner;
    for (std::size_t i = 0; i < f.n; ++i) {
        m.at(i + 1, 0) = f.a[i];
        for (std::size_t j = 0; j < f.n; ++j) m.at(i + 1, j + 1) = f.A.at(i, j);
    }
    return m;
}

CMatrix phi(const AffineMap& f) { return embed(f, CNumber(Rational(1))); }
CMatrix psi(const AffineMap& f) { return embed(f, CNumber()); }

static bool first_row_is(const CMatrix& m, const Rational& corner, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    CNumber want(corner);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const CNumber& x = m.at(0, j);
        const CNumber& target = (j == 0) ? want : CNumber();
        if (x.is_exact() ? !(x == target) : !approx_equal(x, target, tol)) return false;
    }
    return true;
}

bool is_phi_image(const CMatrix& m, double tol) { return first_row_is(m, Rational(1), tol); }
bool is_psi_image(const CMatrix& m, double tol) { return first_row_is(m, Rational(0), tol); }

static AffineMap unembed(const CMatrix& m) {
    std::size_t n = m.rows() - 1;
    CMatrix A(n, n);
    CVector a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = m.at(i + 1, 0);
        for (std::size_t j = 0; j < n; ++j) A.at(i, j) = m.at(i + 1, j + 1);
    }
    return AffineMap(std::move(A), std::move(a));
}

AffineMap phi_inv(const CMatrix& m, double tol) {
    if (!is_phi_image(m, tol))
        throw MembershipError("phi_inv: first row is not (1, 0, ..., 0)");
    return unembed(m);
}

AffineMap psi_inv(const CMatrix& m, double tol) {
    if (!is_psi_image(m, tol))
        throw MembershipError("psi_inv: first row is not zero");
    return unembed(m);
}

bool is_invertible(const AffineMap& f, double tol) {
    if (f.A.is_exact()) return !exact_det(f.A).is_zero_exact();
    // float determinant on the shadow
    CNumber d = exact_det(f.A);  // contagious: result carries shadow product
    return std::abs(d.approx()) > tol * (1 + f.A.max_abs());
}

AbelianCheck check_abelian(const std::vector<AffineMap>& fs, double tol) {
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
            if (fs[i].n != fs[j].n) throw DimensionMismatch("check_abelian: dimension mismatch");
            AffineMap fg = compose(fs[i], fs[j]);
            AffineMap gf = compose(fs[j], fs[i]);
            bool ok;
            if (fg.is_exact() && gf.is_exact()) {
                ok = fg.A == gf.A;
                for (std::size_t k = 0; ok && k < fg.n; ++k) ok = fg.a[k] == gf.a[k];
            } else {
                double scale = 1 + std::max(fg.A.max_abs(), gf.A.max_abs());
                ok = approx_equal(fg.A, gf.A, tol * scale);
                for (std::size_t k = 0; ok && k < fg.n; ++k)
                    ok = approx_equal(fg.a[k], gf.a[k], tol * scale);
            }
            if (!ok) return {false, i, j};
        }
    return {};
}

}  // namespace hyperaff
