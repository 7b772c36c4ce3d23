#ifndef HYPERAFF_AFFINE_HPP
#define HYPERAFF_AFFINE_HPP

#include <optional>
#include <utility>

#include "hyperaff/errors.hpp"
#include "hyperaff/matrix.hpp"

namespace hyperaff {

/// Affine map x -> Ax + a on C^n.
struct AffineMap {
    std::size_t n = 0;
    CMatrix A;  // n x n linear part
    CVector a;  // translation

    AffineMap() = default;
    AffineMap(CMatrix linear, CVector translation)
        : n(linear.rows()), A(std::move(linear)), a(std::move(translation)) {
        if (A.rows() != A.cols() || a.size() != n)
            throw DimensionMismatch("affine map: inconsistent dimensions");
    }

    static AffineMap identity(std::size_t n) {
        return AffineMap(CMatrix::identity(n), CVector(n));
    }

    CVector operator()(const CVector& x) const {
        CVector y = A.apply(x);
        for (std::size_t i = 0; i < n; ++i) y[i] += a[i];
        return y;
    }

    bool is_exact() const {
        if (!A.is_exact()) return false;
        for (const auto& c : a)
            if (!c.is_exact()) return false;
        return true;
    }
};

/// f after g: (AB, Ab + a).
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// Sum and rational scaling in the vector space MA(n, C).
AffineMap affine_sum(const AffineMap& f, const AffineMap& g);
AffineMap affine_scale(const AffineMap& f, const CNumber& c);

/// Homogenization: (n+1)x(n+1) block matrix [[1, 0], [a, A]].
CMatrix phi(const AffineMap& f);
/// Linear embedding: [[0, 0], [a, A]].
CMatrix psi(const AffineMap& f);

bool is_phi_image(const CMatrix& m, double tol);
bool is_psi_image(const CMatrix& m, double tol);

/// Partial inverses: throw MembershipError if the first row has the wrong
/// block shape (checked exactly for exact entries, else at `tol`).
AffineMap phi_inv(const CMatrix& m, double tol = 1e-9);
AffineMap psi_inv(const CMatrix& m, double tol = 1e-9);

/// Invertibility of the linear part: exact determinant when available,
/// otherwise float determinant against tol * scale.
bool is_invertible(const AffineMap& f, double tol = 1e-12);

struct AbelianCheck {
    bool abelian = true;
    std::size_t first = 0, second = 0;  // witness pair when !abelian
};

/// Pairwise commutation: exact when both composites are exact, otherwise
/// entrywise |delta| <= tol * (1 + max entry magnitude).
AbelianCheck check_abelian(const std::vector<AffineMap>& fs, double tol = 1e-9);

}  // namespace hyperaff

#endif
