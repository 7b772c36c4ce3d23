#ifndef HYPERAFF_NORMAL_FORM_HPP
#define HYPERAFF_NORMAL_FORM_HPP

#include <optional>

#include "hyperaff/affine.hpp"

namespace hyperaff {

/// Block partition eta = (n_1, ..., n_r) of n+1.
struct Partition {
    std::vector<std::size_t> eta;

    std::size_t r() const { return eta.size(); }
    std::size_t total() const {
        std::size_t s = 0;
        for (auto k : eta) s += k;
        return s;
    }
    friend bool operator==(const Partition&, const Partition&) = default;
};

struct NormalForm {
    CMatrix P, Pinv;
    Partition partition;
    CVector u0, v0;  // length n+1
    CVector w0;      // length n
    AffineMap varphi;
};

struct NormalFormOptions {
    double eig_tol = 1e-7;   // eigenvalue clustering: |li - lj| <= eig_tol * max(1, |li|)
    double zero_tol = 1e-9;  // float zero / equality threshold, scaled by entry magnitude
};

/// Unit vector picking the first coordinate of block k (1-based).
CVector basis_vector_e(std::size_t k, const Partition& partition);

/// u0 = sum of e^(k): ones at the first coordinate of every block.
CVector u0_vector(const Partition& partition);

/// Membership in the cone K_{eta,r}: block-diagonal, blocks lower triangular
/// with constant diagonal. With star=true additionally requires nonzero block
/// diagonals (K*). Exact entries are tested exactly, inexact ones at
/// tol * (1 + max entry magnitude).
bool k_membership(const CMatrix& m, const Partition& partition, double tol = 1e-9,
                  bool star = false);

/// Finest partition making every matrix a K-member, or nullopt.
std::optional<Partition> scan_partition(const std::vector<CMatrix>& ms, double tol);

/// Conjugates the homogenized family into K*-form. Throws NotAbelianError,
/// NotInvertibleError, or NumericalFailure.
NormalForm find_normal_form(const std::vector<AffineMap>& fs,
                            const NormalFormOptions& opts = {});

/// Builds a NormalForm from a user-supplied ("trusted") P and eta, verifying
/// the membership postcondition. Throws NumericalFailure on verification
/// failure.
NormalForm trusted_normal_form(const std::vector<AffineMap>& fs, const CMatrix& P,
                               const Partition& partition,
                               const NormalFormOptions& opts = {});

}  // namespace hyperaff

#endif
