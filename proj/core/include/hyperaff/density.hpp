#ifndef HYPERAFF_DENSITY_HPP
#define HYPERAFF_DENSITY_HPP

#include "hyperaff/exp_log.hpp"
#include "hyperaff/linalg.hpp"

namespace hyperaff {

/// The additive group whose density in C^n is being decided, given by a
/// finite list of complex generator vectors (N- resp. Z-combinations; for
/// density purposes only the generated closed subgroup matters).
struct DensityInstance {
    std::size_t n = 0;
    std::vector<CVector> generators;  // q vectors, each of length n

    std::size_t q() const { return generators.size(); }
};

/// Real 2n x q matrix whose columns are the generators, real parts stacked
/// over imaginary parts. Exact rows are only meaningful when `exact` is set;
/// the float shadow is always filled.
struct PropertyDMatrix {
    std::size_t n = 0, q = 0;
    bool exact = false;
    std::vector<std::vector<SymScalar>> rows;   // 2n x q, exact mode
    std::vector<std::vector<double>> shadow;    // 2n x q
};

enum class Density { Dense, NotDense };

struct DensityVerdict {
    Density result = Density::NotDense;
    /// True when the verdict is a proof (exact elimination, or a structural
    /// column-count argument); false for float-rank / lattice-heuristic calls.
    bool certified = false;
    /// For NotDense: integer vector s != 0 orthogonal to the generator span
    /// (the frequency of a separating character). Empty for Dense.
    std::vector<Int> integer_witness;
    /// When q = 2n + 1 in exact mode: coefficients of the linear form
    /// det([rows; s]) = sum_j s_j * coeff_j, up to a common rational scale.
    std::vector<SymScalar> det_linear_form;
    std::string detail;
};

/// Cofactor expansion along a symbolic unknown last row; requires an exact
/// matrix with q = 2n + 1.
std::vector<SymScalar> determinant_linear_form(const PropertyDMatrix& m);

/// Generators of the group attached to a normal form and its log witnesses:
/// f'(w0) for every witness, then 2*i*pi * p2(P e^(k)) for blocks k = 2..r.
std::vector<CVector> q_w0_generators(const std::vector<AffineMap>& fprimes,
                                     const NormalForm& nf);

PropertyDMatrix assemble_property_d(const DensityInstance& instance);

/// Exact decision: rank over the symbolic fraction field must be 2n and the
/// row space must meet Z^q only in 0 (checked by expanding null-space
/// orthogonality into a rational system). Requires an exact matrix.
DensityVerdict decide_dense_exact(const PropertyDMatrix& m);

/// Float decision: SVD rank, then LLL search for a small integer vector
/// nearly orthogonal to the null space. Dense answers are heuristic.
struct NumericDensityOptions {
    double rank_tol = 1e-8;        // relative to the largest singular value
    double embed_scale = 1e12;     // lattice embedding weight
    Int witness_bound = 1000000;   // max |s_i| accepted from LLL
    /// Max |s . x_j| per unit of |s|_1. A genuine relation leaves only
    /// rounding noise (~1e-15 * |s|); a pigeonhole approximation with the
    /// embedding above leaves ~1e-12 * |s|, so 1e-13 separates the two.
    double residual_tol = 1e-13;
};

DensityVerdict decide_dense_numeric(const PropertyDMatrix& m,
                                    const NumericDensityOptions& opts = {});

/// Exact path when the instance is exact, numeric fallback otherwise.
DensityVerdict decide_dense(const DensityInstance& instance,
                            const NumericDensityOptions& opts = {});

}  // namespace hyperaff

#endif
