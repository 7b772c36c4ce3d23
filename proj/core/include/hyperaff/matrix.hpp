#ifndef HYPERAFF_MATRIX_HPP
#define HYPERAFF_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hyperaff/cnumber.hpp"

namespace hyperaff {

using CVector = std::vector<CNumber>;

/// Dense matrix over CNumber. Sizes are desk-scale by design; no attempt at
/// sparsity or expression templates.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CNumber(Rational(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    CNumber& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const CNumber& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_exact() const {
        for (const auto& x : data_)
            if (!x.is_exact()) return false;
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : data_) m = std::max(m, std::abs(x.approx()));
        return m;
    }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    CMatrix scale(const CNumber& c) const;
    CVector apply(const CVector& v) const;

    /// Exact equality entrywise (all entries must be exact).
    friend bool operator==(const CMatrix& a, const CMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<CNumber> data_;
};

inline bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!approx_equal(a.at(i, j), b.at(i, j), tol)) return false;
    return true;
}

/// Exact determinant via subset DP over columns (no divisions); fine for the
/// n <= ~8 exact regime.
CNumber exact_det(const CMatrix& m);

/// Exact inverse for matrices whose elimination stays within invertible tower
/// elements (Gaussian-rational pivots and single-term radicals). Returns
/// false when a pivot cannot be inverted exactly.
bool try_exact_inverse(const CMatrix& m, CMatrix& out);

/// Float inverse via the shadow values.
CMatrix float_inverse(const CMatrix& m);

}  // namespace hyperaff

#endif
