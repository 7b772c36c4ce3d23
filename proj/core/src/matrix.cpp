#include "hyperaff/matrix.hpp"

#include <Eigen/Dense>

namespace hyperaff {

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const CNumber& aik = a.at(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j)
                out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum: dimension mismatch");
    CMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix difference: dimension mismatch");
    CMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
}

CMatrix CMatrix::scale(const CNumber& c) const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
    return out;
}

CVector CMatrix::apply(const CVector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply: dimension mismatch");
    CVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

bool operator==(const CMatrix& a, const CMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        if (!(a.data_[i] == b.data_[i])) return false;
    return true;
}

CNumber exact_det(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: square matrix required");
    const std::size_t n = m.rows();
    if (n == 0) return CNumber(Rational(1));
    // cur[mask] = det of the minor on rows 0..popcount(mask)-1, columns in mask
    std::vector<CNumber> cur(std::size_t(1) << n), next;
    cur[0] = CNumber(Rational(1));
    for (std::size_t row = 0; row < n; ++row) {
        next.assign(std::size_t(1) << n, CNumber());
        for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != row) continue;
            if (cur[mask].is_zero_exact() && row > 0) continue;
            for (std::size_t col = 0; col < n; ++col) {
                if (mask & (std::size_t(1) << col)) continue;
                // inversions added by assigning this row to `col`
                int parity = __builtin_popcountll(mask >> (col + 1));
                CNumber term = cur[mask] * m.at(row, col);
                if (parity % 2) term = -term;
                next[mask | (std::size_t(1) << col)] += term;
            }
        }
        cur.swap(next);
    }
    return cur[(std::size_t(1) << n) - 1];
}

bool try_exact_inverse(const CMatrix& m, CMatrix& out) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: square matrix required");
    if (!m.is_exact()) return false;
    const std::size_t n = m.rows();
    CMatrix a = m;
    CMatrix inv = CMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        // pick an exactly invertible pivot in this column
        std::size_t piv = n;
        CNumber pinv;
        for (std::size_t r = col; r < n; ++r) {
            if (a.at(r, col).try_invert(pinv)) { piv = r; break; }
        }
        if (piv == n) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) = a.at(col, j) * pinv;
            inv.at(col, j) = inv.at(col, j) * pinv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a.at(r, col).is_zero_exact()) continue;
            CNumber f = a.at(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    out = inv;
    return true;
}

CMatrix float_inverse(const CMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            e(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).approx();
    Eigen::MatrixXcd inv = e.inverse();
    CMatrix out(m.rows(), m.rows());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                CNumber::from_double(inv(i, j));
    return out;
}

}  // namespace hyperaff
