#ifndef HYPERAFF_CNUMBER_HPP
#define HYPERAFF_CNUMBER_HPP

#include <complex>
#include <string>

#include "hyperaff/scalar.hpp"

namespace hyperaff {

/// Complex number over the scalar tower, with a float shadow that is always
/// present. Exactness is contagious: an operation is exact iff all operands
/// are. Inexact values carry only the shadow.
class CNumber {
public:
    CNumber() : exact_(true) {}
    CNumber(SymScalar re, SymScalar im)
        : re_(std::move(re)), im_(std::move(im)), exact_(true) {
        shadow_ = {static_cast<double>(re_.approx()), static_cast<double>(im_.approx())};
    }
    explicit CNumber(const Rational& q) : CNumber(SymScalar(q), SymScalar()) {}
    static CNumber from_double(std::complex<double> z) {
        CNumber c;
        c.exact_ = false;
        c.shadow_ = z;
        return c;
    }
    static CNumber i() { return CNumber(SymScalar(), SymScalar(Rational(1))); }

    bool is_exact() const { return exact_; }
    const SymScalar& re() const { return re_; }
    const SymScalar& im() const { return im_; }
    std::complex<double> approx() const { return shadow_; }

    bool is_real_exact() const { return exact_ && im_.is_zero(); }
    bool is_zero_exact() const { return exact_ && re_.is_zero() && im_.is_zero(); }
    bool is_rational() const { return exact_ && im_.is_zero() && re_.is_rational(); }
    /// Gaussian-rational test: both parts rational.
    bool is_complex_rational() const {
        return exact_ && re_.is_rational() && im_.is_rational();
    }

    friend CNumber operator+(const CNumber& a, const CNumber& b);
    friend CNumber operator-(const CNumber& a, const CNumber& b);
    friend CNumber operator*(const CNumber& a, const CNumber& b);
    friend CNumber operator-(const CNumber& a);
    CNumber& operator+=(const CNumber& o) { return *this = *this + o; }
    CNumber& operator-=(const CNumber& o) { return *this = *this - o; }
    CNumber& operator*=(const CNumber& o) { return *this = *this * o; }

    CNumber conj() const;
    CNumber scale(const Rational& c) const;

    /// Exact multiplicative inverse where the tower supports it: Gaussian
    /// rationals, and real single-term scalars (radical/transcendental
    /// monomials). Returns false otherwise; callers fall back to float.
    bool try_invert(CNumber& out) const;

    /// Exact equality; requires both operands exact.
    friend bool operator==(const CNumber& a, const CNumber& b) {
        return a.exact_ && b.exact_ && a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string str() const;

private:
    SymScalar re_, im_;
    bool exact_;
    std::complex<double> shadow_{0.0, 0.0};
};

/// |a - b| <= tol in the float shadow.
inline bool approx_equal(const CNumber& a, const CNumber& b, double tol) {
    return std::abs(a.approx() - b.approx()) <= tol;
}

}  // namespace hyperaff

#endif
