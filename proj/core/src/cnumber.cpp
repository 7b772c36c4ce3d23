#include "hyperaff/cnumber.hpp"

namespace hyperaff {

CNumber operator+(const CNumber& a, const CNumber& b) {
    if (a.exact_ && b.exact_) return CNumber(a.re_ + b.re_, a.im_ + b.im_);
    return CNumber::from_double(a.shadow_ + b.shadow_);
}

CNumber operator-(const CNumber& a, const CNumber& b) {
    if (a.exact_ && b.exact_) return CNumber(a.re_ - b.re_, a.im_ - b.im_);
    return CNumber::from_double(a.shadow_ - b.shadow_);
}

CNumber operator*(const CNumber& a, const CNumber& b) {
    if (a.exact_ && b.exact_)
        return CNumber(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    return CNumber::from_double(a.shadow_ * b.shadow_);
}

CNumber operator-(const CNumber& a) {
    if (a.exact_) return CNumber(-a.re_, -a.im_);
    return CNumber::from_double(-a.shadow_);
}

CNumber CNumber::conj() const {
    if (exact_) return CNumber(re_, -im_);
    return from_double(std::conj(shadow_));
}

CNumber CNumber::scale(const Rational& c) const {
    if (exact_) return CNumber(c * re_, c * im_);
    return from_double(static_cast<double>(to_long_double(c)) * shadow_);
}

bool CNumber::try_invert(CNumber& out) const {
    if (!exact_) return false;
    if (is_zero_exact()) return false;
    if (is_complex_rational()) {
        Rational x = re_.rational_value(), y = im_.rational_value();
        Rational n = x * x + y * y;
        out = CNumber(SymScalar(x / n), SymScalar(-y / n));
        return true;
    }
    if (im_.is_zero()) {
        SymScalar inv;
        if (re_.try_invert(inv)) {
            out = CNumber(inv, SymScalar());
            return true;
        }
    }
    // purely imaginary single-term: 1/(i y) = -i/y
    if (re_.is_zero()) {
        SymScalar inv;
        if (im_.try_invert(inv)) {
            out = CNumber(SymScalar(), -inv);
            return true;
        }
    }
    return false;
}

std::string CNumber::str() const {
    if (!exact_) {
        return "(" + std::to_string(shadow_.real()) + (shadow_.imag() < 0 ? "" : "+") +
               std::to_string(shadow_.imag()) + "i)";
    }
    if (im_.is_zero()) return re_.str();
    if (re_.is_zero()) return "i*(" + im_.str() + ")";
    return "(" + re_.str() + ") + i*(" + im_.str() + ")";
}

}  // namespace hyperaff
