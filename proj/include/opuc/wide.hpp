#pragma once

#include <complex>

#include <quadmath.h>

namespace opuc {

/// IEEE binary128 (GCC __float128). Used where moment-based recursions need more than
/// double precision to stay meaningful.
using Wide = __float128;

struct WideComplex {
    Wide re = 0;
    Wide im = 0;

    WideComplex() = default;
    WideComplex(Wide r, Wide i = 0) : re(r), im(i) {}
    explicit WideComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    [[nodiscard]] std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    WideComplex& operator+=(const WideComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    WideComplex& operator-=(const WideComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline WideComplex operator+(WideComplex a, const WideComplex& b) { return a += b; }
inline WideComplex operator-(WideComplex a, const WideComplex& b) { return a -= b; }
inline WideComplex operator*(const WideComplex& a, const WideComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline WideComplex operator*(Wide s, const WideComplex& a) { return {s * a.re, s * a.im}; }
inline WideComplex operator/(const WideComplex& a, Wide s) { return {a.re / s, a.im / s}; }
inline WideComplex conj(const WideComplex& a) { return {a.re, -a.im}; }
inline Wide norm(const WideComplex& a) { return a.re * a.re + a.im * a.im; }
inline WideComplex operator/(const WideComplex& a, const WideComplex& b) { return (a * conj(b)) / norm(b); }

inline WideComplex wide_unit(Wide theta) { return {cosq(theta), sinq(theta)}; }
inline Wide wide_arg(const WideComplex& z) { return atan2q(z.im, z.re); }

}  // namespace opuc
