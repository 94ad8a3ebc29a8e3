#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace opuc {

using Complex = std::complex<double>;

/// A function on the unit circle, evaluated at unimodular points.
using CircleFunction = std::function<Complex(Complex)>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to [0, 2pi).
[[nodiscard]] inline double wrap_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t -= kTwoPi;
    return t;
}

/// Angle of z in [0, 2pi).
[[nodiscard]] inline double angle_of(Complex z) { return wrap_angle(std::arg(z)); }

[[nodiscard]] inline Complex unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Shortest distance between two angles on the circle.
[[nodiscard]] inline double angular_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

}  // namespace opuc
