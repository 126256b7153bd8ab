#ifndef NLEVY_SPECIAL_HPP
#define NLEVY_SPECIAL_HPP

#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "quadrature.hpp"

namespace nlevy {

/// Surface area of the unit sphere S^{d-1}. For d = 1 this is the counting
/// measure of {-1, +1}, i.e. 2.
inline double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * pi;
        case 3: return 4.0 * pi;
        default: return 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);
    }
}

/// Volume of the unit ball in R^d.
inline double ball_volume(int d) { return sphere_area(d) / d; }

/// C1(s) = int_0^infty (1 - cos u) u^{-1-s} du, s in (0,2).
/// Equals -Gamma(-s) cos(pi s / 2); the s = 1 singularity is removable (pi/2).
inline double one_minus_cos_integral(double s) {
    if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("one_minus_cos_integral: s in (0,2)");
    // -Gamma(-s) cos(pi s/2) = Gamma(2-s)/(s(1-s)) * cos(pi s/2); rewrite the
    // (1-s) pole against cos(pi s/2) = sin(pi(1-s)/2).
    const double t = 1.0 - s;
    double ratio;  // cos(pi s/2) / (1 - s)
    if (std::abs(t) < 1e-5) {
        const double a = 0.5 * pi * t;
        ratio = 0.5 * pi * (1.0 - a * a / 6.0);  // sin(a)/a * pi/2
    } else {
        ratio = std::cos(0.5 * pi * s) / t;
    }
    return std::tgamma(2.0 - s) / s * ratio;
}

/// S1(s) = int_0^infty sin(u) u^{-1-s} du, s in (0,1).
inline double sin_tail_integral(double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("sin_tail_integral: s in (0,1)");
    return std::cos(0.5 * pi * s) * std::tgamma(1.0 - s) / s;
}

/// K(d, s) = int_{R^d} (1 - cos(e.y)) |y|^{-d-s} dy for a unit vector e.
/// This is the reciprocal of the usual fractional-Laplacian normalization:
/// the measure c |y|^{-d-s} dy has symbol -c K(d,s) |xi|^s.
inline double radial_symbol_constant(int d, double s) {
    if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("radial_symbol_constant: s in (0,2)");
    return std::pow(pi, 0.5 * d) * 2.0 * std::tgamma(1.0 - 0.5 * s) /
           (s * std::exp2(s) * std::tgamma(0.5 * (d + s)));
}

/// A(d, s) = int_{S^{d-1}} |e . theta|^s dtheta.
inline double angular_power_moment(int d, double s) {
    return 2.0 * std::pow(pi, 0.5 * (d - 1)) * std::tgamma(0.5 * (s + 1.0)) /
           std::tgamma(0.5 * (d + s));
}

/// Normalized Fourier transform of the indicator of B_r in R^d:
///   m_r(xi) = (1 / |B_r|) int_{B_r} e^{i xi . y} dy,  m_r(xi) = m_1(r |xi|).
/// d = 1, 3 have elementary forms; d = 2 goes through J_1.
inline double ball_indicator_ft(int d, double rxi) {
    const double z = std::abs(rxi);
    if (z < 1e-6) {
        // series: 1 - z^2 / (2(d+2)) + O(z^4)
        return 1.0 - z * z / (2.0 * (d + 2));
    }
    switch (d) {
        case 1: return std::sin(z) / z;
        case 2: return 2.0 * std::cyl_bessel_j(1.0, z) / z;
        case 3: return 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
        default: throw std::invalid_argument("ball_indicator_ft: d in {1,2,3}");
    }
}

namespace detail {

/// int_a^infty u^{-1-s} cos u du for a >= ~40 by repeated integration by
/// parts. The series is asymptotic: summation stops at the turning term,
/// whose size bounds the remainder.
inline double tail_cos_asymptotic(double s, double a) {
    const double sina = std::sin(a), cosa = std::cos(a);
    double val = 0.0, sign = 1.0;
    double p_even = 1.0;                      // prod_{i=1..2j} (s+i)
    double pow_cur = std::pow(a, -1.0 - s);   // a^{-1-s-2j}
    double prev_bound = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 60; ++j) {
        const double p_odd = p_even * (s + 2 * j + 1);
        const double term = -p_even * pow_cur * sina + p_odd * pow_cur / a * cosa;
        const double bound = p_odd * pow_cur / a;  // remainder after this term
        if (bound > prev_bound) break;
        val += sign * term;
        prev_bound = bound;
        if (bound < 1e-16 * (std::abs(val) + 1e-300)) break;
        p_even = p_odd * (s + 2 * j + 2);
        pow_cur /= a * a;
        sign = -sign;
    }
    return val;
}

/// int_0^a (1 - cos u) u^{-1-s} du for a <= 2 by the cosine power series.
inline double head_one_minus_cos(double s, double a) {
    double val = 0.0;
    double fact = 1.0;  // (2m)!
    double sign = 1.0;
    for (int m = 1; m < 40; ++m) {
        fact *= (2.0 * m - 1.0) * (2.0 * m);
        const double term = sign * std::pow(a, 2.0 * m - s) / ((2.0 * m - s) * fact);
        val += term;
        if (std::abs(term) < 1e-17 * (std::abs(val) + 1e-30)) break;
        sign = -sign;
    }
    return val;
}

}  // namespace detail

/// int_a^infty u^{-1-s} cos(u) du, a > 0, s in (0,2).
inline double tail_cos_integral(double s, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("tail_cos_integral: a > 0");
    if (a >= 40.0) return detail::tail_cos_asymptotic(s, a);
    if (a <= 2.0) {
        // int_a^inf u^{-1-s} cos u = int_a^inf u^{-1-s} - [C1(s) - int_0^a (1-cos) u^{-1-s}]
        return std::pow(a, -s) / s - one_minus_cos_integral(s) + detail::head_one_minus_cos(s, a);
    }
    const double direct = adaptive_simpson(
        [s](double u) { return std::pow(u, -1.0 - s) * std::cos(u); }, a, 40.0, 1e-13);
    return direct + detail::tail_cos_asymptotic(s, 40.0);
}

}  // namespace nlevy

#endif
