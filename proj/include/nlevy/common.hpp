#ifndef NLEVY_COMMON_HPP
#define NLEVY_COMMON_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlevy {

using cdouble = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Point in R^d, d <= 3. Unused trailing components are zero.
using Vec = std::array<double, 3>;

inline Vec vec1(double x) { return {x, 0.0, 0.0}; }
inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline double dot(const Vec& a, const Vec& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a, int dim) { return std::sqrt(dot(a, a, dim)); }

inline Vec scale(const Vec& a, double c) { return {c * a[0], c * a[1], c * a[2]}; }

inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

/// Geometric grid of `count` points covering [lo, hi], endpoints included.
inline std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
    std::vector<double> g(count);
    const double llo = std::log2(lo), lhi = std::log2(hi);
    for (int i = 0; i < count; ++i)
        g[i] = std::exp2(llo + (lhi - llo) * i / (count - 1));
    return g;
}

inline std::vector<double> linear_spaced(double lo, double hi, int count) {
    if (count < 2) throw std::invalid_argument("linear_spaced: count >= 2");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
    return g;
}

/// Default probing grid: 257 log-spaced points on [2^-10, 2^10],
/// 20 octaves so that dyadically self-similar quantities expose their period.
inline std::vector<double> default_log_grid() { return log_spaced(std::exp2(-10), std::exp2(10), 257); }

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares for y vs x.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need matching sizes >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

inline double rel_err(double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

inline bool approx_eq(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max({1.0, std::abs(got), std::abs(want)});
}

}  // namespace nlevy

#endif
