#ifndef NLEVY_QUADRATURE_HPP
#define NLEVY_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace nlevy {

namespace detail {

template <class F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // 15 = 2^4 - 1, the Richardson factor for Simpson's rule
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double abs_tol = 1e-10, int max_depth = 52) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

/// Integrates f over [a, b] split at interior breakpoints (useful when the
/// integrand changes analytic character, e.g. a cutoff or a kink).
template <class F>
double adaptive_simpson_split(const F& f, std::vector<double> breaks, double abs_tol = 1e-10) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i)
        total += adaptive_simpson(f, breaks[i], breaks[i + 1], abs_tol / (breaks.size() - 1));
    return total;
}

}  // namespace nlevy

#endif
