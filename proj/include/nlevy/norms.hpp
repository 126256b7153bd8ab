#ifndef NLEVY_NORMS_HPP
#define NLEVY_NORMS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "grid.hpp"

namespace nlevy {

// ---------------------------------------------------------------------------
// Weights. Power weights |x - center|^l are integrated per cell with the
// exact antiderivative, so grids never sample the singularity.
// ---------------------------------------------------------------------------

struct Weight {
    enum class Kind { Constant, Power } kind = Kind::Constant;
    double exponent = 0.0;
    double center = 0.0;
    double truncation = 0.0;  // excludes (center - eps, center + eps) when > 0

    static Weight constant() { return Weight{}; }
    static Weight power(double l, double center = 0.0, double truncation = 0.0) {
        Weight w;
        w.kind = Kind::Power;
        w.exponent = l;
        w.center = center;
        w.truncation = truncation;
        return w;
    }
    bool is_constant() const { return kind == Kind::Constant; }
};

namespace detail {

/// int_a^b |x|^l dx, exact, valid for l > -1 (singular cells are split at 0).
inline double abs_power_integral(double l, double a, double b) {
    if (!(l > -1.0)) throw std::invalid_argument("abs_power_integral: l > -1");
    auto F = [l](double x) {
        return (x >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(x), l + 1.0) / (l + 1.0);
    };
    return F(b) - F(a);
}

}  // namespace detail

/// int_a^b w(x) dx with the power part integrated exactly (and the optional
/// truncation window removed).
inline double weight_cell_integral(const Weight& w, double a, double b) {
    if (b < a) return -weight_cell_integral(w, b, a);
    if (w.is_constant()) return b - a;
    const double lo = a - w.center, hi = b - w.center;
    double val = detail::abs_power_integral(w.exponent, lo, hi);
    if (w.truncation > 0.0) {
        const double clo = std::max(lo, -w.truncation), chi = std::min(hi, w.truncation);
        if (chi > clo) val -= detail::abs_power_integral(w.exponent, clo, chi);
    }
    return val;
}

// ---------------------------------------------------------------------------
// discrete L_p norms
// ---------------------------------------------------------------------------

/// ||u||_p on [0, 2pi)^d, Riemann sum; p = inf as the max. With a power
/// weight (d = 1 only) the grid coordinate is centered on [-pi, pi) and the
/// weight is integrated exactly over each cell.
inline double lp_norm(const GridField& u, double p, const Weight& w = Weight::constant()) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p >= 1");
    if (std::isinf(p)) {
        double mx = 0.0;
        for (double v : u.values) mx = std::max(mx, std::abs(v));
        return mx;
    }
    const double h = u.spacing();
    if (w.is_constant()) {
        double acc = 0.0;
        for (double v : u.values) acc += std::pow(std::abs(v), p);
        return std::pow(acc * std::pow(h, u.dim), 1.0 / p);
    }
    if (u.dim != 1)
        throw std::invalid_argument("lp_norm: power weights implemented for dim = 1");
    double acc = 0.0;
    for (int j = 0; j < u.n; ++j) {
        double x = h * j;
        if (x >= pi) x -= 2.0 * pi;  // centered coordinate on [-pi, pi)
        double cell = 0.0;
        const double lo = x - 0.5 * h, hi = x + 0.5 * h;
        if (lo < -pi) {  // seam cell: wrap the protruding part to +pi side
            cell = weight_cell_integral(w, -pi, hi) + weight_cell_integral(w, 2.0 * pi + lo, pi);
        } else if (hi > pi) {
            cell = weight_cell_integral(w, lo, pi) + weight_cell_integral(w, -pi, hi - 2.0 * pi);
        } else {
            cell = weight_cell_integral(w, lo, hi);
        }
        acc += std::pow(std::abs(u.values[j]), p) * cell;
    }
    return std::pow(acc, 1.0 / p);
}

/// Bessel potential norm ||(1 - Delta)^{sigma/2} u||_p.
inline double bessel_norm(const GridField& u, double sigma, double p,
                          const Weight& w = Weight::constant()) {
    return lp_norm(fractional_laplacian(u, sigma, /*shifted=*/true), p, w);
}

// ---------------------------------------------------------------------------
// Muckenhoupt constants for power weights, d = 1
// ---------------------------------------------------------------------------

struct ApReport {
    double constant = 0.0;
    bool diverged = false;   // weight or dual weight not locally integrable
    double arg_center = 0.0;
    double arg_radius = 0.0;
};

/// Empirical [w]_{A_p} = sup over intervals of (avg w)(avg w^{1/(1-p)})^{p-1}.
/// Power weights |x - c|^l: membership requires -1 < l < p - 1; outside that
/// range the report carries the divergence flag instead of a number.
inline ApReport muckenhoupt_constant(const Weight& w, double p,
                                     const std::vector<double>& centers,
                                     const std::vector<double>& radii) {
    if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("muckenhoupt_constant: p in (1,inf)");
    if (centers.empty() || radii.empty()) throw std::invalid_argument("muckenhoupt_constant: empty grid");
    ApReport rep;
    if (w.is_constant()) {
        rep.constant = 1.0;
        rep.arg_center = centers.front();
        rep.arg_radius = radii.front();
        return rep;
    }
    const double l = w.exponent;
    const double dual_l = l / (1.0 - p);
    if (l <= -1.0 || dual_l <= -1.0) {
        rep.diverged = true;
        rep.constant = std::numeric_limits<double>::infinity();
        return rep;
    }
    const Weight dual = Weight::power(dual_l, w.center);
    for (double c : centers)
        for (double r : radii) {
            const double a = c - r, b = c + r;
            const double avg_w = weight_cell_integral(w, a, b) / (2.0 * r);
            const double avg_dual = weight_cell_integral(dual, a, b) / (2.0 * r);
            const double v = avg_w * std::pow(avg_dual, p - 1.0);
            if (v > rep.constant) {
                rep.constant = v;
                rep.arg_center = c;
                rep.arg_radius = r;
            }
        }
    return rep;
}

/// Default interval family: centers on the grid nodes of [-pi, pi), radii
/// log-spaced between one grid spacing and the half-domain. The extremal
/// intervals for power weights touch the weight center, which node-centered
/// intervals do reach.
inline ApReport muckenhoupt_constant(const Weight& w, double p, int n = 256) {
    std::vector<double> centers(n);
    for (int j = 0; j < n; ++j) centers[j] = -pi + 2.0 * pi * j / n;
    return muckenhoupt_constant(w, p, centers, log_spaced(2.0 * pi / n, pi, 33));
}

}  // namespace nlevy

#endif
