// Independent reference implementations used as test oracles. Everything here
// is a direct transcription of a definition (naive DFT, explicit sums over
// atoms, triple loops for the maximal operators); nothing routes through the
// production code paths it is checking.
#ifndef NLEVY_TESTS_ORACLES_HPP
#define NLEVY_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include <nlevy/common.hpp>
#include <nlevy/grid.hpp>
#include <nlevy/measure.hpp>

namespace oracles {

using nlevy::Atom;
using nlevy::cdouble;
using nlevy::GridField;
using nlevy::pi;
using nlevy::Vec;

// -------------------------------------------------------------- transforms

inline std::vector<cdouble> naive_dft_1d(const std::vector<double>& u) {
    const int n = int(u.size());
    std::vector<cdouble> out(n);
    for (int k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += u[j] * std::polar(1.0, -2.0 * pi * k * j / n);
        out[k] = acc;
    }
    return out;
}

// --------------------------------------------------------- atom functionals

inline double tail_mass_atoms(const std::vector<Atom>& atoms, int dim, double r) {
    double acc = 0.0;
    for (const auto& a : atoms)
        if (nlevy::norm(a.y, dim) >= r) acc += a.w;
    return acc;
}

inline double moment_atoms(const std::vector<Atom>& atoms, int dim, double c, double r,
                           bool outside) {
    double acc = 0.0;
    for (const auto& a : atoms) {
        const double ay = nlevy::norm(a.y, dim);
        if (outside ? (ay >= r) : (ay < r)) acc += a.w * std::pow(ay, c);
    }
    return acc;
}

inline Vec cancellation_atoms(const std::vector<Atom>& atoms, int dim, double r1, double r2) {
    Vec v{};
    for (const auto& a : atoms) {
        const double ay = nlevy::norm(a.y, dim);
        if (ay >= r1 && ay <= r2) v = nlevy::add(v, nlevy::scale(a.y, a.w));
    }
    return v;
}

inline double nondegen_atoms(const std::vector<Atom>& atoms, int dim, const Vec& xi) {
    double acc = 0.0;
    for (const auto& a : atoms) {
        const double t = nlevy::dot(xi, a.y, dim);
        if (std::abs(t) <= 1.0) acc += a.w * t * t;
    }
    return acc;
}

inline cdouble symbol_atoms(const std::vector<Atom>& atoms, int dim, double sigma, const Vec& xi) {
    cdouble acc{0.0, 0.0};
    for (const auto& a : atoms) {
        const double t = nlevy::dot(xi, a.y, dim);
        cdouble term = std::polar(1.0, t) - 1.0;
        if (sigma > 1.0) term -= cdouble{0.0, t};
        if (sigma == 1.0 && nlevy::norm(a.y, dim) <= 1.0) term -= cdouble{0.0, t};
        acc += a.w * term;
    }
    return acc;
}

// ------------------------------------------------------- maximal operators
// Shared discretization: the ball integral weights grid cell j (the interval
// [x_j - h/2, x_j + h/2)) by its overlap with [c - R, c + R]; the loop below
// walks the periodic images directly.

inline double ball_weighted_sum_1d(const GridField& u, double center, double R, double p) {
    const double h = u.spacing();
    const double a = center - R, b = center + R;
    if (b - a >= 2.0 * pi) {
        double acc = 0.0;
        for (int j = 0; j < u.n; ++j) acc += std::pow(std::abs(u.values[j]), p) * h;
        return acc;
    }
    double acc = 0.0;
    for (int j = 0; j < u.n; ++j)
        for (int img = -2; img <= 2; ++img) {
            const double xc = h * j + 2.0 * pi * img;
            const double lo = std::max(a, xc - 0.5 * h), hi = std::min(b, xc + 0.5 * h);
            if (hi > lo) acc += std::pow(std::abs(u.values[j]), p) * (hi - lo);
        }
    return acc;
}

inline double ball_integral_abs_1d(const GridField& u, double center, double R) {
    return ball_weighted_sum_1d(u, center, R, 1.0);
}

inline double ball_lp_1d(const GridField& u, double center, double R, double p) {
    return std::pow(ball_weighted_sum_1d(u, center, R, p), 1.0 / p);
}

inline double tail_operator_bf(const GridField& u, const std::vector<Atom>& atoms, double sigma,
                               double p, double kappa, double R, int node) {
    const double x = u.spacing() * node;
    double acc = 0.0;
    for (const auto& a : atoms)
        if (std::abs(a.y[0]) >= kappa * R) acc += a.w * ball_lp_1d(u, x + a.y[0], R, p);
    return std::pow(kappa, sigma) * std::pow(R, sigma - 1.0 / p) * acc;
}

inline double maximal_T_bf(const GridField& u, const std::vector<Atom>& atoms, double sigma,
                           double kappa, const std::vector<double>& r_grid, int node) {
    const double x = u.spacing() * node;
    double best = 0.0;
    for (double R : r_grid) {
        double acc = 0.0;
        for (const auto& a : atoms)
            if (std::abs(a.y[0]) >= kappa * R) acc += a.w * ball_integral_abs_1d(u, x + a.y[0], R);
        best = std::max(best, std::pow(kappa, sigma) * std::pow(R, sigma - 1.0) * acc);
    }
    return best;
}

}  // namespace oracles

#endif
