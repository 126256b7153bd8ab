#ifndef NLEVY_SYMBOL_HPP
#define NLEVY_SYMBOL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "measure.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace nlevy {

// ---------------------------------------------------------------------------
// Fourier symbol m(xi) = int (e^{i xi.y} - 1 - i xi.y^{(sigma)}) nu(dy),
// with the drift compensator y^{(sigma)} = y for sigma in (1,2),
// y 1_{|y|<=1} for sigma = 1, and absent for sigma in (0,1).
// ---------------------------------------------------------------------------

namespace detail {

/// Gamma(-s) for s in (0,1) u (1,2), via Gamma(2-s)/(s(s-1)).
inline double gamma_neg(double s) {
    if (s == 1.0) throw std::invalid_argument("gamma_neg: s != 1");
    return std::tgamma(2.0 - s) / (s * (s - 1.0));
}

/// Pairs up atoms of a symmetric list as (representative, weight); throws if
/// the list is not symmetric.
inline std::vector<Atom> symmetric_pairs(const std::vector<Atom>& list, int dim) {
    std::vector<Atom> pairs;
    std::vector<bool> used(list.size(), false);
    for (size_t i = 0; i < list.size(); ++i) {
        if (used[i]) continue;
        bool found = false;
        for (size_t j = i + 1; j < list.size(); ++j) {
            if (used[j]) continue;
            if (norm(add(list[i].y, list[j].y), dim) <= 1e-12 * norm(list[i].y, dim) &&
                std::abs(list[i].w - list[j].w) <= 1e-12 * list[i].w) {
                used[i] = used[j] = true;
                pairs.push_back({list[i].y, list[i].w});
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("symmetric_pairs: unpaired atom");
    }
    return pairs;
}

}  // namespace detail

/// Closed-form symbol evaluation. Symmetric variants go through the cosine
/// form so the imaginary part is exactly zero.
inline cdouble symbol_eval(const LevyMeasure& m, const Vec& xi) {
    const double s = m.sigma;
    switch (m.kind) {
        case MeasureKind::RadialDensity:
            return {-m.c * radial_symbol_constant(m.dim, s) * std::pow(norm(xi, m.dim), s), 0.0};
        case MeasureKind::AxisStable: {
            double total = 0.0;
            for (int i = 0; i < m.dim; ++i) total += std::pow(std::abs(xi[i]), s);
            return {-m.c * radial_symbol_constant(1, s) * total, 0.0};
        }
        case MeasureKind::DyadicComb: {
            double total = 0.0;
            for (int i = 0; i < m.dim; ++i)
                for (int k = m.k_min; k <= m.k_max; ++k)
                    total += 2.0 * std::exp2(-k * s) * (std::cos(std::exp2(k) * xi[i]) - 1.0);
            return {total, 0.0};
        }
        case MeasureKind::Atoms: {
            if (is_symmetric(m)) {
                double total = 0.0;
                for (const auto& p : detail::symmetric_pairs(m.atom_list, m.dim))
                    total += 2.0 * p.w * (std::cos(dot(xi, p.y, m.dim)) - 1.0);
                return {total, 0.0};
            }
            if (s == 1.0 && !cancellation_ok(m))
                throw std::invalid_argument(
                    "symbol_eval: sigma = 1 requires vanishing annular first moments");
            cdouble total{0.0, 0.0};
            for (const auto& a : m.atom_list) {
                const double t = dot(xi, a.y, m.dim);
                cdouble term = std::polar(1.0, t) - 1.0;
                if (s > 1.0) term -= cdouble{0.0, t};
                // sigma = 1: the compensator integral vanishes by cancellation
                total += a.w * term;
            }
            return total;
        }
        case MeasureKind::Polar: {
            if (is_symmetric(m)) {
                double total = 0.0;
                std::vector<Atom> as_atoms;
                for (const auto& sa : m.spherical_atoms) as_atoms.push_back({sa.dir, sa.w});
                for (const auto& p : detail::symmetric_pairs(as_atoms, m.dim))
                    total -= p.w * radial_symbol_constant(1, s) *
                             std::pow(std::abs(dot(xi, p.y, m.dim)), s);
                return {total, 0.0};
            }
            if (s == 1.0)
                throw std::invalid_argument("symbol_eval: asymmetric polar measure with sigma = 1");
            const double g = detail::gamma_neg(s);
            cdouble total{0.0, 0.0};
            for (const auto& a : m.spherical_atoms) {
                const double t = dot(xi, a.dir, m.dim);
                if (t == 0.0) continue;
                const double phase = (t > 0.0 ? -1.0 : 1.0) * 0.5 * pi * s;
                total += a.w * std::pow(std::abs(t), s) * g * std::polar(1.0, phase);
            }
            return total;
        }
        case MeasureKind::Sum: {
            cdouble total{0.0, 0.0};
            for (const auto& p : m.parts) total += symbol_eval(p, xi);
            return total;
        }
        case MeasureKind::Scaled: return m.factor * symbol_eval(m.parts.front(), xi);
    }
    return {0.0, 0.0};
}

/// Quadrature route for the 1-d radial density, following the proof's split
/// of the integral at |y| = 1/|xi| with a Taylor head below u = 1e-4.
/// Supports RadialDensity and AxisStable with dim = 1 (they coincide there);
/// intended as an independent cross-check of the closed form.
inline cdouble symbol_eval_quadrature(const LevyMeasure& m, const Vec& xi, double abs_tol = 1e-10) {
    if (m.dim != 1 ||
        (m.kind != MeasureKind::RadialDensity && m.kind != MeasureKind::AxisStable))
        throw std::invalid_argument("symbol_eval_quadrature: 1-d radial densities only");
    const double s = m.sigma;
    const double x = std::abs(xi[0]);
    if (x == 0.0) return {0.0, 0.0};
    const double eps = 1e-4;
    // head: integrand (cos u - 1) u^{-1-s} ~ (-u^2/2 + u^4/24) u^{-1-s}
    double total = -std::pow(eps, 2.0 - s) / (2.0 * (2.0 - s)) +
                   std::pow(eps, 4.0 - s) / (24.0 * (4.0 - s));
    total += adaptive_simpson(
        [s](double u) { return (std::cos(u) - 1.0) * std::pow(u, -1.0 - s); }, eps, 1.0, abs_tol);
    total += tail_cos_integral(s, 1.0) - 1.0 / s;
    return {2.0 * m.c * std::pow(x, s) * total, 0.0};
}

// ---------------------------------------------------------------------------
// symbol object and bound certification
// ---------------------------------------------------------------------------

enum class EvalMode { ClosedForm, Quadrature };

/// Evaluator for m(t, xi) over a (possibly piecewise-constant-in-time) measure.
struct Symbol {
    TimeDependentMeasure source;
    EvalMode mode = EvalMode::ClosedForm;
    double error_budget = 1e-10;

    static Symbol from(LevyMeasure m) {
        Symbol s;
        s.source = TimeDependentMeasure::constant(std::move(m),
                                                  std::numeric_limits<double>::infinity());
        return s;
    }
    static Symbol from(TimeDependentMeasure t) {
        t.validate();
        Symbol s;
        s.source = std::move(t);
        return s;
    }

    cdouble eval(double t, const Vec& xi) const {
        const LevyMeasure& m = source.at(t);
        return mode == EvalMode::ClosedForm ? symbol_eval(m, xi)
                                            : symbol_eval_quadrature(m, xi, error_budget);
    }
    cdouble eval(const Vec& xi) const { return eval(0.0, xi); }
};

struct SymbolBoundReport {
    double constant = 0.0;  // sup |m|/|xi|^s, or inf -Re m / |xi|^s
    Vec arg_xi{};
    bool finite = false;
    bool positive = false;     // lower bound only
    double chain_margin = 0.0; // min over grid of (-Re m - N(xi)/3); lower bound only
    bool chain_ok = false;
};

/// sup over the grid (magnitudes x probe directions) of |m(xi)| / |xi|^sigma.
inline SymbolBoundReport certify_upper_bound(const LevyMeasure& m,
                                             const std::vector<double>& xi_grid = default_log_grid()) {
    SymbolBoundReport rep;
    for (const Vec& dir : detail::probe_directions(m.dim))
        for (double t : xi_grid) {
            const Vec xi = scale(dir, t);
            const double v = std::abs(symbol_eval(m, xi)) / std::pow(t, m.sigma);
            if (v > rep.constant) {
                rep.constant = v;
                rep.arg_xi = xi;
            }
        }
    rep.finite = std::isfinite(rep.constant);
    return rep;
}

/// inf over the grid of -Re m(xi) / |xi|^sigma, plus the pointwise chain
/// -Re m(xi) >= N(xi)/3 coming from 1 - cos x >= x^2/3 on |x| <= 1.
inline SymbolBoundReport certify_lower_bound(const LevyMeasure& m,
                                             const std::vector<double>& xi_grid = default_log_grid()) {
    SymbolBoundReport rep;
    rep.constant = std::numeric_limits<double>::infinity();
    rep.chain_margin = std::numeric_limits<double>::infinity();
    for (const Vec& dir : detail::probe_directions(m.dim))
        for (double t : xi_grid) {
            const Vec xi = scale(dir, t);
            const double neg_re = -symbol_eval(m, xi).real();
            const double v = neg_re / std::pow(t, m.sigma);
            if (v < rep.constant) {
                rep.constant = v;
                rep.arg_xi = xi;
            }
            const double margin = neg_re - nondegeneracy_functional(m, xi) / 3.0;
            rep.chain_margin = std::min(rep.chain_margin, margin);
        }
    rep.finite = std::isfinite(rep.constant);
    rep.positive = rep.constant > 1e-12;
    rep.chain_ok = rep.chain_margin >= -1e-10;
    return rep;
}

/// Normalized Fourier transform of the ball indicator, m_r(xi) = m_1(r xi).
struct BallTransform {
    double radius = 1.0;
    int dim = 1;

    BallTransform(double r, int d) : radius(r), dim(d) {
        if (!(r > 0.0)) throw std::invalid_argument("BallTransform: r > 0");
    }
    double eval(const Vec& xi) const { return ball_indicator_ft(dim, radius * norm(xi, dim)); }
    double eval_abs(double xi_norm) const { return ball_indicator_ft(dim, radius * xi_norm); }
};

// ---------------------------------------------------------------------------
// tail-measure Fourier conditions (dim = 1)
// ---------------------------------------------------------------------------

namespace detail {

/// int_{|y| >= r} e^{-i xi y} nu(dy) for 1-d measures (complex in general,
/// real for symmetric variants).
inline cdouble tail_fourier_1d(const LevyMeasure& m, double r, double xi) {
    const double s = m.sigma;
    switch (m.kind) {
        case MeasureKind::RadialDensity:
        case MeasureKind::AxisStable: {
            if (xi == 0.0) return {tail_mass(m, r), 0.0};
            const double ax = std::abs(xi);
            return {2.0 * m.c * std::pow(ax, s) * tail_cos_integral(s, r * ax), 0.0};
        }
        case MeasureKind::DyadicComb: {
            double total = 0.0;
            for (int k = m.k_min; k <= m.k_max; ++k) {
                const double a = std::exp2(k);
                if (a >= r) total += 2.0 * std::exp2(-k * s) * std::cos(a * xi);
            }
            return {total, 0.0};
        }
        case MeasureKind::Atoms: {
            cdouble total{0.0, 0.0};
            for (const auto& a : m.atom_list)
                if (std::abs(a.y[0]) >= r) total += a.w * std::polar(1.0, -xi * a.y[0]);
            return total;
        }
        case MeasureKind::Sum: {
            cdouble total{0.0, 0.0};
            for (const auto& p : m.parts) total += tail_fourier_1d(p, r, xi);
            return total;
        }
        case MeasureKind::Scaled: return m.factor * tail_fourier_1d(m.parts.front(), r, xi);
        default: throw std::invalid_argument("tail_fourier_1d: unsupported variant");
    }
}

}  // namespace detail

struct TailConditionReport {
    double a = 0.0;      // decay exponent, min{sigma/2, (d+1)/2}
    double kappa = 0.5;
    std::vector<int> j_values;
    std::vector<double> c_near;  // per j: sup |mu_hat_j - 1| / |2^{j+1} xi|^a
    std::vector<double> c_far;   // per j: sup |mu_hat_j| |2^j xi|^a
    double constant = 0.0;       // max over both families and all j
    double uniformity = 0.0;     // max_j c / median_j c, per family, worst
    bool finite = false;
};

/// Builds the dilation family mu_j = mu_j^1 * mu_j^2 from the surrogate
/// mu = nu + |y|^{-1-sigma} dy (mu_j^1: normalized ball indicator at scale
/// 2^{j+1}; mu_j^2: normalized tail of mu beyond kappa 2^j) and measures the
/// two Fourier decay constants the dilation maximal theorem requires.
inline TailConditionReport verify_tail_measure_conditions(
    const LevyMeasure& nu, int j_lo, int j_hi,
    const std::vector<double>& xi_grid = default_log_grid(), double kappa = 0.5,
    double a = -1.0) {
    if (nu.dim != 1)
        throw std::invalid_argument("verify_tail_measure_conditions: dim = 1 only");
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::invalid_argument("verify_tail_measure_conditions: kappa in (0,1)");
    const double s = nu.sigma;
    if (a <= 0.0) a = std::min(0.5 * s, 0.5 * (nu.dim + 1.0));

    const LevyMeasure surrogate = LevyMeasure::radial_density(1, s, 1.0);
    TailConditionReport rep;
    rep.a = a;
    rep.kappa = kappa;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double r = kappa * std::exp2(j);
        const double ball_r = std::exp2(j + 1);
        const double mass = tail_mass(nu, r) + tail_mass(surrogate, r);
        double cn = 0.0, cf = 0.0;
        for (double x : xi_grid) {
            const cdouble tail_ft =
                detail::tail_fourier_1d(nu, r, x) + detail::tail_fourier_1d(surrogate, r, x);
            const cdouble mu2 = tail_ft / mass;
            const cdouble mu_hat = ball_indicator_ft(1, ball_r * x) * mu2;
            cn = std::max(cn, std::abs(mu_hat - 1.0) / std::pow(ball_r * x, a));
            cf = std::max(cf, std::abs(mu_hat) * std::pow(std::exp2(j) * x, a));
        }
        rep.j_values.push_back(j);
        rep.c_near.push_back(cn);
        rep.c_far.push_back(cf);
    }
    auto family_stats = [&](const std::vector<double>& c) {
        std::vector<double> sorted = c;
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted[sorted.size() / 2];
        const double mx = sorted.back();
        rep.constant = std::max(rep.constant, mx);
        if (med > 0.0) rep.uniformity = std::max(rep.uniformity, mx / med);
    };
    family_stats(rep.c_near);
    family_stats(rep.c_far);
    rep.finite = std::isfinite(rep.constant);
    return rep;
}

}  // namespace nlevy

#endif
