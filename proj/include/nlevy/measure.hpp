#ifndef NLEVY_MEASURE_HPP
#define NLEVY_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "special.hpp"

namespace nlevy {

enum class MeasureKind { RadialDensity, AxisStable, DyadicComb, Polar, Atoms, Sum, Scaled };

struct Atom {
    Vec y{};
    double w = 0.0;
};

/// Atom of a spherical measure: unit direction and weight.
struct SphericalAtom {
    Vec dir{};
    double w = 0.0;
};

/// A Levy measure of order sigma in (0,2) on R^d, built from a small algebra
/// of variants:
///   RadialDensity  c |y|^{-d-sigma} dy
///   AxisStable     sum_i c |y_i|^{-1-sigma} dy_i x delta_0 on the other axes
///   DyadicComb     sum_i sum_{k in [k_min,k_max]} 2^{-k sigma}
///                  (delta_{2^k e_i} + delta_{-2^k e_i})
///   Polar          r^{-1-sigma} dr mu(dtheta) with atomic spherical mu
///   Atoms          finite list of weighted points
///   Sum, Scaled    closure under addition and positive scaling
/// All functionals below evaluate in closed form; atoms on a sphere of radius
/// r count toward the tail {|y| >= r} (the ball B_r is open).
class LevyMeasure {
  public:
    MeasureKind kind = MeasureKind::Atoms;
    double sigma = 1.0;
    int dim = 1;

    double c = 0.0;  // density coefficient (RadialDensity, AxisStable)
    int k_min = 0, k_max = 0;
    std::vector<Atom> atom_list;
    std::vector<SphericalAtom> spherical_atoms;
    std::vector<LevyMeasure> parts;  // Sum
    double factor = 1.0;             // Scaled

    static LevyMeasure radial_density(int dim, double sigma, double c) {
        check_order_dim(sigma, dim);
        if (!(c > 0.0)) throw std::invalid_argument("radial_density: c > 0");
        LevyMeasure m;
        m.kind = MeasureKind::RadialDensity;
        m.sigma = sigma;
        m.dim = dim;
        m.c = c;
        return m;
    }

    /// Radial density normalized so the symbol is exactly -|xi|^sigma.
    static LevyMeasure fractional_laplacian_measure(int dim, double sigma) {
        return radial_density(dim, sigma, 1.0 / radial_symbol_constant(dim, sigma));
    }

    static LevyMeasure axis_stable(int dim, double sigma, double c) {
        check_order_dim(sigma, dim);
        if (!(c > 0.0)) throw std::invalid_argument("axis_stable: c > 0");
        LevyMeasure m;
        m.kind = MeasureKind::AxisStable;
        m.sigma = sigma;
        m.dim = dim;
        m.c = c;
        return m;
    }

    static LevyMeasure dyadic_comb(int dim, double sigma, int k_min, int k_max) {
        check_order_dim(sigma, dim);
        if (k_min > k_max) throw std::invalid_argument("dyadic_comb: k_min <= k_max");
        LevyMeasure m;
        m.kind = MeasureKind::DyadicComb;
        m.sigma = sigma;
        m.dim = dim;
        m.k_min = k_min;
        m.k_max = k_max;
        return m;
    }

    static LevyMeasure polar(int dim, double sigma, std::vector<SphericalAtom> sph) {
        check_order_dim(sigma, dim);
        for (auto& a : sph) {
            if (!(a.w > 0.0)) throw std::invalid_argument("polar: weights > 0");
            const double n = norm(a.dir, dim);
            if (!(n > 0.0)) throw std::invalid_argument("polar: zero direction");
            a.dir = scale(a.dir, 1.0 / n);
        }
        LevyMeasure m;
        m.kind = MeasureKind::Polar;
        m.sigma = sigma;
        m.dim = dim;
        m.spherical_atoms = std::move(sph);
        return m;
    }

    static LevyMeasure atoms(int dim, double sigma, std::vector<Atom> list) {
        check_order_dim(sigma, dim);
        for (const auto& a : list) {
            if (!(a.w > 0.0)) throw std::invalid_argument("atoms: weights > 0");
            if (!(norm(a.y, dim) > 0.0)) throw std::invalid_argument("atoms: atom at origin");
        }
        LevyMeasure m;
        m.kind = MeasureKind::Atoms;
        m.sigma = sigma;
        m.dim = dim;
        m.atom_list = std::move(list);
        return m;
    }

    static LevyMeasure sum(std::vector<LevyMeasure> ps) {
        if (ps.empty()) throw std::invalid_argument("sum: needs at least one part");
        for (const auto& p : ps)
            if (p.sigma != ps.front().sigma || p.dim != ps.front().dim)
                throw std::invalid_argument("sum: all parts must share sigma and dim");
        LevyMeasure m;
        m.kind = MeasureKind::Sum;
        m.sigma = ps.front().sigma;
        m.dim = ps.front().dim;
        m.parts = std::move(ps);
        return m;
    }

    static LevyMeasure scaled(double a, LevyMeasure inner) {
        if (!(a > 0.0)) throw std::invalid_argument("scaled: factor > 0");
        LevyMeasure m;
        m.kind = MeasureKind::Scaled;
        m.sigma = inner.sigma;
        m.dim = inner.dim;
        m.factor = a;
        m.parts.push_back(std::move(inner));
        return m;
    }

  private:
    static void check_order_dim(double sigma, int dim) {
        if (!(sigma > 0.0 && sigma < 2.0)) throw std::invalid_argument("sigma in (0,2)");
        if (dim < 1 || dim > 3) throw std::invalid_argument("dim in {1,2,3}");
    }
};

// ---------------------------------------------------------------------------
// structural queries
// ---------------------------------------------------------------------------

inline bool is_atomic(const LevyMeasure& m) {
    switch (m.kind) {
        case MeasureKind::DyadicComb:
        case MeasureKind::Atoms: return true;
        case MeasureKind::Sum:
        case MeasureKind::Scaled:
            return std::all_of(m.parts.begin(), m.parts.end(),
                               [](const LevyMeasure& p) { return is_atomic(p); });
        default: return false;
    }
}

/// Expands atomic variants to a flat atom list. Throws for density variants.
inline void enumerate_atoms(const LevyMeasure& m, std::vector<Atom>& out, double w_scale = 1.0) {
    switch (m.kind) {
        case MeasureKind::Atoms:
            for (const auto& a : m.atom_list) out.push_back({a.y, w_scale * a.w});
            return;
        case MeasureKind::DyadicComb:
            for (int i = 0; i < m.dim; ++i)
                for (int k = m.k_min; k <= m.k_max; ++k) {
                    const double r = std::exp2(k), w = w_scale * std::exp2(-k * m.sigma);
                    Vec plus{}, minus{};
                    plus[i] = r;
                    minus[i] = -r;
                    out.push_back({plus, w});
                    out.push_back({minus, w});
                }
            return;
        case MeasureKind::Sum:
            for (const auto& p : m.parts) enumerate_atoms(p, out, w_scale);
            return;
        case MeasureKind::Scaled: enumerate_atoms(m.parts.front(), out, w_scale * m.factor); return;
        default: throw std::invalid_argument("enumerate_atoms: measure has a density component");
    }
}

inline std::vector<Atom> enumerate_atoms(const LevyMeasure& m) {
    std::vector<Atom> out;
    enumerate_atoms(m, out);
    return out;
}

inline bool is_symmetric(const LevyMeasure& m) {
    switch (m.kind) {
        case MeasureKind::RadialDensity:
        case MeasureKind::AxisStable:
        case MeasureKind::DyadicComb: return true;
        case MeasureKind::Atoms: {
            std::vector<bool> used(m.atom_list.size(), false);
            for (size_t i = 0; i < m.atom_list.size(); ++i) {
                if (used[i]) continue;
                const auto& a = m.atom_list[i];
                bool found = false;
                for (size_t j = 0; j < m.atom_list.size(); ++j) {
                    if (j == i || used[j]) continue;
                    const auto& b = m.atom_list[j];
                    Vec s = add(a.y, b.y);
                    if (norm(s, m.dim) <= 1e-12 * norm(a.y, m.dim) &&
                        std::abs(a.w - b.w) <= 1e-12 * a.w) {
                        used[i] = used[j] = true;
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
            return true;
        }
        case MeasureKind::Polar: {
            std::vector<bool> used(m.spherical_atoms.size(), false);
            for (size_t i = 0; i < m.spherical_atoms.size(); ++i) {
                if (used[i]) continue;
                const auto& a = m.spherical_atoms[i];
                bool found = false;
                for (size_t j = 0; j < m.spherical_atoms.size(); ++j) {
                    if (j == i || used[j]) continue;
                    const auto& b = m.spherical_atoms[j];
                    if (norm(add(a.dir, b.dir), m.dim) <= 1e-12 &&
                        std::abs(a.w - b.w) <= 1e-12 * a.w) {
                        used[i] = used[j] = true;
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
            return true;
        }
        case MeasureKind::Sum:
        case MeasureKind::Scaled:
            return std::all_of(m.parts.begin(), m.parts.end(),
                               [](const LevyMeasure& p) { return is_symmetric(p); });
    }
    return false;
}

// ---------------------------------------------------------------------------
// functionals
// ---------------------------------------------------------------------------

/// nu({ |y| >= r }). Atoms exactly on the sphere |y| = r are included.
inline double tail_mass(const LevyMeasure& m, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("tail_mass: r > 0");
    const double s = m.sigma;
    switch (m.kind) {
        case MeasureKind::RadialDensity: return m.c * sphere_area(m.dim) * std::pow(r, -s) / s;
        case MeasureKind::AxisStable: return m.dim * m.c * 2.0 * std::pow(r, -s) / s;
        case MeasureKind::Polar: {
            double w = 0.0;
            for (const auto& a : m.spherical_atoms) w += a.w;
            return w * std::pow(r, -s) / s;
        }
        case MeasureKind::DyadicComb: {
            double total = 0.0;
            for (int k = m.k_min; k <= m.k_max; ++k)
                if (std::exp2(k) >= r) total += 2.0 * std::exp2(-k * s);
            return m.dim * total;
        }
        case MeasureKind::Atoms: {
            double total = 0.0;
            for (const auto& a : m.atom_list)
                if (norm(a.y, m.dim) >= r) total += a.w;
            return total;
        }
        case MeasureKind::Sum: {
            double total = 0.0;
            for (const auto& p : m.parts) total += tail_mass(p, r);
            return total;
        }
        case MeasureKind::Scaled: return m.factor * tail_mass(m.parts.front(), r);
    }
    return 0.0;
}

enum class Region { Inside, Outside };

/// int |y|^c nu(dy) over B_r (Inside, requires c > sigma) or over its
/// complement {|y| >= r} (Outside, requires c < sigma).
inline double truncated_moment(const LevyMeasure& m, double cexp, double r, Region region) {
    if (!(r > 0.0)) throw std::invalid_argument("truncated_moment: r > 0");
    const double s = m.sigma;
    if (region == Region::Outside && !(cexp < s))
        throw std::invalid_argument("truncated_moment: outside region requires c < sigma");
    if (region == Region::Inside && !(cexp > s))
        throw std::invalid_argument("truncated_moment: inside region requires c > sigma");
    const double radial = (region == Region::Outside) ? std::pow(r, cexp - s) / (s - cexp)
                                                      : std::pow(r, cexp - s) / (cexp - s);
    switch (m.kind) {
        case MeasureKind::RadialDensity: return m.c * sphere_area(m.dim) * radial;
        case MeasureKind::AxisStable: return m.dim * m.c * 2.0 * radial;
        case MeasureKind::Polar: {
            double w = 0.0;
            for (const auto& a : m.spherical_atoms) w += a.w;
            return w * radial;
        }
        case MeasureKind::DyadicComb: {
            double total = 0.0;
            for (int k = m.k_min; k <= m.k_max; ++k) {
                const double ak = std::exp2(k);
                const bool in = (region == Region::Outside) ? (ak >= r) : (ak < r);
                if (in) total += 2.0 * std::exp2(-k * s) * std::pow(ak, cexp);
            }
            return m.dim * total;
        }
        case MeasureKind::Atoms: {
            double total = 0.0;
            for (const auto& a : m.atom_list) {
                const double ay = norm(a.y, m.dim);
                const bool in = (region == Region::Outside) ? (ay >= r) : (ay < r);
                if (in) total += a.w * std::pow(ay, cexp);
            }
            return total;
        }
        case MeasureKind::Sum: {
            double total = 0.0;
            for (const auto& p : m.parts) total += truncated_moment(p, cexp, r, region);
            return total;
        }
        case MeasureKind::Scaled: return m.factor * truncated_moment(m.parts.front(), cexp, r, region);
    }
    return 0.0;
}

/// int_{r1 <= |y| <= r2} y nu(dy), the first moment over a closed annulus.
inline Vec cancellation_defect(const LevyMeasure& m, double r1, double r2) {
    if (!(0.0 < r1 && r1 < r2)) throw std::invalid_argument("cancellation_defect: 0 < r1 < r2");
    switch (m.kind) {
        case MeasureKind::RadialDensity:
        case MeasureKind::AxisStable:
        case MeasureKind::DyadicComb: return Vec{};  // symmetric by construction
        case MeasureKind::Atoms: {
            Vec v{};
            for (const auto& a : m.atom_list) {
                const double ay = norm(a.y, m.dim);
                if (ay >= r1 && ay <= r2) v = add(v, scale(a.y, a.w));
            }
            return v;
        }
        case MeasureKind::Polar: {
            Vec dirsum{};
            for (const auto& a : m.spherical_atoms) dirsum = add(dirsum, scale(a.dir, a.w));
            const double s = m.sigma;
            const double radial = (s == 1.0) ? std::log(r2 / r1)
                                             : (std::pow(r1, 1.0 - s) - std::pow(r2, 1.0 - s)) / (s - 1.0);
            return scale(dirsum, radial);
        }
        case MeasureKind::Sum: {
            Vec v{};
            for (const auto& p : m.parts) v = add(v, cancellation_defect(p, r1, r2));
            return v;
        }
        case MeasureKind::Scaled: return scale(cancellation_defect(m.parts.front(), r1, r2), m.factor);
    }
    return Vec{};
}

/// N(xi) = int_{|xi.y| <= 1} |xi.y|^2 nu(dy). The cutoff is handled exactly
/// for every variant; the lower bound N(xi) >= N0 |xi|^sigma is the
/// nondegeneracy condition.
inline double nondegeneracy_functional(const LevyMeasure& m, const Vec& xi) {
    const double xin = norm(xi, m.dim);
    if (!(xin > 0.0)) throw std::invalid_argument("nondegeneracy_functional: xi != 0");
    const double s = m.sigma;
    switch (m.kind) {
        case MeasureKind::RadialDensity:
            return m.c * angular_power_moment(m.dim, s) / (2.0 - s) * std::pow(xin, s);
        case MeasureKind::AxisStable: {
            double total = 0.0;
            for (int i = 0; i < m.dim; ++i) total += std::pow(std::abs(xi[i]), s);
            return 2.0 * m.c / (2.0 - s) * total;
        }
        case MeasureKind::Polar: {
            double total = 0.0;
            for (const auto& a : m.spherical_atoms)
                total += a.w * std::pow(std::abs(dot(xi, a.dir, m.dim)), s);
            return total / (2.0 - s);
        }
        case MeasureKind::DyadicComb: {
            double total = 0.0;
            for (int i = 0; i < m.dim; ++i) {
                const double xa = std::abs(xi[i]);
                if (xa == 0.0) continue;
                for (int k = m.k_min; k <= m.k_max; ++k) {
                    const double t = xa * std::exp2(k);
                    if (t <= 1.0) total += 2.0 * std::exp2(-k * s) * t * t;
                }
            }
            return total;
        }
        case MeasureKind::Atoms: {
            double total = 0.0;
            for (const auto& a : m.atom_list) {
                const double t = dot(xi, a.y, m.dim);
                if (std::abs(t) <= 1.0) total += a.w * t * t;
            }
            return total;
        }
        case MeasureKind::Sum: {
            double total = 0.0;
            for (const auto& p : m.parts) total += nondegeneracy_functional(p, xi);
            return total;
        }
        case MeasureKind::Scaled: return m.factor * nondegeneracy_functional(m.parts.front(), xi);
    }
    return 0.0;
}

/// True when sigma != 1, the measure is symmetric, or the first moment
/// vanishes on a family of probe annuli (tolerance 1e-10).
inline bool cancellation_ok(const LevyMeasure& m) {
    if (m.sigma != 1.0 || is_symmetric(m)) return true;
    const auto radii = log_spaced(std::exp2(-12), std::exp2(12), 25);
    for (size_t i = 0; i + 1 < radii.size(); ++i)
        if (norm(cancellation_defect(m, radii[i], radii[i + 1]), m.dim) > 1e-10) return false;
    if (norm(cancellation_defect(m, radii.front(), radii.back()), m.dim) > 1e-10) return false;
    return true;
}

// ---------------------------------------------------------------------------
// dyadic comb truncation bounds
// ---------------------------------------------------------------------------

/// Mass the truncated comb is missing beyond k_max (per the full lattice sum).
inline double comb_tail_truncation_bound(const LevyMeasure& m) {
    if (m.kind != MeasureKind::DyadicComb) throw std::invalid_argument("needs DyadicComb");
    const double s = m.sigma;
    return m.dim * 2.0 * std::exp2(-(m.k_max + 1) * s) / (1.0 - std::exp2(-s));
}

/// Second moment the truncated comb is missing below k_min.
inline double comb_moment2_truncation_bound(const LevyMeasure& m) {
    if (m.kind != MeasureKind::DyadicComb) throw std::invalid_argument("needs DyadicComb");
    const double q = 2.0 - m.sigma;
    return m.dim * 2.0 * std::exp2((m.k_min - 1) * q) / (1.0 - std::exp2(-q));
}

// ---------------------------------------------------------------------------
// time dependence and assumption certification
// ---------------------------------------------------------------------------

/// Piecewise-constant-in-time measure on [0, T): the intervals
/// [t_a, t_b) must be ordered, disjoint and cover [0, T).
struct TimeDependentMeasure {
    struct Piece {
        double t_a = 0.0, t_b = 0.0;
        LevyMeasure measure;
    };
    std::vector<Piece> schedule;

    static TimeDependentMeasure constant(LevyMeasure m, double horizon) {
        TimeDependentMeasure t;
        t.schedule.push_back({0.0, horizon, std::move(m)});
        t.validate();
        return t;
    }

    void validate() const {
        if (schedule.empty()) throw std::invalid_argument("schedule: empty");
        if (schedule.front().t_a != 0.0) throw std::invalid_argument("schedule: must start at 0");
        for (size_t i = 0; i < schedule.size(); ++i) {
            const auto& p = schedule[i];
            if (!(p.t_b > p.t_a)) throw std::invalid_argument("schedule: empty interval");
            if (i > 0 && schedule[i - 1].t_b != p.t_a)
                throw std::invalid_argument("schedule: gaps or overlaps");
            if (p.measure.sigma != schedule.front().measure.sigma ||
                p.measure.dim != schedule.front().measure.dim)
                throw std::invalid_argument("schedule: pieces must share sigma and dim");
        }
    }

    double horizon() const { return schedule.back().t_b; }
    double sigma() const { return schedule.front().measure.sigma; }
    int dim() const { return schedule.front().measure.dim; }

    const LevyMeasure& at(double t) const {
        for (const auto& p : schedule)
            if (t >= p.t_a && t < p.t_b) return p.measure;
        return schedule.back().measure;  // t == horizon
    }
};

struct AssumptionReport {
    double lambda_hat = 0.0;       // sup_r r^sigma nu(B_r^c) over the grid
    double lambda_arg_r = 0.0;
    double nondegen_hat = 0.0;     // inf_xi N(xi)/|xi|^sigma over the grid
    Vec nondegen_arg_xi{};
    double cancellation_max = 0.0; // max |annulus first moment| (sigma = 1)
    double sigma = 0.0;
    size_t r_grid_size = 0, xi_grid_size = 0;

    bool lambda_finite() const { return std::isfinite(lambda_hat); }
    bool nondegen_pass() const { return nondegen_hat > 1e-12; }
    bool cancellation_pass() const { return sigma != 1.0 || cancellation_max < 1e-10; }
    bool pass() const { return lambda_finite() && nondegen_pass() && cancellation_pass(); }
};

namespace detail {

inline std::vector<Vec> probe_directions(int dim) {
    std::vector<Vec> dirs;
    for (int i = 0; i < dim; ++i) {
        Vec e{};
        e[i] = 1.0;
        dirs.push_back(e);
    }
    if (dim >= 2) {
        Vec diag{};
        for (int i = 0; i < dim; ++i) diag[i] = 1.0 / std::sqrt(double(dim));
        dirs.push_back(diag);
        Vec anti{};
        anti[0] = 1.0 / std::sqrt(2.0);
        anti[1] = -1.0 / std::sqrt(2.0);
        dirs.push_back(anti);
    }
    return dirs;
}

}  // namespace detail

inline AssumptionReport check_assumptions(const LevyMeasure& m,
                                          const std::vector<double>& r_grid = default_log_grid(),
                                          const std::vector<double>& xi_grid = default_log_grid()) {
    if (r_grid.empty() || xi_grid.empty()) throw std::invalid_argument("check_assumptions: empty grid");
    AssumptionReport rep;
    rep.sigma = m.sigma;
    rep.r_grid_size = r_grid.size();
    rep.xi_grid_size = xi_grid.size();

    for (double r : r_grid) {
        const double v = std::pow(r, m.sigma) * tail_mass(m, r);
        if (v > rep.lambda_hat) {
            rep.lambda_hat = v;
            rep.lambda_arg_r = r;
        }
    }

    rep.nondegen_hat = std::numeric_limits<double>::infinity();
    for (const Vec& dir : detail::probe_directions(m.dim))
        for (double t : xi_grid) {
            const Vec xi = scale(dir, t);
            const double v = nondegeneracy_functional(m, xi) / std::pow(t, m.sigma);
            if (v < rep.nondegen_hat) {
                rep.nondegen_hat = v;
                rep.nondegen_arg_xi = xi;
            }
        }

    rep.cancellation_max = 0.0;
    for (size_t i = 0; i + 1 < r_grid.size(); i += 8) {
        const size_t j = std::min(i + 8, r_grid.size() - 1);
        rep.cancellation_max = std::max(
            rep.cancellation_max, norm(cancellation_defect(m, r_grid[i], r_grid[j]), m.dim));
    }
    rep.cancellation_max = std::max(
        rep.cancellation_max, norm(cancellation_defect(m, r_grid.front(), r_grid.back()), m.dim));
    return rep;
}

inline AssumptionReport check_assumptions(const TimeDependentMeasure& tdm,
                                          const std::vector<double>& r_grid = default_log_grid(),
                                          const std::vector<double>& xi_grid = default_log_grid()) {
    tdm.validate();
    AssumptionReport worst;
    bool first = true;
    for (const auto& piece : tdm.schedule) {
        AssumptionReport r = check_assumptions(piece.measure, r_grid, xi_grid);
        if (first) {
            worst = r;
            first = false;
            continue;
        }
        if (r.lambda_hat > worst.lambda_hat) {
            worst.lambda_hat = r.lambda_hat;
            worst.lambda_arg_r = r.lambda_arg_r;
        }
        if (r.nondegen_hat < worst.nondegen_hat) {
            worst.nondegen_hat = r.nondegen_hat;
            worst.nondegen_arg_xi = r.nondegen_arg_xi;
        }
        worst.cancellation_max = std::max(worst.cancellation_max, r.cancellation_max);
    }
    return worst;
}

/// sup over (c, r) grids of r^{sigma-c} * truncated_moment, together with the
/// geometric-series constant implied by the tail bound with Lambda =
/// lambda_hat:  Outside: Lambda 2^c / (1 - 2^{c-sigma}),
///              Inside:  Lambda 2^sigma / (1 - 2^{sigma-c}).
struct MomentBoundReport {
    double sup_ratio = 0.0;
    double arg_c = 0.0, arg_r = 0.0;
    double predicted_constant = 0.0;
    bool pass = false;
};

inline MomentBoundReport check_moment_bounds(const LevyMeasure& m, const std::vector<double>& c_grid,
                                             const std::vector<double>& r_grid, Region region,
                                             double lambda_hat) {
    MomentBoundReport rep;
    rep.pass = true;
    bool any = false;
    for (double cexp : c_grid) {
        if (region == Region::Outside && !(cexp < m.sigma)) continue;
        if (region == Region::Inside && !(cexp > m.sigma)) continue;
        any = true;
        const double pred = (region == Region::Outside)
                                ? lambda_hat * std::exp2(cexp) / (1.0 - std::exp2(cexp - m.sigma))
                                : lambda_hat * std::exp2(m.sigma) / (1.0 - std::exp2(m.sigma - cexp));
        double sup_c = 0.0, arg_r = 0.0;
        for (double r : r_grid) {
            const double v = std::pow(r, m.sigma - cexp) * truncated_moment(m, cexp, r, region);
            if (v > sup_c) {
                sup_c = v;
                arg_r = r;
            }
        }
        rep.pass = rep.pass && std::isfinite(sup_c) && sup_c <= pred * (1.0 + 1e-12);
        if (sup_c > rep.sup_ratio) {
            rep.sup_ratio = sup_c;
            rep.arg_c = cexp;
            rep.arg_r = arg_r;
            rep.predicted_constant = pred;
        }
    }
    if (!any) throw std::invalid_argument("check_moment_bounds: no admissible c in grid");
    return rep;
}

}  // namespace nlevy

#endif
