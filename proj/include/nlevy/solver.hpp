#ifndef NLEVY_SOLVER_HPP
#define NLEVY_SOLVER_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "grid.hpp"
#include "measure.hpp"
#include "norms.hpp"
#include "symbol.hpp"

namespace nlevy {

// ---------------------------------------------------------------------------
// d/dt u = L_t u - lambda u + f on the periodic grid, u(0) = 0, with
// piecewise-constant-in-time measure and forcing. Each Fourier mode then
// satisfies a scalar ODE with constant coefficients per interval, advanced by
// the exact exponential formula; the only numerical error is transform
// round-off.
// ---------------------------------------------------------------------------

/// Forcing that is constant on each interval [mesh[i], mesh[i+1]).
struct PiecewiseForcing {
    std::vector<double> mesh;       // 0 = t_0 < ... < t_M = T
    std::vector<GridField> pieces;  // size M

    static PiecewiseForcing constant(GridField f, double horizon) {
        PiecewiseForcing p;
        p.mesh = {0.0, horizon};
        p.pieces.push_back(std::move(f));
        return p;
    }

    void validate() const {
        if (mesh.size() < 2 || pieces.size() + 1 != mesh.size())
            throw std::invalid_argument("forcing: mesh/pieces size mismatch");
        if (mesh.front() != 0.0) throw std::invalid_argument("forcing: mesh starts at 0");
        for (size_t i = 0; i + 1 < mesh.size(); ++i)
            if (!(mesh[i + 1] > mesh[i])) throw std::invalid_argument("forcing: mesh not increasing");
        for (const auto& f : pieces)
            if (f.dim != pieces.front().dim || f.n != pieces.front().n)
                throw std::invalid_argument("forcing: inconsistent fields");
    }
    int dim() const { return pieces.front().dim; }
    int n() const { return pieces.front().n; }
    size_t piece_at(double t) const {
        for (size_t i = 0; i + 1 < mesh.size(); ++i)
            if (t >= mesh[i] && t < mesh[i + 1]) return i;
        return pieces.size() - 1;
    }
};

struct EvolutionProblem {
    TimeDependentMeasure measure;
    double lambda = 0.0;
    PiecewiseForcing forcing;

    double horizon() const { return measure.horizon(); }

    void validate() const {
        measure.validate();
        forcing.validate();
        if (!(lambda >= 0.0)) throw std::invalid_argument("problem: lambda >= 0");
        if (std::abs(forcing.mesh.back() - measure.horizon()) > 1e-12)
            throw std::invalid_argument("problem: forcing horizon != measure horizon");
        if (measure.dim() != forcing.dim())
            throw std::invalid_argument("problem: dimension mismatch");
        // the forcing mesh must refine the measure schedule
        for (const auto& piece : measure.schedule) {
            bool found = false;
            for (double t : forcing.mesh)
                if (std::abs(t - piece.t_a) <= 1e-12) found = true;
            if (!found)
                throw std::invalid_argument("problem: forcing mesh must refine the schedule");
        }
    }
};

struct Trajectory {
    std::vector<double> times;  // starts at 0
    std::vector<GridField> states;
    std::vector<std::vector<cdouble>> spectra;  // cache, one per time
};

namespace detail {

inline cdouble phi1(cdouble w) {
    if (std::abs(w) < 1e-6) return 1.0 + w / 2.0 + w * w / 6.0;
    return (std::exp(w) - 1.0) / w;
}

/// int_0^dt e^{a s} ds.
inline double exp_l1(double a, double dt) {
    const double w = a * dt;
    if (std::abs(w) < 1e-6) return dt * (1.0 + w / 2.0 + w * w / 6.0);
    return (std::exp(w) - 1.0) / a;
}

/// int_0^dt |u0 e^{zs} + f s phi1(zs)|^2 ds, the squared L2 mass of the exact
/// mode solution over one interval (u(0) = u0, constant forcing f, rate z).
inline double mode_interval_l2sq(cdouble u0, cdouble f, cdouble z, double dt) {
    const cdouble g = z * u0 + f;  // time derivative at the left endpoint
    if (std::abs(z) * dt < 1e-4) {
        // u(s) = u0 + g s phi1(zs); cubic expansion, relative error O((z dt)^4)
        const cdouble i1 = dt * dt / 2.0 + z * std::pow(dt, 3) / 6.0 +
                           z * z * std::pow(dt, 4) / 24.0;  // int s phi1(zs) ds
        const double quad = (z * z).real() / 3.0 + std::norm(z) / 4.0;
        const double i2 = std::pow(dt, 3) / 3.0 + z.real() * std::pow(dt, 4) / 4.0 +
                          quad * std::pow(dt, 5) / 5.0;  // int s^2 |phi1(zs)|^2 ds
        return std::norm(u0) * dt + 2.0 * (std::conj(u0) * g * i1).real() + std::norm(g) * i2;
    }
    const cdouble A = u0 + f / z, B = -f / z;
    const double t1 = std::norm(A) * exp_l1(2.0 * z.real(), dt);
    const double t2 = std::norm(B) * dt;
    const double t3 = 2.0 * (A * std::conj(B) * (std::exp(z * dt) - 1.0) / z).real();
    return t1 + t2 + t3;
}

/// int_0^dt |du/dt|^2 ds = |g|^2 int e^{2 Re z s} ds (stable for all z).
inline double mode_interval_dt_l2sq(cdouble u0, cdouble f, cdouble z, double dt) {
    const cdouble g = z * u0 + f;
    return std::norm(g) * exp_l1(2.0 * z.real(), dt);
}

/// Shared precomputation: stored mesh, measure/forcing piece per interval,
/// symbol values per measure piece, forcing spectra.
struct SolverWorkspace {
    int dim = 1, n = 0;
    size_t modes = 0;
    std::vector<double> times;            // stored mesh, size S+1
    std::vector<size_t> measure_piece;    // per stored interval
    std::vector<size_t> forcing_piece;    // per stored interval
    std::vector<std::vector<cdouble>> m_vals;   // per measure piece, per mode
    std::vector<std::vector<cdouble>> f_specs;  // per forcing piece, per mode

    SolverWorkspace(const EvolutionProblem& p, int substeps) {
        p.validate();
        if (substeps < 1) throw std::invalid_argument("solve: substeps >= 1");
        dim = p.forcing.dim();
        n = p.forcing.n();
        modes = p.forcing.pieces.front().size();

        times.push_back(0.0);
        for (size_t i = 0; i + 1 < p.forcing.mesh.size(); ++i) {
            const double a = p.forcing.mesh[i], b = p.forcing.mesh[i + 1];
            for (int s = 1; s <= substeps; ++s) times.push_back(a + (b - a) * s / substeps);
        }
        for (size_t i = 0; i + 1 < times.size(); ++i) {
            const double mid = 0.5 * (times[i] + times[i + 1]);
            forcing_piece.push_back(p.forcing.piece_at(mid));
            size_t mp = 0;
            for (size_t q = 0; q < p.measure.schedule.size(); ++q)
                if (mid >= p.measure.schedule[q].t_a && mid < p.measure.schedule[q].t_b) mp = q;
            measure_piece.push_back(mp);
        }
        for (const auto& piece : p.measure.schedule) {
            std::vector<cdouble> mv(modes);
            for (size_t k = 0; k < modes; ++k) {
                const Vec f = lattice_freq_vec(k, dim, n);
                mv[k] = (norm(f, dim) == 0.0) ? cdouble{0.0, 0.0} : symbol_eval(piece.measure, f);
            }
            m_vals.push_back(std::move(mv));
        }
        for (const auto& f : p.forcing.pieces) f_specs.push_back(forward_transform(f));
    }
};

}  // namespace detail

/// Exact per-mode solve. Each forcing interval is stored at `substeps`
/// interior points so time quadratures have a mesh to work with; the values
/// at every stored time are exact up to transform round-off.
inline Trajectory solve(const EvolutionProblem& p, int substeps = 8, bool check = true) {
    if (check)
        for (const auto& piece : p.measure.schedule)
            if (!check_assumptions(piece.measure).pass())
                throw std::invalid_argument("solve: a schedule piece fails the measure assumptions");
    detail::SolverWorkspace ws(p, substeps);

    Trajectory traj;
    traj.times = ws.times;
    std::vector<cdouble> u(ws.modes, cdouble{0.0, 0.0});
    traj.spectra.push_back(u);
    traj.states.push_back(GridField(ws.dim, ws.n));
    for (size_t i = 0; i + 1 < ws.times.size(); ++i) {
        const double dt = ws.times[i + 1] - ws.times[i];
        const auto& mv = ws.m_vals[ws.measure_piece[i]];
        const auto& fs = ws.f_specs[ws.forcing_piece[i]];
        for (size_t k = 0; k < ws.modes; ++k) {
            const cdouble z = mv[k] - p.lambda;
            u[k] = std::exp(z * dt) * u[k] + dt * detail::phi1(z * dt) * fs[k];
        }
        traj.spectra.push_back(u);
        traj.states.push_back(inverse_transform_real(ws.dim, ws.n, u));
    }
    return traj;
}

/// Equation defect of a (possibly external) trajectory: the maximum over
/// stored intervals of || u(t_{i+1}) - step(u(t_i)) ||_2 / dt, where step is
/// the exact one-interval propagator. Zero (round-off) for solver output.
inline double residual(const Trajectory& traj, const EvolutionProblem& p) {
    detail::SolverWorkspace ws(p, 1);
    // map stored interval of traj onto workspace pieces by midpoint
    if (traj.times.size() != traj.spectra.size() || traj.times.size() < 2)
        throw std::invalid_argument("residual: trajectory without cached spectra");
    const double cell = std::pow(2.0 * pi / ws.n, ws.dim) / double(ws.modes);
    double worst = 0.0;
    for (size_t i = 0; i + 1 < traj.times.size(); ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        const double mid = 0.5 * (traj.times[i] + traj.times[i + 1]);
        size_t mp = 0;
        for (size_t q = 0; q < p.measure.schedule.size(); ++q)
            if (mid >= p.measure.schedule[q].t_a && mid < p.measure.schedule[q].t_b) mp = q;
        const auto& mv = ws.m_vals[mp];
        const auto& fs = ws.f_specs[p.forcing.piece_at(mid)];
        double acc = 0.0;
        for (size_t k = 0; k < ws.modes; ++k) {
            const cdouble z = mv[k] - p.lambda;
            const cdouble pred =
                std::exp(z * dt) * traj.spectra[i][k] + dt * detail::phi1(z * dt) * fs[k];
            acc += std::norm(traj.spectra[i + 1][k] - pred);
        }
        worst = std::max(worst, std::sqrt(acc * cell) / dt);
    }
    return worst;
}

// ---------------------------------------------------------------------------
// comparison operators and a-priori ratios
// ---------------------------------------------------------------------------

struct ComparisonOp {
    enum class Kind { Measure, Gradient, Fractional } kind = Kind::Fractional;
    LevyMeasure measure;  // Kind::Measure
    double sigma = 1.0;   // Kind::Fractional

    static ComparisonOp fractional(double sigma) {
        ComparisonOp c;
        c.kind = Kind::Fractional;
        c.sigma = sigma;
        return c;
    }
    static ComparisonOp gradient() {
        ComparisonOp c;
        c.kind = Kind::Gradient;
        return c;
    }
    static ComparisonOp from_measure(LevyMeasure m) {
        // the comparison side only needs the upper bound and cancellation
        if (m.sigma == 1.0 && !cancellation_ok(m))
            throw std::invalid_argument("ComparisonOp: sigma = 1 measure without cancellation");
        ComparisonOp c;
        c.kind = Kind::Measure;
        c.measure = std::move(m);
        return c;
    }

    /// |multiplier| per mode; Gradient uses |xi| (the magnitude of i xi).
    double abs_multiplier(const Vec& f, int dim) const {
        switch (kind) {
            case Kind::Fractional: return std::pow(norm(f, dim), sigma);
            case Kind::Gradient: return norm(f, dim);
            case Kind::Measure:
                return norm(f, dim) == 0.0 ? 0.0 : std::abs(symbol_eval(measure, f));
        }
        return 0.0;
    }

    /// Applies the operator to a field; Gradient returns the pointwise
    /// Euclidean magnitude of the spectral gradient.
    GridField apply(const GridField& u) const {
        switch (kind) {
            case Kind::Fractional: return fractional_laplacian(u, sigma, false);
            case Kind::Measure:
                return apply_multiplier(u, [this, dim = u.dim](const Vec& f) {
                    return norm(f, dim) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(measure, f);
                });
            case Kind::Gradient: {
                GridField mag(u.dim, u.n);
                for (int a = 0; a < u.dim; ++a) {
                    const GridField da = spectral_derivative(u, a);
                    for (size_t i = 0; i < mag.values.size(); ++i)
                        mag.values[i] += da.values[i] * da.values[i];
                }
                for (auto& v : mag.values) v = std::sqrt(v);
                return mag;
            }
        }
        return u;
    }
};

/// Optional mixed-norm specification L_q(w1 dt; L_{p,w2}(dx)).
struct MixedNormSpec {
    double q = 2.0;
    Weight time_weight = Weight::constant();
    Weight space_weight = Weight::constant();
};

namespace detail {

/// Space-time L_p by the trapezoid rule on the stored mesh; `left` and
/// `right` hold the one-sided values per interval endpoint (equal sequences
/// for continuous integrands).
inline double spacetime_lp(const std::vector<double>& times, const std::vector<GridField>& left,
                           const std::vector<GridField>& right, double p, const Weight& sw) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < times.size(); ++i) {
        const double dt = times[i + 1] - times[i];
        acc += 0.5 * dt *
               (std::pow(lp_norm(left[i], p, sw), p) + std::pow(lp_norm(right[i], p, sw), p));
    }
    return std::pow(acc, 1.0 / p);
}

/// Mixed norm: exact time-weight cells around the stored nodes, node values.
inline double spacetime_mixed(const std::vector<double>& times, const std::vector<GridField>& nodes,
                              double p, const MixedNormSpec& mix) {
    double acc = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        const double lo = (i == 0) ? times.front() : 0.5 * (times[i - 1] + times[i]);
        const double hi = (i + 1 == times.size()) ? times.back() : 0.5 * (times[i] + times[i + 1]);
        const double wcell = weight_cell_integral(mix.time_weight, lo, hi);
        acc += wcell * std::pow(lp_norm(nodes[i], p, mix.space_weight), mix.q);
    }
    return std::pow(acc, 1.0 / mix.q);
}

}  // namespace detail

struct RatioReport {
    double dt_ratio = 0.0;      // ||du/dt|| / ||f||
    double comp_ratio = 0.0;    // ||L_comp u|| / ||f||
    double lambda_ratio = 0.0;  // lambda ||u|| / ||f||
    double f_norm = 0.0;
};

/// A-priori estimate ratios over the stored trajectory. Unweighted L_p via
/// trapezoid; pass `mixed` for the weighted mixed-norm variant.
inline RatioReport apriori_ratio(const Trajectory& traj, const EvolutionProblem& p,
                                 const ComparisonOp& comp, double pnorm,
                                 const MixedNormSpec* mixed = nullptr) {
    detail::SolverWorkspace ws(p, 1);
    const size_t S = traj.times.size();
    if (S < 2) throw std::invalid_argument("apriori_ratio: trajectory too short");

    // du/dt per interval endpoint from the exact formula du/dt = (m - lambda) u + f
    std::vector<GridField> dt_left, dt_right, comp_nodes;
    std::vector<GridField> dt_nodes;  // right-derivative at nodes (mixed norms)
    for (size_t i = 0; i + 1 < S; ++i) {
        const double mid = 0.5 * (traj.times[i] + traj.times[i + 1]);
        size_t mp = 0;
        for (size_t q = 0; q < p.measure.schedule.size(); ++q)
            if (mid >= p.measure.schedule[q].t_a && mid < p.measure.schedule[q].t_b) mp = q;
        const auto& mv = ws.m_vals[mp];
        const auto& fs = ws.f_specs[p.forcing.piece_at(mid)];
        auto deriv = [&](const std::vector<cdouble>& uspec) {
            std::vector<cdouble> d(uspec.size());
            for (size_t k = 0; k < uspec.size(); ++k)
                d[k] = (mv[k] - p.lambda) * uspec[k] + fs[k];
            return inverse_transform_real(ws.dim, ws.n, std::move(d));
        };
        dt_left.push_back(deriv(traj.spectra[i]));
        dt_right.push_back(deriv(traj.spectra[i + 1]));
    }
    for (size_t i = 0; i < S; ++i) comp_nodes.push_back(comp.apply(traj.states[i]));
    for (size_t i = 0; i + 1 < S; ++i) dt_nodes.push_back(dt_left[i]);
    dt_nodes.push_back(dt_right.back());

    RatioReport rep;
    if (mixed) {
        std::vector<GridField> f_nodes;
        for (size_t i = 0; i < S; ++i) {
            const double t = std::min(traj.times[i], p.horizon() * (1.0 - 1e-15));
            f_nodes.push_back(p.forcing.pieces[p.forcing.piece_at(t)]);
        }
        rep.f_norm = detail::spacetime_mixed(traj.times, f_nodes, pnorm, *mixed);
        if (!(rep.f_norm > 0.0)) throw std::invalid_argument("apriori_ratio: ||f|| = 0");
        rep.dt_ratio = detail::spacetime_mixed(traj.times, dt_nodes, pnorm, *mixed) / rep.f_norm;
        rep.comp_ratio = detail::spacetime_mixed(traj.times, comp_nodes, pnorm, *mixed) / rep.f_norm;
        rep.lambda_ratio =
            p.lambda * detail::spacetime_mixed(traj.times, traj.states, pnorm, *mixed) / rep.f_norm;
        return rep;
    }
    // ||f|| is exact for piecewise-constant forcing
    double facc = 0.0;
    for (size_t i = 0; i + 1 < p.forcing.mesh.size(); ++i)
        facc += (p.forcing.mesh[i + 1] - p.forcing.mesh[i]) *
                std::pow(lp_norm(p.forcing.pieces[i], pnorm), pnorm);
    rep.f_norm = std::pow(facc, 1.0 / pnorm);
    if (!(rep.f_norm > 0.0)) throw std::invalid_argument("apriori_ratio: ||f|| = 0");
    const Weight cw = Weight::constant();
    rep.dt_ratio = detail::spacetime_lp(traj.times, dt_left, dt_right, pnorm, cw) / rep.f_norm;
    rep.comp_ratio = detail::spacetime_lp(traj.times, comp_nodes, comp_nodes, pnorm, cw) / rep.f_norm;
    rep.lambda_ratio =
        p.lambda * detail::spacetime_lp(traj.times, traj.states, traj.states, pnorm, cw) / rep.f_norm;
    return rep;
}

// ---------------------------------------------------------------------------
// exact space-time L2 norms (Plancherel route, no quadrature error)
// ---------------------------------------------------------------------------

struct ExactL2Report {
    double norm_u = 0.0;
    double norm_dtu = 0.0;
    double norm_comp = 0.0;  // || multiplier . u ||
    double norm_f = 0.0;
};

/// Closed-form space-time L2 norms of u, du/dt, c(xi) u and f over [0, T];
/// exact per mode and per interval, used for the p = 2 certified bounds.
inline ExactL2Report exact_l2_norms(const EvolutionProblem& p, const ComparisonOp& comp) {
    detail::SolverWorkspace ws(p, 1);
    std::vector<double> cmult(ws.modes);
    for (size_t k = 0; k < ws.modes; ++k)
        cmult[k] = comp.abs_multiplier(lattice_freq_vec(k, ws.dim, ws.n), ws.dim);

    double acc_u = 0.0, acc_du = 0.0, acc_c = 0.0, acc_f = 0.0;
    std::vector<cdouble> u(ws.modes, cdouble{0.0, 0.0});
    for (size_t i = 0; i + 1 < ws.times.size(); ++i) {
        const double dt = ws.times[i + 1] - ws.times[i];
        const auto& mv = ws.m_vals[ws.measure_piece[i]];
        const auto& fs = ws.f_specs[ws.forcing_piece[i]];
        for (size_t k = 0; k < ws.modes; ++k) {
            const cdouble z = mv[k] - p.lambda;
            const double l2 = detail::mode_interval_l2sq(u[k], fs[k], z, dt);
            acc_u += l2;
            acc_c += cmult[k] * cmult[k] * l2;
            acc_du += detail::mode_interval_dt_l2sq(u[k], fs[k], z, dt);
            acc_f += std::norm(fs[k]) * dt;
            u[k] = std::exp(z * dt) * u[k] + dt * detail::phi1(z * dt) * fs[k];
        }
    }
    const double cell = std::pow(2.0 * pi / ws.n, ws.dim) / double(ws.modes);
    ExactL2Report rep;
    rep.norm_u = std::sqrt(acc_u * cell);
    rep.norm_dtu = std::sqrt(acc_du * cell);
    rep.norm_comp = std::sqrt(acc_c * cell);
    rep.norm_f = std::sqrt(acc_f * cell);
    return rep;
}

}  // namespace nlevy

#endif
