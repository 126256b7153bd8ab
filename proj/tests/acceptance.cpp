// Acceptance suite: one check per criterion, each printing a pass/fail line.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlevy/maximal.hpp>
#include <nlevy/measure.hpp>
#include <nlevy/norms.hpp>
#include <nlevy/solver.hpp>
#include <nlevy/symbol.hpp>
#include <nlevy/verify.hpp>

#include "oracles.hpp"

using namespace nlevy;

namespace {

struct Criterion {
    std::string label;
    std::function<bool(std::string&)> run;
};

GridField cosine_field(int n, int mode, double amp = 1.0) {
    GridField u(1, n);
    for (int j = 0; j < n; ++j) u.values[j] = amp * std::cos(mode * u.spacing() * j);
    return u;
}

double rel_l2(const GridField& a, const GridField& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
        den += b.values[i] * b.values[i];
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

// ---------------------------------------------------------------- 1
bool criterion_assumptions(std::string& note) {
    const auto radial = LevyMeasure::radial_density(1, 1.0, 1.0);
    const auto axis = LevyMeasure::axis_stable(2, 1.0, 1.0);
    const auto comb = LevyMeasure::dyadic_comb(1, 1.0, -30, 30);
    bool ok = true;
    for (const auto& m : {radial, axis, comb}) {
        const AssumptionReport r = check_assumptions(m);
        ok = ok && r.lambda_finite() && r.nondegen_hat > 0.0 && r.cancellation_max < 1e-10;
    }
    const double lam = check_assumptions(comb).lambda_hat;
    ok = ok && std::abs(lam - 4.0) <= 1e-6;
    note = "comb lambda_hat = " + std::to_string(lam);
    return ok;
}

// ---------------------------------------------------------------- 2
bool criterion_symbol_bounds(std::string& note) {
    const auto radial = LevyMeasure::radial_density(1, 1.0, 1.0);
    const auto axis = LevyMeasure::axis_stable(2, 1.0, 1.0);
    const auto comb = LevyMeasure::dyadic_comb(1, 1.0, -30, 30);
    bool ok = true;
    for (const auto& m : {radial, axis, comb}) {
        const auto up = certify_upper_bound(m);
        const auto lo = certify_lower_bound(m);
        ok = ok && up.finite && lo.positive && lo.chain_ok;
    }
    const auto up_r = certify_upper_bound(radial);
    const auto lo_r = certify_lower_bound(radial);
    ok = ok && std::abs(up_r.constant - pi) <= 1e-8 && std::abs(lo_r.constant - pi) <= 1e-8;
    note = "radial constants " + std::to_string(up_r.constant) + " / " +
           std::to_string(lo_r.constant);
    return ok;
}

// ---------------------------------------------------------------- 3
bool criterion_oracle_equivalence(std::string& note) {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    auto check_measure = [&](const LevyMeasure& m, int dim, int n, int fields) {
        for (int i = 0; i < fields; ++i) {
            const GridField u = random_band_limited(dim, n, n / 4, rng);
            const GridField direct = apply_levy_direct(u, m);
            const GridField mult = apply_multiplier(u, [&](const Vec& f) {
                return norm(f, dim) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(m, f);
            });
            worst = std::max(worst, rel_l2(direct, mult));
        }
    };
    check_measure(LevyMeasure::dyadic_comb(1, 0.5, -30, 0), 1, 256, 20);
    check_measure(LevyMeasure::atoms(1, 1.5,
                                     {{vec1(0.9), 1.0},
                                      {vec1(-0.9), 1.0},
                                      {vec1(0.37), 0.5},
                                      {vec1(-0.37), 0.5}}),
                  1, 256, 20);
    check_measure(LevyMeasure::dyadic_comb(2, 1.0, -16, 0), 2, 64, 20);
    check_measure(LevyMeasure::atoms(2, 0.5,
                                     {{vec2(0.5, 0.2), 1.0},
                                      {vec2(-0.5, -0.2), 1.0},
                                      {vec2(0.1, -0.6), 0.7},
                                      {vec2(-0.1, 0.6), 0.7}}),
                  2, 64, 20);
    note = "worst relative L2 deviation " + std::to_string(worst);
    return worst < 1e-8;
}

// ---------------------------------------------------------------- 4
bool criterion_solver_exactness(std::string& note) {
    EvolutionProblem p;
    p.measure =
        TimeDependentMeasure::constant(LevyMeasure::fractional_laplacian_measure(1, 1.0), 1.0);
    p.forcing = PiecewiseForcing::constant(cosine_field(64, 2), 1.0);
    const Trajectory traj = solve(p, 16);
    double closed_form_err = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const GridField want = cosine_field(64, 2, (1.0 - std::exp(-2.0 * traj.times[i])) / 2.0);
        for (int j = 0; j < 64; ++j)
            closed_form_err =
                std::max(closed_form_err, std::abs(traj.states[i].values[j] - want.values[j]));
    }
    const double res = residual(traj, p);

    // linearity over random forcings
    std::mt19937_64 rng(7);
    EvolutionProblem pa = p, pb = p, pab = p;
    pa.forcing = PiecewiseForcing::constant(random_band_limited(1, 64, 8, rng), 1.0);
    pb.forcing = PiecewiseForcing::constant(random_band_limited(1, 64, 8, rng), 1.0);
    GridField fsum = pa.forcing.pieces[0];
    for (int j = 0; j < 64; ++j) fsum.values[j] += pb.forcing.pieces[0].values[j];
    pab.forcing = PiecewiseForcing::constant(fsum, 1.0);
    const Trajectory ta = solve(pa, 8), tb = solve(pb, 8), tab = solve(pab, 8);
    double lin_err = 0.0;
    for (size_t i = 0; i < ta.times.size(); ++i)
        for (int j = 0; j < 64; ++j)
            lin_err = std::max(lin_err, std::abs(tab.states[i].values[j] - ta.states[i].values[j] -
                                                 tb.states[i].values[j]));

    note = "closed-form err " + std::to_string(closed_form_err) + ", residual " +
           std::to_string(res) + ", linearity " + std::to_string(lin_err);
    return closed_form_err < 1e-10 && res < 1e-8 && lin_err < 1e-10;
}

// ---------------------------------------------------------------- 5
bool criterion_estimate_sweep(std::string& note) {
    SweepConfig cfg;  // defaults: 3 measures, lambdas {0,1,10,100}, n {64,128,256},
                      // p {2,1.5,4}, 10 seeds, Plancherel-certified p = 2 bounds
    const ExperimentReport rep = estimate_sweep(cfg);
    note = rep.summary.empty() ? "" : rep.summary.front();
    return rep.pass;
}

// ---------------------------------------------------------------- 6
bool criterion_weighted_sweep(std::string& note) {
    SweepConfig cfg;
    cfg.weighted = true;
    cfg.sigma = 1.5;
    cfg.p_values = {2.0, 4.0};
    cfg.q = 2.0;
    cfg.time_exponent = 0.5;
    cfg.space_exponent = 0.5;
    cfg.seeds = 5;
    const ExperimentReport rep = estimate_sweep(cfg);
    bool rejected = false;
    try {
        SweepConfig bad = cfg;
        bad.space_exponent = 1.1;  // outside A_2 for the inner norm
        estimate_sweep(bad);
    } catch (const std::invalid_argument&) {
        rejected = true;
    }
    note = std::string(rep.pass ? "weighted slopes in band" : "weighted slopes out of band") +
           (rejected ? "; out-of-range weight rejected" : "; out-of-range weight NOT rejected");
    return rep.pass && rejected;
}

// ---------------------------------------------------------------- 7
bool criterion_counterexample(std::string& note) {
    CounterexampleConfig cfg;  // d=1, sigma=0.5, p=4, l=2.5, shells to K=20
    const ExperimentReport geometric = counterexample_run(cfg);
    CounterexampleConfig lin = cfg;
    lin.l = 2.0;
    const ExperimentReport borderline = counterexample_run(lin);
    note = geometric.summary.empty() ? "" : geometric.summary.front();
    return geometric.pass && borderline.pass;
}

// ---------------------------------------------------------------- 8
bool criterion_maximal_boundedness(std::string& note) {
    std::mt19937_64 rng(33);
    bool ok = true;
    double worst_slope = 0.0;
    for (double sigma : {0.5, 1.0, 1.5}) {
        const auto comb = LevyMeasure::dyadic_comb(1, sigma, -30, 0);
        std::vector<GridField> ensemble;
        for (int i = 0; i < 20; ++i) ensemble.push_back(random_band_limited(1, 256, 32, rng));
        const auto mb =
            maximal_boundedness(comb, 2.0, {0.5, 0.25, 0.125, 0.0625}, ensemble, 0.2);
        ok = ok && mb.pass;
        worst_slope = std::max(worst_slope, std::abs(mb.trend_slope));

        // pointwise tail-vs-maximal with a single uniform constant per measure
        TailOperatorSpec spec{comb, 2.0, 0.25, 2.0 * pi * 0.125};
        double uniform_n = 0.0, bound = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto r = verify_tail_vs_maximal(ensemble[i], spec);
            uniform_n = std::max(uniform_n, r.empirical_n);
            bound = r.holder_n;
            ok = ok && r.pass;
        }
        ok = ok && uniform_n <= bound * (1.0 + 1e-9);
    }
    note = "worst kappa-trend slope " + std::to_string(worst_slope);
    return ok;
}

// ---------------------------------------------------------------- 9
bool criterion_tail_conditions(std::string& note) {
    const auto comb = LevyMeasure::dyadic_comb(1, 0.5, -30, 30);
    const auto radial = LevyMeasure::radial_density(1, 1.0, 1.0);
    const auto rc = verify_tail_measure_conditions(comb, -5, 5);
    const auto rr = verify_tail_measure_conditions(radial, -5, 5);
    note = "uniform constants " + std::to_string(rc.constant) + " (comb), " +
           std::to_string(rr.constant) + " (radial)";
    return rc.finite && rr.finite && rc.constant < 100.0 && rr.constant < 100.0 &&
           rc.uniformity < 3.0 && rr.uniformity < 3.0;
}

// ---------------------------------------------------------------- 10
bool criterion_montecarlo(std::string& note) {
    // single symmetric pair against the Poisson characteristic function
    GridField cosf = cosine_field(256, 3);
    MonteCarloConfig pair_cfg;
    pair_cfg.measure = LevyMeasure::atoms(1, 0.5, {{vec1(0.8), 1.2}, {vec1(-0.8), 1.2}});
    pair_cfg.t = 0.2;
    pair_cfg.samples = 100000;
    pair_cfg.seed = 424242;
    const MonteCarloReport pair = montecarlo_check(pair_cfg, cosf);
    const double decay = std::exp(2.0 * 1.2 * pair_cfg.t * (std::cos(3.0 * 0.8) - 1.0));
    bool pair_ok = pair.pass;
    for (size_t q = 0; q < pair.probe_x.size(); ++q) {
        const double want = decay * std::cos(3.0 * pair.probe_x[q]);
        pair_ok = pair_ok && std::abs(pair.spectral[q] - want) < 1e-12 &&
                  std::abs(pair.mc_mean[q] - want) <= 3.0 * pair.mc_se[q] + 1e-12;
    }

    // truncated comb, spectral vs MC at two sample counts
    std::mt19937_64 rng(9);
    const GridField u0 = random_band_limited(1, 256, 8, rng);
    MonteCarloConfig comb_cfg;
    comb_cfg.measure = LevyMeasure::dyadic_comb(1, 1.0, 0, 3);
    comb_cfg.t = 0.1;
    comb_cfg.seed = 31337;
    comb_cfg.samples = 1000;
    const MonteCarloReport coarse = montecarlo_check(comb_cfg, u0);
    comb_cfg.samples = 100000;
    const MonteCarloReport fine = montecarlo_check(comb_cfg, u0);
    const bool shrink = coarse.max_abs_err >= 5.0 * fine.max_abs_err;

    note = "pair 3SE ok=" + std::to_string(int(pair_ok)) +
           ", comb 3SE ok=" + std::to_string(int(fine.pass)) + ", err " +
           std::to_string(coarse.max_abs_err) + " -> " + std::to_string(fine.max_abs_err);
    return pair_ok && fine.pass && shrink;
}

// ---------------------------------------------------------------- 11
bool criterion_brute_force(std::string& note) {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> mag(0.1, 4.0), w(0.2, 3.0), c(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 1 + trial % 3;
        std::vector<Atom> list;
        const int count = 2 + trial % 9;
        for (int i = 0; i < count; ++i) {
            Vec y{};
            double nn = 0.0;
            while (nn == 0.0) {
                for (int a = 0; a < dim; ++a) y[a] = c(rng);
                nn = norm(y, dim);
            }
            list.push_back({scale(y, mag(rng) / nn), w(rng)});
        }
        const double sigma = 0.35 + 0.15 * trial;  // asymmetric sets: stay off sigma = 1
        const auto m = LevyMeasure::atoms(dim, sigma, list);
        const auto atoms = enumerate_atoms(m);
        const double r = mag(rng);
        Vec xi{};
        for (int a = 0; a < dim; ++a) xi[a] = c(rng) + 0.1;
        worst = std::max(worst, rel_err(tail_mass(m, r), oracles::tail_mass_atoms(atoms, dim, r)));
        worst = std::max(worst, rel_err(truncated_moment(m, sigma * 0.5, r, Region::Outside),
                                        oracles::moment_atoms(atoms, dim, sigma * 0.5, r, true)));
        worst = std::max(worst, rel_err(truncated_moment(m, sigma + 1.0, r, Region::Inside),
                                        oracles::moment_atoms(atoms, dim, sigma + 1.0, r, false)));
        worst = std::max(worst, rel_err(nondegeneracy_functional(m, xi),
                                        oracles::nondegen_atoms(atoms, dim, xi)));
        const cdouble sa = symbol_eval(m, xi);
        const cdouble sb = oracles::symbol_atoms(atoms, dim, sigma, xi);
        worst = std::max(worst, std::abs(sa - sb) / std::max(1.0, std::abs(sb)));
    }

    // maximal operators on a 64-point lattice against the triple loops
    const auto comb = LevyMeasure::dyadic_comb(1, 0.5, -10, 0);
    const auto atoms = enumerate_atoms(comb);
    const GridField u = random_band_limited(1, 64, 16, rng);
    TailOperatorSpec spec{comb, 2.0, 0.25, 0.7};
    const GridField tail = tail_operator_field(u, spec);
    const GridField maxi = maximal_T(u, comb, 0.25);
    for (int j = 0; j < 64; ++j) {
        worst = std::max(worst, rel_err(tail.values[j], oracles::tail_operator_bf(
                                                            u, atoms, 0.5, 2.0, 0.25, 0.7, j)));
        worst = std::max(
            worst,
            rel_err(maxi.values[j], oracles::maximal_T_bf(u, atoms, 0.5, 0.25, default_r_grid(), j)));
    }
    note = "worst relative deviation " + std::to_string(worst);
    return worst <= 1e-12;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 assumption certification", criterion_assumptions},
        {"2 symbol bounds", criterion_symbol_bounds},
        {"3 operator oracle equivalence", criterion_oracle_equivalence},
        {"4 solver exactness", criterion_solver_exactness},
        {"5 estimate sweep", criterion_estimate_sweep},
        {"6 weighted sweep", criterion_weighted_sweep},
        {"7 counterexample", criterion_counterexample},
        {"8 maximal boundedness", criterion_maximal_boundedness},
        {"9 tail-measure Fourier conditions", criterion_tail_conditions},
        {"10 Monte Carlo correspondence", criterion_montecarlo},
        {"11 brute-force oracles", criterion_brute_force},
    };
    int failures = 0;
    for (auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.label.c_str(),
                    secs, note.empty() ? "" : " - ", note.c_str());
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
