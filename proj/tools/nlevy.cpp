// Command-line front end: validate measures, tabulate symbols, run solves and
// the verification experiments. Exit codes: 0 pass, 1 computed-but-failed,
// 2 usage or config error.

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include <nlevy/config.hpp>
#include <nlevy/maximal.hpp>
#include <nlevy/measure.hpp>
#include <nlevy/norms.hpp>
#include <nlevy/report.hpp>
#include <nlevy/solver.hpp>
#include <nlevy/symbol.hpp>
#include <nlevy/verify.hpp>

#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace nlevy;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 0;  // 0 = keep the config's seed
    bool plots = false;
};

json load(const CliOptions& opt) { return load_config(opt.config_path); }

std::string out_path(const CliOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    return (fs::path(opt.out_dir) / name).string();
}

TimeDependentMeasure measure_or_schedule(const json& j, double horizon) {
    if (j.contains("schedule")) return parse_schedule(j.at("schedule"));
    if (j.contains("measure"))
        return TimeDependentMeasure::constant(parse_measure(j.at("measure")), horizon);
    throw ConfigError("config needs 'measure' or 'schedule'");
}

int cmd_validate(const CliOptions& opt) {
    const json j = load(opt);
    cfg_detail::require_keys(j, {"measure", "schedule", "r_grid", "xi_grid", "horizon_t"},
                             "validate");
    const double horizon = cfg_detail::get_or(j, "horizon_t", 1.0);
    const TimeDependentMeasure tdm = measure_or_schedule(j, horizon);
    const auto r_grid =
        j.contains("r_grid") ? parse_log_grid(j.at("r_grid"), "r_grid") : default_log_grid();
    const auto xi_grid =
        j.contains("xi_grid") ? parse_log_grid(j.at("xi_grid"), "xi_grid") : default_log_grid();
    const AssumptionReport rep = check_assumptions(tdm, r_grid, xi_grid);
    std::printf("lambda_hat        = %.12g (at r = %.6g)\n", rep.lambda_hat, rep.lambda_arg_r);
    std::printf("nondegen_hat      = %.12g\n", rep.nondegen_hat);
    std::printf("cancellation_max  = %.12g%s\n", rep.cancellation_max,
                rep.sigma == 1.0 ? "" : " (not binding, sigma != 1)");
    std::printf("tail bound: %s, nondegeneracy: %s, cancellation: %s\n",
                rep.lambda_finite() ? "ok" : "FAIL", rep.nondegen_pass() ? "ok" : "FAIL",
                rep.cancellation_pass() ? "ok" : "FAIL");
    std::printf("overall: %s\n", rep.pass() ? "PASS" : "FAIL");
    return rep.pass() ? 0 : 1;
}

int cmd_symbol(const CliOptions& opt) {
    const json j = load(opt);
    cfg_detail::require_keys(j, {"measure", "xi_grid"}, "symbol");
    const LevyMeasure m = parse_measure(j.at("measure"));
    const auto xi_grid =
        j.contains("xi_grid") ? parse_log_grid(j.at("xi_grid"), "xi_grid") : default_log_grid();

    const auto up = certify_upper_bound(m, xi_grid);
    const auto lo = certify_lower_bound(m, xi_grid);

    ExperimentReport rep;
    rep.id = "symbol";
    rep.set_meta("sigma", m.sigma);
    rep.set_meta("dim", double(m.dim));
    rep.set_meta("upper_constant", up.constant);
    rep.set_meta("lower_constant", lo.constant);
    rep.columns = {"xi_1", "xi_2", "xi_3", "re_m", "im_m", "ratio_upper", "ratio_lower"};
    for (const Vec& dir : detail::probe_directions(m.dim))
        for (double t : xi_grid) {
            const Vec xi = scale(dir, t);
            const cdouble mv = symbol_eval(m, xi);
            const double pw = std::pow(t, m.sigma);
            rep.add_row({xi[0], xi[1], xi[2], mv.real(), mv.imag(), std::abs(mv) / pw,
                         -mv.real() / pw});
        }
    rep.write_csv(out_path(opt, "symbol.csv"));
    std::printf("sup |m|/|xi|^s  = %.12g at |xi| = %.6g\n", up.constant, norm(up.arg_xi, m.dim));
    std::printf("inf -Re m/|xi|^s = %.12g at |xi| = %.6g\n", lo.constant, norm(lo.arg_xi, m.dim));
    std::printf("pointwise chain -Re m >= N(xi)/3: %s (margin %.3g)\n",
                lo.chain_ok ? "ok" : "FAIL", lo.chain_margin);
    const bool pass = up.finite && lo.positive && lo.chain_ok;
    std::printf("overall: %s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

int cmd_solve(const CliOptions& opt) {
    const json j = load(opt);
    cfg_detail::require_keys(j,
                             {"measure", "schedule", "horizon_t", "lambda", "n", "dim", "forcing",
                              "substeps", "p", "comparison"},
                             "solve");
    const double horizon = cfg_detail::get<double>(j, "horizon_t", "solve");
    EvolutionProblem prob;
    prob.measure = measure_or_schedule(j, horizon);
    prob.lambda = cfg_detail::get_or(j, "lambda", 0.0);
    const int dim = cfg_detail::get_or(j, "dim", 1);
    const int default_n = dim == 1 ? 256 : dim == 2 ? 128 : 32;
    const int n = cfg_detail::get_or(j, "n", default_n);
    prob.forcing = parse_forcing(j.at("forcing"), dim, n, horizon, opt.seed);

    for (const auto& piece : prob.measure.schedule) {
        if (!check_assumptions(piece.measure).pass()) {
            std::printf("measure fails the assumption check; not solving\n");
            return 1;
        }
        if (is_atomic(piece.measure) && atoms_alias_domain(piece.measure, dim))
            std::printf("warning: atom shifts beyond the half-period alias the measure "
                        "on this domain\n");
    }
    const int substeps = cfg_detail::get_or(j, "substeps", 8);
    const Trajectory traj = solve(prob, substeps, /*check=*/false);
    const double res = residual(traj, prob);

    // exports: one row per stored time (d = 1), or binary snapshots
    if (dim == 1) {
        std::FILE* f = std::fopen(out_path(opt, "trajectory.csv").c_str(), "wb");
        std::fprintf(f, "t");
        for (int k = 0; k < n; ++k) std::fprintf(f, ",x%d", k);
        std::fprintf(f, "\n");
        for (size_t i = 0; i < traj.times.size(); ++i) {
            std::fprintf(f, "%.17g", traj.times[i]);
            for (int k = 0; k < n; ++k) std::fprintf(f, ",%.17g", traj.states[i].values[k]);
            std::fprintf(f, "\n");
        }
        std::fclose(f);
    } else {
        for (size_t i = 0; i < traj.times.size(); ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "state_%04zu.bin", i);
            write_field_binary(traj.states[i], out_path(opt, name));
        }
    }

    const double pnorm = cfg_detail::get_or(j, "p", 2.0);
    ComparisonOp comp = ComparisonOp::fractional(prob.measure.sigma());
    if (j.contains("comparison")) {
        const json& cj = j.at("comparison");
        const std::string type = cfg_detail::get<std::string>(cj, "type", "comparison");
        if (type == "gradient")
            comp = ComparisonOp::gradient();
        else if (type == "fractional")
            comp = ComparisonOp::fractional(cfg_detail::get<double>(cj, "sigma", "comparison"));
        else if (type == "measure")
            comp = ComparisonOp::from_measure(parse_measure(cj.at("measure"), "comparison"));
        else
            throw ConfigError("comparison: unknown type " + type);
    }
    double f_mass = 0.0;
    for (const auto& piece : prob.forcing.pieces) f_mass += lp_norm(piece, pnorm);
    RatioReport rr;
    if (f_mass > 0.0) rr = apriori_ratio(traj, prob, comp, pnorm);

    json manifest;
    manifest["horizon_t"] = horizon;
    manifest["lambda"] = prob.lambda;
    manifest["n"] = n;
    manifest["dim"] = dim;
    manifest["sigma"] = prob.measure.sigma();
    manifest["times"] = traj.times;
    manifest["residual"] = res;
    manifest["p"] = pnorm;
    manifest["f_norm"] = rr.f_norm;
    manifest["dt_ratio"] = rr.dt_ratio;
    manifest["comp_ratio"] = rr.comp_ratio;
    manifest["lambda_ratio"] = rr.lambda_ratio;
    manifest["config"] = j;
    std::FILE* mf = std::fopen(out_path(opt, "manifest.json").c_str(), "wb");
    const std::string dumped = manifest.dump(2);
    std::fwrite(dumped.data(), 1, dumped.size(), mf);
    std::fclose(mf);

    std::printf("solved: %zu stored times, residual %.3g\n", traj.times.size(), res);
    std::printf("ratios: dt %.6g, comparison %.6g, lambda %.6g\n", rr.dt_ratio, rr.comp_ratio,
                rr.lambda_ratio);
    const bool pass = res < 1e-8;
    std::printf("overall: %s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

int cmd_experiment(const std::string& name, const CliOptions& opt) {
    const json j = load(opt);
    ExperimentReport rep;
    std::vector<nlevy_tools::Series> plot;
    std::string plot_name, plot_title;
    bool plot_logy = false;

    if (name == "estimate_sweep") {
        cfg_detail::require_keys(j,
                                 {"sigma", "dim", "measures", "resolutions", "lambdas", "p_values",
                                  "seeds", "seed0", "horizon_t", "forcing_pieces", "substeps",
                                  "slope_band", "weighted", "q", "time_exponent", "space_exponent",
                                  "comparison"},
                                 name);
        SweepConfig cfg;
        cfg.sigma = cfg_detail::get<double>(j, "sigma", name);
        cfg.dim = cfg_detail::get_or(j, "dim", 1);
        cfg.measures = cfg_detail::get_or(j, "measures", cfg.measures);
        cfg.resolutions = cfg_detail::get_or(j, "resolutions", cfg.resolutions);
        cfg.lambdas = cfg_detail::get_or(j, "lambdas", cfg.lambdas);
        cfg.p_values = cfg_detail::get_or(j, "p_values", cfg.p_values);
        cfg.seeds = cfg_detail::get_or(j, "seeds", cfg.seeds);
        cfg.seed0 = cfg_detail::get_or<uint64_t>(j, "seed0", cfg.seed0);
        if (opt.seed != 0) cfg.seed0 = opt.seed;
        cfg.horizon = cfg_detail::get_or(j, "horizon_t", cfg.horizon);
        cfg.forcing_pieces = cfg_detail::get_or(j, "forcing_pieces", cfg.forcing_pieces);
        cfg.substeps = cfg_detail::get_or(j, "substeps", cfg.substeps);
        cfg.slope_band = cfg_detail::get_or(j, "slope_band", cfg.slope_band);
        cfg.weighted = cfg_detail::get_or(j, "weighted", false);
        cfg.q = cfg_detail::get_or(j, "q", cfg.q);
        cfg.time_exponent = cfg_detail::get_or(j, "time_exponent", cfg.time_exponent);
        cfg.space_exponent = cfg_detail::get_or(j, "space_exponent", cfg.space_exponent);
        cfg.comparison = cfg_detail::get_or<std::string>(j, "comparison", cfg.comparison);
        rep = estimate_sweep(cfg);
        // plot: mean total ratio vs resolution, one series per p
        plot_name = "ratio_vs_resolution.svg";
        plot_title = "estimate ratio vs resolution";
        for (double pv : cfg.p_values) {
            nlevy_tools::Series s;
            s.label = "p = " + std::to_string(pv);
            for (int n : cfg.resolutions) {
                double acc = 0.0;
                long cnt = 0;
                for (const auto& row : rep.rows)
                    if (row[3] == double(n) && row[4] == pv) {
                        acc += row[8];
                        ++cnt;
                    }
                s.x.push_back(n);
                s.y.push_back(acc / std::max(1L, cnt));
            }
            plot.push_back(std::move(s));
        }
    } else if (name == "counterexample") {
        cfg_detail::require_keys(j, {"l", "p", "sigma", "dim", "k_max_shell"}, name);
        CounterexampleConfig cfg;
        cfg.l = cfg_detail::get<double>(j, "l", name);
        cfg.p = cfg_detail::get<double>(j, "p", name);
        cfg.sigma = cfg_detail::get<double>(j, "sigma", name);
        cfg.dim = cfg_detail::get_or(j, "dim", 1);
        cfg.k_max = cfg_detail::get_or(j, "k_max_shell", 20);
        rep = counterexample_run(cfg);
        plot_name = "partial_sums.svg";
        plot_title = "shell partial sums S_K";
        plot_logy = true;
        nlevy_tools::Series s;
        s.label = "S_K";
        for (const auto& row : rep.rows) {
            s.x.push_back(row[0]);
            s.y.push_back(row[2]);
        }
        plot.push_back(std::move(s));
    } else if (name == "montecarlo") {
        cfg_detail::require_keys(j, {"measure", "t", "samples", "seed", "probe_points", "n",
                                     "max_mode", "u0_seed"},
                                 name);
        MonteCarloConfig cfg;
        cfg.measure = parse_measure(j.at("measure"));
        cfg.t = cfg_detail::get_or(j, "t", 0.1);
        cfg.samples = cfg_detail::get_or<long>(j, "samples", 100000);
        cfg.seed = cfg_detail::get_or<uint64_t>(j, "seed", 1);
        if (opt.seed != 0) cfg.seed = opt.seed;
        cfg.probe_count = cfg_detail::get_or(j, "probe_points", 8);
        const int n = cfg_detail::get_or(j, "n", 256);
        const int max_mode = cfg_detail::get_or(j, "max_mode", 8);
        std::mt19937_64 rng(cfg_detail::get_or<uint64_t>(j, "u0_seed", 7));
        const GridField u0 = random_band_limited(1, n, max_mode, rng);
        rep = montecarlo_report(cfg, u0);
        plot_name = "mc_vs_spectral.svg";
        plot_title = "Monte Carlo vs Fourier semigroup";
        nlevy_tools::Series s1, s2;
        s1.label = "MC mean";
        s2.label = "spectral";
        for (const auto& row : rep.rows) {
            s1.x.push_back(row[0]);
            s1.y.push_back(row[1]);
            s2.x.push_back(row[0]);
            s2.y.push_back(row[3]);
        }
        plot.push_back(std::move(s1));
        plot.push_back(std::move(s2));
    } else if (name == "maximal_boundedness") {
        cfg_detail::require_keys(j,
                                 {"measure", "p", "kappas", "fields", "n", "max_mode", "seed",
                                  "slope_band", "surrogate"},
                                 name);
        MaximalExperimentConfig cfg;
        cfg.measure = parse_measure(j.at("measure"));
        cfg.p = cfg_detail::get_or(j, "p", 2.0);
        cfg.kappas = cfg_detail::get_or(j, "kappas", cfg.kappas);
        cfg.fields = cfg_detail::get_or(j, "fields", 20);
        cfg.n = cfg_detail::get_or(j, "n", 256);
        cfg.max_mode = cfg_detail::get_or(j, "max_mode", 32);
        cfg.seed = cfg_detail::get_or<uint64_t>(j, "seed", 1);
        if (opt.seed != 0) cfg.seed = opt.seed;
        cfg.slope_band = cfg_detail::get_or(j, "slope_band", 0.2);
        cfg.surrogate = cfg_detail::get_or(j, "surrogate", false);
        rep = maximal_experiment(cfg);
        plot_name = "ratio_vs_kappa.svg";
        plot_title = "||T_k u||_p / ||u||_p vs kappa";
        nlevy_tools::Series s1, s2;
        s1.label = "mean ratio";
        s2.label = "max ratio";
        for (double kappa : cfg.kappas) {
            double acc = 0.0, mx = 0.0;
            long cnt = 0;
            for (const auto& row : rep.rows)
                if (row[0] == kappa) {
                    acc += row[2];
                    mx = std::max(mx, row[2]);
                    ++cnt;
                }
            s1.x.push_back(std::log2(kappa));
            s1.y.push_back(acc / std::max(1L, cnt));
            s2.x.push_back(std::log2(kappa));
            s2.y.push_back(mx);
        }
        plot.push_back(std::move(s1));
        plot.push_back(std::move(s2));
    } else {
        std::fprintf(stderr, "unknown experiment '%s'\n", name.c_str());
        return 2;
    }

    rep.set_meta("config_file", opt.config_path);
    rep.set_meta("config", j.dump());
    rep.write_csv(out_path(opt, rep.id + ".csv"));
    std::fputs(rep.summary_text().c_str(), stdout);
    std::printf("wall time: %.2f s\n", rep.wall_seconds);
    if (opt.plots && !plot.empty())
        nlevy_tools::write_svg_plot(out_path(opt, plot_name), plot_title, plot, plot_logy);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal Levy operator toolkit"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string experiment_name;

    auto add_common = [&](CLI::App* sub, bool needs_name) {
        sub->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "seed override (0 keeps the config seed)");
        sub->add_flag("--plots", opt.plots, "emit SVG plots");
        if (needs_name)
            sub->add_option("name", experiment_name,
                            "estimate_sweep | counterexample | montecarlo | maximal_boundedness")
                ->required();
    };
    add_common(app.add_subcommand("validate", "check the measure assumptions"), false);
    add_common(app.add_subcommand("symbol", "tabulate the Fourier symbol and its bounds"), false);
    add_common(app.add_subcommand("solve", "solve the evolution problem"), false);
    add_common(app.add_subcommand("experiment", "run a verification experiment"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("validate")) return cmd_validate(opt);
        if (app.got_subcommand("symbol")) return cmd_symbol(opt);
        if (app.got_subcommand("solve")) return cmd_solve(opt);
        if (app.got_subcommand("experiment")) return cmd_experiment(experiment_name, opt);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
