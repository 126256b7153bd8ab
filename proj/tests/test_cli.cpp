// End-to-end checks of the command-line tool: exit codes, file outputs and
// byte-identical reruns. The binary path comes from the build system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef NLEVY_CLI_PATH
#error "NLEVY_CLI_PATH must be defined by the build"
#endif

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "nlevy_cli_tests";

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << text;
}

int run(const std::string& args) {
    const std::string cmd = std::string(NLEVY_CLI_PATH) + " " + args + " > " +
                            (work / "stdout.txt").string() + " 2> " +
                            (work / "stderr.txt").string();
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("validate: pass, fail and config-error exit codes") {
    fs::create_directories(work);
    write_file(work / "comb.json",
               R"({"measure": {"kind": "dyadic_comb", "sigma": 1.0, "dim": 1,
                   "k_min": -30, "k_max": 30}})");
    CHECK(run("validate --config " + (work / "comb.json").string()) == 0);

    write_file(work / "single.json",
               R"({"measure": {"kind": "atoms", "sigma": 1.0, "dim": 1,
                   "atoms": [[1.0, 1.0]]}})");
    CHECK(run("validate --config " + (work / "single.json").string()) == 1);

    write_file(work / "broken.json", "{ not json");
    CHECK(run("validate --config " + (work / "broken.json").string()) == 2);

    write_file(work / "unknown.json",
               R"({"measure": {"kind": "dyadic_comb", "sigma": 1.0, "dim": 1,
                   "k_min": -3, "k_max": 3, "wat": 1}})");
    CHECK(run("validate --config " + (work / "unknown.json").string()) == 2);

    CHECK(run("validate --config " + (work / "does_not_exist.json").string()) == 2);
}

TEST_CASE("symbol: table emitted, constants printed") {
    write_file(work / "radial.json",
               R"({"measure": {"kind": "radial_density", "sigma": 1.0, "dim": 1, "c": 1.0}})");
    const fs::path out = work / "symbol_out";
    CHECK(run("symbol --config " + (work / "radial.json").string() + " --out " + out.string()) ==
          0);
    CHECK(fs::exists(out / "symbol.csv"));
    const std::string text = slurp(work / "stdout.txt");
    CHECK(text.find("3.14159") != std::string::npos);

    // a single symmetric pair passes on the default grid but degenerates at
    // the cosine zero xi = 2 pi: a one-point grid there is degenerate but
    // valid, and the nondegeneracy check fails -> exit 1
    write_file(work / "pair.json",
               R"({"measure": {"kind": "atoms", "sigma": 0.5, "dim": 1,
                   "atoms": [[1.0, 1.0], [-1.0, 1.0]]}})");
    CHECK(run("symbol --config " + (work / "pair.json").string() + " --out " + out.string()) == 0);

    write_file(work / "pair_zero.json",
               R"({"measure": {"kind": "atoms", "sigma": 0.5, "dim": 1,
                   "atoms": [[1.0, 1.0], [-1.0, 1.0]]},
                   "xi_grid": {"log2_min": 2.6514961294723187,
                               "log2_max": 2.6514961294723187, "points": 1}})");
    CHECK(run("symbol --config " + (work / "pair_zero.json").string() + " --out " +
              out.string()) == 1);
}

TEST_CASE("solve: trajectory, manifest, residual gate") {
    write_file(work / "solve.json", R"({
        "measure": {"kind": "fractional", "sigma": 1.0, "dim": 1},
        "horizon_t": 1.0, "lambda": 0.0, "n": 64, "dim": 1,
        "forcing": {"type": "single_mode", "mode": 2, "amplitude": 1.0},
        "substeps": 4, "p": 2.0})");
    const fs::path out = work / "solve_out";
    CHECK(run("solve --config " + (work / "solve.json").string() + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "trajectory.csv"));
    CHECK(fs::exists(out / "manifest.json"));

    // zero forcing solves to the zero trajectory
    write_file(work / "solve0.json", R"({
        "measure": {"kind": "fractional", "sigma": 1.0, "dim": 1},
        "horizon_t": 1.0, "lambda": 0.0, "n": 32, "dim": 1,
        "forcing": {"type": "zero"}, "substeps": 2, "p": 2.0})");
    CHECK(run("solve --config " + (work / "solve0.json").string() + " --out " + out.string()) == 0);

    // invalid measure: parses fine, fails the assumption gate -> exit 1
    write_file(work / "solve_bad.json", R"({
        "measure": {"kind": "atoms", "sigma": 1.0, "dim": 1, "atoms": [[1.0, 1.0]]},
        "horizon_t": 1.0, "lambda": 0.0, "n": 32, "dim": 1,
        "forcing": {"type": "zero"}, "substeps": 2, "p": 2.0})");
    CHECK(run("solve --config " + (work / "solve_bad.json").string() + " --out " + out.string()) ==
          1);
}

TEST_CASE("experiment: dispatch, unknown name, determinism, plots") {
    write_file(work / "ce.json",
               R"({"l": 2.5, "p": 4.0, "sigma": 0.5, "dim": 1, "k_max_shell": 14})");
    const fs::path out = work / "exp_out";
    CHECK(run("experiment counterexample --config " + (work / "ce.json").string() + " --out " +
              out.string() + " --plots") == 0);
    CHECK(fs::exists(out / "counterexample.csv"));
    CHECK(fs::exists(out / "partial_sums.svg"));

    CHECK(run("experiment nonsense --config " + (work / "ce.json").string()) == 2);

    // out-of-range exponent: config error
    write_file(work / "ce_bad.json",
               R"({"l": 3.5, "p": 4.0, "sigma": 0.5, "dim": 1, "k_max_shell": 14})");
    CHECK(run("experiment counterexample --config " + (work / "ce_bad.json").string()) == 2);

    write_file(work / "mc.json", R"({
        "measure": {"kind": "dyadic_comb", "sigma": 1.0, "dim": 1, "k_min": 0, "k_max": 3},
        "t": 0.05, "samples": 4000, "seed": 5, "probe_points": 4, "n": 128, "max_mode": 4})");
    const fs::path o1 = work / "mc1", o2 = work / "mc2";
    CHECK(run("experiment montecarlo --config " + (work / "mc.json").string() + " --out " +
              o1.string()) == 0);
    CHECK(run("experiment montecarlo --config " + (work / "mc.json").string() + " --out " +
              o2.string()) == 0);
    CHECK(slurp(o1 / "montecarlo.csv") == slurp(o2 / "montecarlo.csv"));
}
