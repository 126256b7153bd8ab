#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlevy/grid.hpp>
#include <nlevy/symbol.hpp>

#include "oracles.hpp"

using namespace nlevy;

namespace {

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

}  // namespace

TEST_CASE("fft against the naive DFT, round trip, Parseval") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    GridField u(1, 64);
    for (auto& v : u.values) v = g(rng);

    const auto spec = forward_transform(u);
    const auto want = oracles::naive_dft_1d(u.values);
    for (int k = 0; k < 64; ++k)
        CHECK(std::abs(spec[k] - want[k]) < 1e-10 * std::max(1.0, std::abs(want[k])));

    const GridField back = inverse_transform_real(1, 64, spec);
    CHECK(rel_l2(back, u) < 1e-12);

    double space = 0.0, freq = 0.0;
    for (double v : u.values) space += v * v;
    for (const auto& z : spec) freq += std::norm(z);
    CHECK(space == doctest::Approx(freq / 64.0).epsilon(1e-12));

    // multi-d round trip
    GridField u3(3, 8);
    for (auto& v : u3.values) v = g(rng);
    CHECK(rel_l2(inverse_transform_real(3, 8, forward_transform(u3)), u3) < 1e-12);
}

TEST_CASE("apply_multiplier basics") {
    const GridField u = cosine_field(256, 3);
    const GridField same = apply_multiplier(u, [](const Vec&) { return cdouble{1.0, 0.0}; });
    CHECK(rel_l2(same, u) < 1e-13);

    const GridField lap = apply_multiplier(u, [](const Vec& f) {
        return cdouble{-std::abs(f[0]), 0.0};
    });
    const GridField want = cosine_field(256, 3, -3.0);
    CHECK(rel_l2(lap, want) < 1e-12);

    // a multiplier without Hermitian symmetry cannot produce a real field
    CHECK_THROWS_AS(apply_multiplier(u, [](const Vec&) { return cdouble{0.0, 1.0}; }),
                    std::invalid_argument);

    // single mode through a complex-valued (Hermitian) symbol
    const auto asym = LevyMeasure::atoms(1, 0.5, {{vec1(1.0), 1.0}, {vec1(-0.3), 2.0}});
    const int mode = 5;
    const GridField c5 = cosine_field(128, mode);
    const GridField out = apply_multiplier(c5, [&](const Vec& f) {
        return norm(f, 1) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(asym, f);
    });
    const cdouble mv = symbol_eval(asym, vec1(double(mode)));
    for (int j = 0; j < 128; ++j) {
        const double x = c5.spacing() * j;
        const double want_j = mv.real() * std::cos(mode * x) - mv.imag() * std::sin(mode * x);
        CHECK(out.values[j] == doctest::Approx(want_j).epsilon(1e-11));
    }
}

TEST_CASE("fractional laplacian multiplier") {
    GridField c(1, 64);
    for (auto& v : c.values) v = 2.5;
    CHECK(rel_l2(fractional_laplacian(c, 1.0), GridField(1, 64)) < 1e-14);
    const GridField s = fractional_laplacian(c, 0.7, /*shifted=*/true);
    CHECK(rel_l2(s, c) < 1e-13);

    const GridField u = cosine_field(128, 2);
    CHECK(rel_l2(fractional_laplacian(u, 1.0), cosine_field(128, 2, 2.0)) < 1e-12);
}

TEST_CASE("trigonometric interpolation is exact on band-limited fields") {
    std::mt19937_64 rng(8);
    const GridField u = random_band_limited(1, 128, 16, rng);
    const auto spec = forward_transform(u);
    // at the nodes it reproduces the samples
    for (int j = 0; j < 128; j += 17)
        CHECK(value_at(spec, 1, 128, vec1(u.spacing() * j)) ==
              doctest::Approx(u.values[j]).epsilon(1e-12));
    // shifted_field agrees with pointwise evaluation
    const Vec y = vec1(0.37);
    const GridField sh = shifted_field(spec, 1, 128, y);
    for (int j = 0; j < 128; j += 13)
        CHECK(sh.values[j] ==
              doctest::Approx(value_at(spec, 1, 128, vec1(u.spacing() * j + y[0])))
                  .epsilon(1e-11));
}

TEST_CASE("direct operator: closed forms") {
    // constant field -> zero
    GridField c(1, 64);
    for (auto& v : c.values) v = 1.0;
    const auto pair = LevyMeasure::atoms(1, 0.5, {{vec1(0.7), 1.3}, {vec1(-0.7), 1.3}});
    CHECK(rel_l2(apply_levy_direct(c, pair), GridField(1, 64)) < 1e-12);

    // single symmetric pair on cos(k x): 2 w (cos(k h) - 1) cos(k x)
    for (double sig : {0.5, 1.0, 1.5}) {
        const auto m = LevyMeasure::atoms(1, sig, {{vec1(0.7), 1.3}, {vec1(-0.7), 1.3}});
        const GridField u = cosine_field(128, 3);
        const GridField got = apply_levy_direct(u, m);
        const double factor = 2.0 * 1.3 * (std::cos(3 * 0.7) - 1.0);
        CHECK(rel_l2(got, cosine_field(128, 3, factor)) < 1e-10);
    }

    // density measures are rejected
    CHECK_THROWS_AS(apply_levy_direct(c, LevyMeasure::radial_density(1, 1.0, 1.0)),
                    std::invalid_argument);
    // sigma = 1 with an asymmetric atom set is rejected
    CHECK_THROWS_AS(apply_levy_direct(c, LevyMeasure::atoms(1, 1.0, {{vec1(1.0), 1.0}})),
                    std::invalid_argument);

    CHECK(atoms_alias_domain(LevyMeasure::atoms(1, 0.5, {{vec1(3.5), 1.0}, {vec1(-3.5), 1.0}}), 1));
    CHECK(!atoms_alias_domain(pair, 1));
}

TEST_CASE("central oracle: direct vs multiplier on band-limited fields") {
    std::mt19937_64 rng(17);
    const auto comb1 = LevyMeasure::dyadic_comb(1, 0.5, -30, 0);
    const auto atoms1 =
        LevyMeasure::atoms(1, 1.5, {{vec1(0.9), 1.0}, {vec1(-0.9), 1.0}, {vec1(0.21), 0.5},
                                    {vec1(-0.21), 0.5}});
    for (int rep = 0; rep < 5; ++rep) {
        const GridField u = random_band_limited(1, 256, 64, rng);
        for (const auto& m : {comb1, atoms1}) {
            const GridField direct = apply_levy_direct(u, m);
            const GridField mult = apply_multiplier(u, [&](const Vec& f) {
                return norm(f, 1) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(m, f);
            });
            CHECK(rel_l2(direct, mult) < 1e-8);
        }
    }
    // d = 2
    const auto comb2 = LevyMeasure::dyadic_comb(2, 1.0, -20, 0);
    const GridField u2 = random_band_limited(2, 64, 16, rng);
    const GridField d2 = apply_levy_direct(u2, comb2);
    const GridField m2 = apply_multiplier(u2, [&](const Vec& f) {
        return norm(f, 2) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(comb2, f);
    });
    CHECK(rel_l2(d2, m2) < 1e-8);

    // d = 3
    const auto comb3 = LevyMeasure::dyadic_comb(3, 0.5, -10, 0);
    const GridField u3 = random_band_limited(3, 16, 4, rng);
    const GridField d3 = apply_levy_direct(u3, comb3);
    const GridField m3 = apply_multiplier(u3, [&](const Vec& f) {
        return norm(f, 3) == 0.0 ? cdouble{0.0, 0.0} : symbol_eval(comb3, f);
    });
    CHECK(rel_l2(d3, m3) < 1e-8);
    // pointwise interpolation consistency in 3-d
    const auto spec3 = forward_transform(u3);
    const Vec y3 = vec3(0.21, -0.4, 0.05);
    const GridField sh3 = shifted_field(spec3, 3, 16, y3);
    const Vec probe = vec3(u3.spacing() * 3 + y3[0], u3.spacing() * 7 + y3[1],
                           u3.spacing() * 11 + y3[2]);
    CHECK(sh3.values[(3 * 16 + 7) * 16 + 11] ==
          doctest::Approx(value_at(spec3, 3, 16, probe)).epsilon(1e-10));
}

TEST_CASE("nonpositive quadratic form of -|xi|^s") {
    std::mt19937_64 rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        const GridField u = random_band_limited(1, 128, 32, rng);
        const GridField lu = apply_multiplier(u, [](const Vec& f) {
            return cdouble{-std::pow(std::abs(f[0]), 0.8), 0.0};
        });
        double inner = 0.0;
        for (int j = 0; j < 128; ++j) inner += u.values[j] * lu.values[j];
        CHECK(inner <= 1e-12);
    }
}

TEST_CASE("resample preserves the trigonometric polynomial") {
    std::mt19937_64 rng(31);
    const GridField u = random_band_limited(1, 64, 8, rng);
    const GridField fine = resample(u, 256);
    for (int j = 0; j < 64; ++j)
        CHECK(fine.values[j * 4] == doctest::Approx(u.values[j]).epsilon(1e-12));
    CHECK_THROWS_AS(resample(u, 32), std::invalid_argument);
}

TEST_CASE("field serialization") {
    std::mt19937_64 rng(37);
    const GridField u = random_band_limited(2, 16, 4, rng);
    write_field_binary(u, "/tmp/nlevy_test_field.bin");
    const GridField back = read_field_binary("/tmp/nlevy_test_field.bin");
    CHECK(back.dim == 2);
    CHECK(back.n == 16);
    CHECK(rel_l2(back, u) == 0.0);

    const GridField u1 = random_band_limited(1, 32, 4, rng);
    write_field_csv(u1, "/tmp/nlevy_test_field.csv");
    CHECK_THROWS_AS(write_field_csv(u, "/tmp/nlevy_should_fail.csv"), std::invalid_argument);
}
