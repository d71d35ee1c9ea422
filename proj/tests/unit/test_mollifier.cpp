#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>

#include "renormal/errors.hpp"
#include "renormal/mollifier.hpp"
#include "renormal/presets.hpp"
#include "renormal/rng.hpp"

using namespace renormal;

namespace {

ScalarField random_field(const GridSpec& g, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = rng.normal(i);
    return ScalarField(g, v);
}

double rel_diff(const ScalarField& a, const ScalarField& b) { return max_abs_diff(a, b) / max_abs(b); }

}  // namespace

TEST(Kernel, ExactMassAndEvenness) {
    const GridSpec g(1, 256);
    const MollifierKernel k = build_kernel(KernelKind::bump, 0.25, g);
    EXPECT_EQ(k.mass(), 1.0);
    EXPECT_LE(k.evenness_residual(), 1e-15);
    EXPECT_NEAR(first_moment(k, 0), 0.0, 1e-14);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(k.samples()[i], 0.0);
        if (std::abs(g.displacement(static_cast<int>(i))) >= 0.25) {
            EXPECT_EQ(k.samples()[i], 0.0);
        }
    }
}

TEST(Kernel, ExactMassAcrossShapes) {
    for (int d : {1, 2, 3})
        for (double delta : {0.25, 0.125}) {
            const GridSpec g(d, d == 3 ? 64 : 128);
            for (KernelKind kind : {KernelKind::bump, KernelKind::truncated_gaussian})
                EXPECT_EQ(build_kernel(kind, delta, g).mass(), 1.0) << d << " " << delta;
        }
}

TEST(Kernel, ResolutionErrors) {
    const GridSpec g(1, 64);
    try {
        build_kernel(KernelKind::bump, 4.0 / 64, g);
        FAIL();
    } catch (const KernelResolutionError& e) {
        EXPECT_NE(std::string(e.what()).find("under-resolved kernel"), std::string::npos);
    }
    try {
        build_kernel(KernelKind::bump, 0.3, g);
        FAIL();
    } catch (const KernelResolutionError& e) {
        EXPECT_NE(std::string(e.what()).find("support exceeds torus"), std::string::npos);
    }
    EXPECT_NO_THROW(build_kernel(KernelKind::bump, 8.0 / 64, g));
}

TEST(Kernel, OddMomentsVanish) {
    const GridSpec g(2, 128);
    const MollifierKernel k = build_kernel(KernelKind::bump, 0.125, g);
    for (int a = 0; a < 2; ++a)
        EXPECT_NEAR(first_moment(k, a), 0.0, 1e-13);
}

TEST(Mollify, ConstantsAreFixedPoints) {
    const GridSpec g(2, 64);
    const MollifierKernel k = build_kernel(KernelKind::bump, 0.125, g);
    const ScalarField c = ScalarField::constant(g, 2.75);
    EXPECT_LE(max_abs_diff(mollify(c, k), c), 2.75 * 1e-14);
    EXPECT_LE(max_abs_diff(direct_convolution(c, k), c), 2.75 * 1e-14);
}

TEST(Mollify, PreservesMean) {
    const GridSpec g(1, 512);
    const ScalarField f = gen_u("box-indicator", g);
    const MollifierKernel k = build_kernel(KernelKind::bump, 1.0 / 16, g);
    EXPECT_NEAR(mean(mollify(f, k)), mean(f), 1e-13 * std::abs(mean(f)));
}

TEST(Mollify, MatchesDirectConvolution) {
    for (int d : {1, 2}) {
        const GridSpec g(d, 64);
        const ScalarField f = random_field(g, 4 + d);
        const MollifierKernel k = build_kernel(KernelKind::bump, 0.125, g);
        const ScalarField direct = direct_convolution(f, k);
        EXPECT_LE(rel_diff(mollify(f, k), direct), 1e-12);
    }
}

TEST(DirectConvolution, Examples) {
    const GridSpec g(1, 64);
    const MollifierKernel k = build_kernel(KernelKind::bump, 0.25, g);
    EXPECT_EQ(max_abs(direct_convolution(ScalarField(g), k)), 0.0);

    // delta-like f at node 5 returns the kernel recentred at node 5
    std::vector<double> spike(64, 0.0);
    spike[5] = 64.0;
    const ScalarField out = direct_convolution(ScalarField(g, spike), k);
    for (int x = 0; x < 64; ++x)
        EXPECT_NEAR(out[x], k.samples()[(x - 5 + 64) % 64], 1e-15);

    EXPECT_THROW(direct_convolution(ScalarField(GridSpec(2, 512)), ScalarField(GridSpec(2, 512))), std::length_error);
}

TEST(Mollify, GridMismatch) {
    const MollifierKernel k = build_kernel(KernelKind::bump, 0.25, GridSpec(1, 64));
    EXPECT_THROW(mollify(ScalarField(GridSpec(1, 128)), k), std::invalid_argument);
}

TEST(Mollify, CommutesWithItselfAndWithDerivative) {
    const GridSpec g(2, 64);
    const ScalarField f = random_field(g, 8);
    const MollifierKernel a = build_kernel(KernelKind::bump, 0.25, g);
    const MollifierKernel b = build_kernel(KernelKind::truncated_gaussian, 0.125, g);
    EXPECT_LE(rel_diff(mollify(mollify(f, a), b), mollify(mollify(f, b), a)), 1e-12);
    for (int axis = 0; axis < 2; ++axis)
        EXPECT_LE(rel_diff(derivative(mollify(f, a), axis), mollify(derivative(f, axis), a)), 1e-12);
}

// In 1-d the continuum value of h sum |z| |J'(z)| is exactly 1 (twice the
// half-mass of an even kernel); the band below was computed once on a fine
// grid (N = 4096) over k = 2..6 and frozen.
TEST(Moments, WeightedFirstMomentBand) {
    const GridSpec g(1, 4096);
    double lo = INFINITY, hi = 0;
    std::vector<double> values;
    for (double delta : delta_ladder(2, 6)) {
        const double v = weighted_moment_first(build_kernel(KernelKind::bump, delta, g), 0);
        EXPECT_GT(v, 0.0);
        values.push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    EXPECT_LE(hi / lo, 1.5);
    EXPECT_NEAR(lo, 1.0, 1e-3);
    EXPECT_NEAR(hi, 1.0, 1e-3);
    for (std::size_t n = 1; n < values.size(); ++n)
        EXPECT_LT(std::abs(values[n] / values[n - 1] - 1), 0.1);
}

TEST(Moments, WeightedFirstMomentStableOnceResolved) {
    const GridSpec g(1, 256);
    // doubling delta changes the value by < 10% once delta >= 16h
    for (double delta : {1.0 / 16, 1.0 / 8}) {
        const double a = weighted_moment_first(build_kernel(KernelKind::bump, delta, g), 0);
        const double b = weighted_moment_first(build_kernel(KernelKind::bump, 2 * delta, g), 0);
        EXPECT_LT(std::abs(b / a - 1), 0.1);
    }
}

TEST(Moments, SecondMomentIdentity) {
    const GridSpec g(2, 256);
    for (double delta : {0.25, 0.125, 1.0 / 16}) {
        const MollifierKernel k = build_kernel(KernelKind::bump, delta, g);
        EXPECT_NEAR(second_moment_matrix(k, 0, 1, 0, 1), 1.0, 5e-3);
        EXPECT_NEAR(second_moment_matrix(k, 0, 0, 0, 0), 2.0, 5e-3);
        EXPECT_NEAR(second_moment_matrix(k, 0, 1, 0, 0), 0.0, 5e-3);
        EXPECT_NEAR(second_moment_matrix(k, 1, 1, 0, 0), 0.0, 5e-3);
    }
    EXPECT_THROW(second_moment_matrix(build_kernel(KernelKind::bump, 0.25, g), 0, 2, 0, 0), std::invalid_argument);
}

TEST(Moments, SecondMomentErrorShrinksWithResolution) {
    const double delta = 0.125;
    double prev = INFINITY;
    for (int n : {16 * 8, 32 * 8, 64 * 8}) {
        const GridSpec g(1, n);
        const MollifierKernel k = build_kernel(KernelKind::bump, delta, g);
        const double err = std::abs(second_moment_matrix(k, 0, 0, 0, 0) - 2.0);
        EXPECT_LE(err, prev);
        prev = err;
    }
}

TEST(Ladder, WidthsAndFloor) {
    const auto ladder = delta_ladder(2, 5);
    ASSERT_EQ(ladder.size(), 4u);
    EXPECT_EQ(ladder.front(), 0.25);
    EXPECT_EQ(ladder.back(), 1.0 / 32);
    EXPECT_EQ(finest_ladder_k(GridSpec(1, 1024)), 7);
    EXPECT_EQ(finest_ladder_k(GridSpec(1, 64)), 3);
}

TEST(Kernel, CsvDump) {
    const GridSpec g(1, 64);
    const auto path = std::filesystem::temp_directory_path() / "renormal_kernel.csv";
    write_kernel_csv(path, build_kernel(KernelKind::bump, 0.25, g));
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "z,J");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, 64);
}
