#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "renormal/operators.hpp"
#include "renormal/presets.hpp"
#include "renormal/rng.hpp"

using namespace renormal;
using std::numbers::pi;

namespace {

// Random band-limited field: modes |k|_inf <= kmax.
ScalarField band_limited(const GridSpec& g, std::uint64_t seed, int kmax = 3) {
    const CounterRng rng(seed);
    std::vector<std::array<double, 4>> terms;
    std::uint64_t n = 0;
    for (int k0 = -kmax; k0 <= kmax; ++k0)
        for (int k1 = (g.dim() > 1 ? -kmax : 0); k1 <= (g.dim() > 1 ? kmax : 0); ++k1)
            terms.push_back({double(k0), double(k1), rng.normal(n++), rng.normal(n++)});
    return ScalarField::sample(g, [&](const auto& x) {
        double s = 0;
        for (const auto& t : terms) {
            const double th = 2 * pi * (t[0] * x[0] + t[1] * x[1]);
            s += t[2] * std::cos(th) + t[3] * std::sin(th);
        }
        return s;
    });
}

SigmaField band_limited_sigma(const GridSpec& g, int m, std::uint64_t seed) {
    std::vector<ScalarField> c;
    for (int n = 0; n < g.dim() * m; ++n)
        c.push_back(band_limited(g, seed * 100 + n, 2));
    return SigmaField(g.dim(), m, c);
}

double rel(const ScalarField& a, const ScalarField& b) { return max_abs_diff(a, b) / std::max(1.0, max_abs(b)); }

}  // namespace

TEST(KScalar, ConstantSigmaIsWeightedDerivative) {
    const GridSpec g(2, 32);
    const SigmaField s(2, 2,
                       {ScalarField::constant(g, 0.5), ScalarField::constant(g, -1.5), ScalarField::constant(g, 2.0),
                        ScalarField::constant(g, 0.25)});
    const ScalarField f = band_limited(g, 1);
    const VectorFieldM kf = apply_K_scalar(s, f);
    for (int k = 0; k < 2; ++k) {
        const ScalarField expected = s(0, k)[0] * derivative(f, 0) + s(1, k)[0] * derivative(f, 1);
        EXPECT_LE(max_abs_diff(kf[k], expected), 1e-12 * max_abs(expected));
    }
}

TEST(KScalar, Examples) {
    const GridSpec g(1, 64);
    const SigmaField s = gen_sigma("trig", g, 1);  // sin 2 pi x for d = m = 1
    EXPECT_EQ(max_abs(apply_K_scalar(s, ScalarField(g))[0]), 0.0);
    const ScalarField f = ScalarField::sample(g, [](const auto& x) { return std::cos(2 * pi * x[0]); });
    const ScalarField expected = ScalarField::sample(g, [](const auto& x) { return 2 * pi * std::cos(4 * pi * x[0]); });
    EXPECT_LE(max_abs_diff(apply_K_scalar(s, f)[0], expected), 1e-10);
}

TEST(KVector, Examples) {
    const GridSpec g(2, 32);
    const SigmaField s = band_limited_sigma(g, 3, 2);
    EXPECT_EQ(max_abs(apply_K_vector(s, VectorFieldM::zeros(g, 3))), 0.0);
    const VectorFieldM gv({band_limited(g, 5), band_limited(g, 6), band_limited(g, 7)});
    EXPECT_LE(std::abs(mean(apply_K_vector(s, gv))), 1e-13);
    EXPECT_THROW(apply_K_vector(s, VectorFieldM::zeros(g, 2)), std::invalid_argument);
}

TEST(KVector, ReducesBitwiseToScalarCaseForOneComponent) {
    const GridSpec g(2, 32);
    const SigmaField s = band_limited_sigma(g, 1, 4);
    const ScalarField f = band_limited(g, 9);
    const ScalarField a = apply_K_vector(s, VectorFieldM({f}));
    const ScalarField b = apply_K_scalar(s, f)[0];
    for (std::size_t i = 0; i < g.size(); ++i)
        ASSERT_EQ(a[i], b[i]);
}

TEST(DivSigma, Examples) {
    const GridSpec g(2, 32);
    EXPECT_LE(max_abs(div_sigma(SigmaField::constant(g, 2, 1.3))[1]), 1e-12);
    const SigmaField trig = gen_sigma("trig", g, 1);
    const ScalarField expected =
        ScalarField::sample(g, [](const auto& x) { return 2 * pi * std::cos(2 * pi * x[0]) * std::sin(2 * pi * x[1]); });
    EXPECT_LE(max_abs_diff(div_sigma(trig)[0], expected), 1e-10);
    const VectorFieldM a = div_sigma(trig);
    const VectorFieldM b = apply_K_scalar(trig, ScalarField::constant(g, 1.0));
    for (std::size_t i = 0; i < g.size(); ++i)
        ASSERT_EQ(a[0][i], b[0][i]);
}

TEST(ItoCorrection, Examples) {
    const GridSpec g(1, 64);
    const double c = 0.8;
    const SigmaField s = SigmaField::constant(g, 1, c);
    const ScalarField u = gen_u("trig", g);
    const ScalarField expected = 0.5 * c * c * second_derivative(u, 0, 0);
    EXPECT_LE(max_abs_diff(ito_correction(s, u), expected), 1e-10 * std::max(1.0, max_abs(expected)));
    EXPECT_EQ(max_abs(ito_correction(s, ScalarField(g))), 0.0);
    const SigmaField trig = gen_sigma("trig", g, 2);
    EXPECT_LE(std::abs(mean(ito_correction(trig, gen_u("box-indicator", g)))), 1e-13);
}

TEST(Operators, Linearity) {
    const GridSpec g(2, 32);
    const SigmaField s = band_limited_sigma(g, 2, 8);
    const ScalarField f = band_limited(g, 10), h = band_limited(g, 11);
    const double a = 1.7, b = -0.4;
    const VectorFieldM lhs = apply_K_scalar(s, a * f + b * h);
    const VectorFieldM rhs = a * apply_K_scalar(s, f) + b * apply_K_scalar(s, h);
    for (int k = 0; k < 2; ++k)
        EXPECT_LE(rel(lhs[k], rhs[k]), 1e-12);
    const VectorFieldM gf({f, h}), gh({h, f});
    EXPECT_LE(rel(apply_K_vector(s, a * gf + b * gh), a * apply_K_vector(s, gf) + b * apply_K_vector(s, gh)), 1e-12);
}

TEST(Operators, IntegrationByParts) {
    // h^d sum (K f)_k g_k = -h^d sum f sigma_ik d_i g_k
    const GridSpec g(2, 32);
    const SigmaField s = band_limited_sigma(g, 2, 12);
    const ScalarField f = band_limited(g, 13);
    const VectorFieldM gv({band_limited(g, 14), band_limited(g, 15)});
    const double lhs = mean(dot(apply_K_scalar(s, f), gv));
    ScalarField inner(g);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            inner = inner + s(i, k) * derivative(gv[k], i);
    const double rhs = -mean(f * inner);
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, std::abs(lhs)));
}

TEST(Operators, LeibnizConsistency) {
    const GridSpec g(2, 64);
    const SigmaField s = band_limited_sigma(g, 2, 16);
    const ScalarField f = band_limited(g, 17);
    const VectorFieldM kf = apply_K_scalar(s, f);
    const VectorFieldM ds = div_sigma(s);
    for (int k = 0; k < 2; ++k) {
        const ScalarField expected = f * ds[k] + s(0, k) * derivative(f, 0) + s(1, k) * derivative(f, 1);
        EXPECT_LE(max_abs_diff(kf[k], expected), 1e-11 * std::max(1.0, max_abs(expected)));
    }
}

TEST(Operators, Centered2BackendApproximatesSpectral) {
    std::vector<double> err;
    for (int n : {32, 64, 128}) {
        const GridSpec g(1, n);
        const SigmaField s = gen_sigma("trig", g, 1);
        const ScalarField u = gen_u("trig", g);
        err.push_back(max_abs_diff(apply_K_scalar(s, u, {DerivativeBackend::centered2, false})[0], apply_K_scalar(s, u)[0]));
    }
    EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.2);
    EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.2);
}

TEST(Operators, DealiasFlagFiltersProducts) {
    const GridSpec g(1, 32);
    const SigmaField s = SigmaField(1, 1, {ScalarField::sample(g, [](const auto& x) { return std::cos(2 * pi * 10 * x[0]); })});
    const ScalarField f = ScalarField::sample(g, [](const auto& x) { return std::cos(2 * pi * 5 * x[0]); });
    // product carries modes 5 and 15; the filter keeps |k| <= 10
    const ScalarField kf = apply_K_scalar(s, f, {DerivativeBackend::spectral, true})[0];
    EXPECT_EQ(spectral_bandwidth(kf), 5);
    EXPECT_EQ(spectral_bandwidth(apply_K_scalar(s, f)[0]), 15);
}
