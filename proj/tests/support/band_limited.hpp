#pragma once

// Seeded random trigonometric polynomials: products of a few of these stay
// free of aliasing, so discrete product and chain rules hold to round-off.

#include <cstdint>
#include <numbers>
#include <vector>

#include "renormal/field.hpp"
#include "renormal/rng.hpp"

namespace renormal::testing {

inline ScalarField band_limited(const GridSpec& g, std::uint64_t seed, int kmax = 2) {
    const CounterRng rng(seed);
    std::uint64_t n = 0;
    ScalarField f(g);
    const int k1max = g.dim() > 1 ? kmax : 0;
    for (int k0 = -kmax; k0 <= kmax; ++k0)
        for (int k1 = -k1max; k1 <= k1max; ++k1) {
            const double a = rng.normal(n++), b = rng.normal(n++);
            f = f + ScalarField::sample(g, [&](const auto& x) {
                    const double th = 2 * std::numbers::pi * (k0 * x[0] + k1 * x[1]);
                    return a * std::cos(th) + b * std::sin(th);
                });
        }
    return f;
}

inline SigmaField band_limited_sigma(const GridSpec& g, int m, std::uint64_t seed) {
    std::vector<ScalarField> c;
    for (int n = 0; n < g.dim() * m; ++n)
        c.push_back(band_limited(g, seed * 100 + n, 1));
    return SigmaField(g.dim(), m, c);
}

}  // namespace renormal::testing
