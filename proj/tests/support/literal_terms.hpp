#pragma once

// Pointwise evaluation of T1..T8 straight from their integral expressions,
// used as an oracle independent of the production decomposition.

#include <array>
#include <vector>

#include "renormal/commutators.hpp"
#include "renormal/operators.hpp"

namespace renormal::testing {

// Literal h^d sum_y K(x - y) f(y) written out with periodic index arithmetic.
inline double literal_conv(const ScalarField& K, const ScalarField& f, std::size_t x) {
    const GridSpec& g = f.grid();
    const int n = g.points_per_axis();
    const auto xi = g.unflatten(x);
    double s = 0;
    for (std::size_t y = 0; y < g.size(); ++y) {
        const auto yi = g.unflatten(y);
        std::array<int, 3> z{};
        for (int a = 0; a < g.dim(); ++a)
            z[a] = ((xi[a] - yi[a]) % n + n) % n;
        s += K[g.flatten(z)] * f[y];
    }
    return g.cell_volume() * s;
}

// Every term evaluated pointwise straight from its integral expression.
inline std::array<ScalarField, 8> literal_terms(const SigmaField& s, const ScalarField& u, const MollifierKernel& k) {
    const GridSpec& g = u.grid();
    const int d = s.dim(), m = s.columns();
    std::vector<ScalarField> dJ;
    std::vector<std::vector<ScalarField>> d2J(d);
    for (int i = 0; i < d; ++i) {
        dJ.push_back(kernel_derivative(k, i));
        for (int j = 0; j < d; ++j)
            d2J[i].push_back(kernel_second_derivative(k, i, j));
    }
    auto ds = [&](int i, int kk, int j) { return derivative(s(i, kk), j); };  // d_j sigma_ik
    std::array<std::vector<double>, 8> t;
    for (auto& v : t)
        v.assign(g.size(), 0.0);
    const ScalarField J = k.samples();
    for (int kk = 0; kk < m; ++kk) {
        ScalarField div_k(g);
        for (int j = 0; j < d; ++j)
            div_k = div_k + ds(j, kk, j);
        std::vector<ScalarField> flux;
        for (int i = 0; i < d; ++i)
            flux.push_back(s(i, kk) * div_k);
        ScalarField t5_factor(g);
        for (int i = 0; i < d; ++i)
            t5_factor = t5_factor + derivative(flux[i], i);
        for (std::size_t x = 0; x < g.size(); ++x)
            t[4][x] += t5_factor[x] * literal_conv(J, u, x);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const ScalarField sju = s(j, kk) * u;
                const ScalarField sisju = s(i, kk) * s(j, kk) * u;
                const ScalarField t4_in = s(j, kk) * ds(i, kk, j) * u;
                const ScalarField dii = ds(i, kk, i);
                const ScalarField dij = ds(j, kk, i);
                for (std::size_t x = 0; x < g.size(); ++x) {
                    t[0][x] += 2 * s(i, kk)[x] * literal_conv(d2J[i][j], sju, x);
                    t[1][x] += 2 * dii[x] * literal_conv(dJ[j], sju, x);
                    t[2][x] += literal_conv(d2J[i][j], sisju, x);
                    t[3][x] -= literal_conv(dJ[i], t4_in, x);
                    t[6][x] += s(i, kk)[x] * s(j, kk)[x] * literal_conv(d2J[i][j], u, x);
                    t[7][x] += s(i, kk)[x] * dij[x] * literal_conv(dJ[j], u, x);
                }
            }
        for (int i = 0; i < d; ++i)
            for (std::size_t x = 0; x < g.size(); ++x)
                t[5][x] += 2 * s(i, kk)[x] * div_k[x] * literal_conv(dJ[i], u, x);
    }
    return {ScalarField(g, t[0]), ScalarField(g, t[1]), ScalarField(g, t[2]), ScalarField(g, t[3]),
            ScalarField(g, t[4]), ScalarField(g, t[5]), ScalarField(g, t[6]), ScalarField(g, t[7])};
}

}  // namespace renormal::testing
