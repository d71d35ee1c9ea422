#include "renormal/operators.hpp"

#include <stdexcept>

namespace renormal {

ScalarField divergence(const std::vector<ScalarField>& p, const Discretization& disc) {
    if (p.empty() || static_cast<int>(p.size()) != p.front().grid().dim())
        throw std::invalid_argument("divergence needs one field per axis");
    const GridSpec& grid = p.front().grid();
    if (disc.backend == DerivativeBackend::centered2) {
        ScalarField acc = derivative(disc.dealias ? two_thirds_filter(p[0]) : p[0], 0, disc.backend);
        for (int i = 1; i < grid.dim(); ++i)
            acc = acc + derivative(disc.dealias ? two_thirds_filter(p[i]) : p[i], i, disc.backend);
        return acc;
    }
    Spectrum acc;
    for (int i = 0; i < grid.dim(); ++i) {
        require_same_grid(grid, p[i].grid(), "divergence");
        Spectrum s = forward_transform(disc.dealias ? two_thirds_filter(p[i]) : p[i]);
        apply_derivative_symbol(grid, s, i);
        if (i == 0) {
            acc = std::move(s);
        } else {
            for (std::size_t n = 0; n < acc.size(); ++n)
                acc[n] += s[n];
        }
    }
    return inverse_transform(grid, acc);
}

VectorFieldM apply_K_scalar(const SigmaField& sigma, const ScalarField& f, const Discretization& disc) {
    require_same_grid(sigma.grid(), f.grid(), "apply_K_scalar");
    std::vector<ScalarField> out;
    out.reserve(sigma.columns());
    for (int k = 0; k < sigma.columns(); ++k) {
        std::vector<ScalarField> products;
        for (int i = 0; i < sigma.dim(); ++i)
            products.push_back(sigma(i, k) * f);
        out.push_back(divergence(products, disc));
    }
    return VectorFieldM(std::move(out));
}

ScalarField apply_K_vector(const SigmaField& sigma, const VectorFieldM& g, const Discretization& disc) {
    require_same_grid(sigma.grid(), g.grid(), "apply_K_vector");
    if (g.components() != sigma.columns())
        throw std::invalid_argument("apply_K_vector: component-count mismatch");
    std::vector<ScalarField> products;
    for (int i = 0; i < sigma.dim(); ++i) {
        ScalarField acc = sigma(i, 0) * g[0];
        for (int k = 1; k < sigma.columns(); ++k)
            acc = acc + sigma(i, k) * g[k];
        products.push_back(std::move(acc));
    }
    return divergence(products, disc);
}

VectorFieldM div_sigma(const SigmaField& sigma, const Discretization& disc) {
    return apply_K_scalar(sigma, ScalarField::constant(sigma.grid(), 1.0), disc);
}

ScalarField ito_correction(const SigmaField& sigma, const ScalarField& u, const Discretization& disc) {
    return 0.5 * apply_K_vector(sigma, apply_K_scalar(sigma, u, disc), disc);
}

}  // namespace renormal
