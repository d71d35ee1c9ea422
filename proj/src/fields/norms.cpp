#include "renormal/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "renormal/spectral.hpp"

namespace renormal {

namespace {

double lq_of_magnitudes(const std::vector<double>& mag, double cell_volume, const Exponent& q) {
    if (q.is_infinite()) {
        double m = 0.0;
        for (double v : mag)
            m = std::max(m, v);
        return m;
    }
    const double e = q.value();
    if (!(e >= 1.0))
        throw std::invalid_argument("L^q norm needs q >= 1");
    double s = 0.0;
    if (e == 1.0) {
        for (double v : mag)
            s += v;
        return s * cell_volume;
    }
    if (e == 2.0) {
        for (double v : mag)
            s += v * v;
        return std::sqrt(s * cell_volume);
    }
    for (double v : mag)
        s += std::pow(v, e);
    return std::pow(s * cell_volume, 1.0 / e);
}

}  // namespace

double lq_norm(const ScalarField& f, const Exponent& q) {
    std::vector<double> mag(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        mag[i] = std::abs(f[i]);
    return lq_of_magnitudes(mag, f.grid().cell_volume(), q);
}

double lq_norm(const VectorFieldM& f, const Exponent& q) {
    if (f.components() == 1)
        return lq_norm(f[0], q);
    std::vector<double> mag(f[0].size(), 0.0);
    for (const auto& comp : f.all())
        for (std::size_t i = 0; i < mag.size(); ++i)
            mag[i] += comp[i] * comp[i];
    for (double& v : mag)
        v = std::sqrt(v);
    return lq_of_magnitudes(mag, f.grid().cell_volume(), q);
}

double sobolev_norm(const ScalarField& f, int order, const Exponent& r) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("Sobolev order must be 1 or 2");
    if (!r.is_infinite() && r.value() < 1.0)
        throw std::invalid_argument("Sobolev norm needs r >= 1");
    const int d = f.grid().dim();
    double total = lq_norm(f, r);
    for (int i = 0; i < d; ++i)
        total += lq_norm(derivative(f, i), r);
    if (order == 2)
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                total += lq_norm(second_derivative(f, i, j), r);
    return total;
}

double sobolev_norm(const SigmaField& sigma, int order, const Exponent& r) {
    double total = 0.0;
    for (int k = 0; k < sigma.columns(); ++k)
        for (int i = 0; i < sigma.dim(); ++i)
            total += sobolev_norm(sigma(i, k), order, r);
    return total;
}

}  // namespace renormal
