#include <cmath>
#include <stdexcept>

#include "renormal/rng.hpp"
#include "renormal/spde.hpp"

namespace renormal {

BrownianDriver::BrownianDriver(int m, int steps, double dt, std::uint64_t seed, std::uint64_t path,
                               std::vector<double> inc)
    : m_(m), steps_(steps), dt_(dt), seed_(seed), path_(path), increments_(std::move(inc)) {}

std::span<const double> BrownianDriver::increment(int step) const {
    if (step < 0 || step >= steps_)
        throw std::out_of_range("Brownian step out of range");
    return std::span<const double>(increments_).subspan(static_cast<std::size_t>(step) * m_, m_);
}

std::vector<double> BrownianDriver::column(int k) const {
    if (k < 0 || k >= m_)
        throw std::out_of_range("Brownian component out of range");
    std::vector<double> out(steps_);
    for (int n = 0; n < steps_; ++n)
        out[n] = increments_[static_cast<std::size_t>(n) * m_ + k];
    return out;
}

BrownianDriver BrownianDriver::coarsened() const {
    if (steps_ < 2)
        throw std::invalid_argument("cannot coarsen a single-step path");
    const int steps = steps_ / 2;
    std::vector<double> inc(static_cast<std::size_t>(steps) * m_);
    for (int n = 0; n < steps; ++n)
        for (int k = 0; k < m_; ++k)
            inc[static_cast<std::size_t>(n) * m_ + k] = increments_[(2 * static_cast<std::size_t>(n)) * m_ + k] +
                                                        increments_[(2 * static_cast<std::size_t>(n) + 1) * m_ + k];
    return BrownianDriver(m_, steps, 2.0 * dt_, seed_, path_, std::move(inc));
}

double BrownianDriver::terminal_value(int k) const {
    double w = 0.0;
    for (double x : column(k))
        w += x;
    return w;
}

BrownianDriver sample_increments(int m, int steps, double dt, std::uint64_t seed, std::uint64_t path) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("Brownian step dt must be positive");
    if (m < 1 || steps < 1)
        throw std::invalid_argument("Brownian driver needs m >= 1 and steps >= 1");
    const CounterRng rng(seed);
    const double scale = std::sqrt(dt);
    std::vector<double> inc(static_cast<std::size_t>(steps) * m);
    for (int n = 0; n < steps; ++n)
        for (int k = 0; k < m; ++k)
            inc[static_cast<std::size_t>(n) * m + k] =
                scale * rng.normal(static_cast<std::uint64_t>(n), static_cast<std::uint32_t>(k),
                                   static_cast<std::uint32_t>(path));
    return BrownianDriver(m, steps, dt, seed, path, std::move(inc));
}

}  // namespace renormal
