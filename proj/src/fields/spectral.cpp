#include "renormal/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace renormal {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per (d, N, sign) and never destroyed.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const GridSpec& grid, int sign) {
        const auto key = std::make_tuple(grid.dim(), grid.points_per_axis(), sign);
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        int dims[GridSpec::max_dim];
        for (int a = 0; a < grid.dim(); ++a)
            dims[a] = grid.points_per_axis();
        std::vector<std::complex<double>> in(grid.size()), out(grid.size());
        // FFTW_UNALIGNED keeps results independent of buffer addresses.
        fftw_plan plan = fftw_plan_dft(grid.dim(), dims, reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan)
            throw std::runtime_error("FFTW planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

Spectrum execute(const GridSpec& grid, const Spectrum& in, int sign) {
    Spectrum out(in.size());
    fftw_plan plan = PlanCache::instance().get(grid, sign);
    // FFTW does not modify the input of an out-of-place complex transform.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

void check_axis(const GridSpec& grid, int axis) {
    if (axis < 0 || axis >= grid.dim())
        throw std::invalid_argument("axis out of range");
}

// Per-axis mode index of every flat spectrum entry.
template <class Fn>
void for_each_mode(const GridSpec& grid, Fn fn) {
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i)
        fn(i, grid.unflatten(i));
}

}  // namespace

Spectrum forward_transform(const ScalarField& f) {
    Spectrum in(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        in[i] = f[i];
    return execute(f.grid(), in, FFTW_FORWARD);
}

ScalarField inverse_transform(const GridSpec& grid, const Spectrum& spectrum) {
    if (spectrum.size() != grid.size())
        throw std::invalid_argument("spectrum length does not match grid");
    const Spectrum out = execute(grid, spectrum, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(grid.size());
    std::vector<double> values(out.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        values[i] = out[i].real() * scale;
    return ScalarField(grid, std::move(values));
}

int mode_number(const GridSpec& grid, int n) {
    const int N = grid.points_per_axis();
    return n < N / 2 ? n : n - N;
}

void apply_derivative_symbol(const GridSpec& grid, Spectrum& spectrum, int axis) {
    check_axis(grid, axis);
    const int nyquist = grid.points_per_axis() / 2;
    for_each_mode(grid, [&](std::size_t i, const auto& idx) {
        if (idx[axis] == nyquist) {
            spectrum[i] = 0.0;
            return;
        }
        const double k = two_pi * mode_number(grid, idx[axis]);
        spectrum[i] *= std::complex<double>(0.0, k);
    });
}

void apply_second_derivative_symbol(const GridSpec& grid, Spectrum& spectrum, int i, int j) {
    check_axis(grid, i);
    check_axis(grid, j);
    if (i != j) {
        apply_derivative_symbol(grid, spectrum, i);
        apply_derivative_symbol(grid, spectrum, j);
        return;
    }
    for_each_mode(grid, [&](std::size_t n, const auto& idx) {
        const double k = two_pi * mode_number(grid, idx[i]);
        spectrum[n] *= -k * k;
    });
}

ScalarField derivative(const ScalarField& f, int axis, DerivativeBackend backend) {
    const GridSpec& grid = f.grid();
    check_axis(grid, axis);
    if (backend == DerivativeBackend::spectral) {
        Spectrum s = forward_transform(f);
        apply_derivative_symbol(grid, s, axis);
        return inverse_transform(grid, s);
    }
    const int N = grid.points_per_axis();
    const double inv_2h = 0.5 / grid.spacing();
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto plus = grid.unflatten(i);
        auto minus = plus;
        plus[axis] = (plus[axis] + 1) % N;
        minus[axis] = (minus[axis] + N - 1) % N;
        out[i] = (f[grid.flatten(plus)] - f[grid.flatten(minus)]) * inv_2h;
    }
    return ScalarField(grid, std::move(out));
}

ScalarField second_derivative(const ScalarField& f, int i, int j) {
    Spectrum s = forward_transform(f);
    apply_second_derivative_symbol(f.grid(), s, i, j);
    return inverse_transform(f.grid(), s);
}

ScalarField circular_convolution(const ScalarField& f, const ScalarField& kernel) {
    require_same_grid(f.grid(), kernel.grid(), "circular_convolution");
    return circular_convolution(f, forward_transform(kernel));
}

ScalarField circular_convolution(const ScalarField& f, const Spectrum& kernel_spectrum) {
    const GridSpec& grid = f.grid();
    if (kernel_spectrum.size() != grid.size())
        throw std::invalid_argument("kernel spectrum length does not match grid");
    Spectrum s = forward_transform(f);
    const double h_d = grid.cell_volume();
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] *= kernel_spectrum[i] * h_d;
    return inverse_transform(grid, s);
}

ScalarField two_thirds_filter(const ScalarField& f) {
    const GridSpec& grid = f.grid();
    const int cutoff = grid.points_per_axis() / 3;
    Spectrum s = forward_transform(f);
    for_each_mode(grid, [&](std::size_t i, const auto& idx) {
        for (int a = 0; a < grid.dim(); ++a)
            if (std::abs(mode_number(grid, idx[a])) > cutoff) {
                s[i] = 0.0;
                return;
            }
    });
    return inverse_transform(grid, s);
}

int spectral_bandwidth(const ScalarField& f, double rel_threshold) {
    const GridSpec& grid = f.grid();
    const Spectrum s = forward_transform(f);
    double peak = 0.0;
    for (const auto& c : s)
        peak = std::max(peak, std::abs(c));
    int band = 0;
    if (peak == 0.0)
        return band;
    for_each_mode(grid, [&](std::size_t i, const auto& idx) {
        if (std::abs(s[i]) <= rel_threshold * peak)
            return;
        for (int a = 0; a < grid.dim(); ++a)
            band = std::max(band, std::abs(mode_number(grid, idx[a])));
    });
    return band;
}

}  // namespace renormal
