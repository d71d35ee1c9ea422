#include "renormal/presets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "renormal/rng.hpp"
#include "renormal/spectral.hpp"

namespace renormal {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double arg_or(const PresetSpec& spec, std::size_t i, double fallback) {
    return i < spec.args.size() ? spec.args[i] : fallback;
}

void require_args(const PresetSpec& spec, std::size_t lo, std::size_t hi) {
    if (spec.args.size() < lo || spec.args.size() > hi)
        throw std::invalid_argument("wrong number of arguments for preset '" + spec.name + "'");
}

ScalarField trig_sigma_component(const GridSpec& grid, int i, int k) {
    const double phase = k * std::numbers::pi / 3.0;
    const int d = grid.dim();
    return ScalarField::sample(grid, [=](const std::array<double, 3>& x) {
        if (d == 1)
            return std::sin(two_pi * x[0] + phase);
        switch (i) {
            case 0: return std::sin(two_pi * x[0] + phase) * std::sin(two_pi * x[1]);
            case 1: return std::cos(two_pi * x[0] + phase);
            default: return std::sin(two_pi * x[2]) * std::cos(two_pi * x[1] + phase);
        }
    });
}

// sigma_.k = rot(psi_k) in the (x1, x2) plane with
// psi_k = sin(2 pi x1 + k pi/3) sin(2 pi x2) / (2 pi).
ScalarField div_free_component(const GridSpec& grid, int i, int k) {
    const double phase = k * std::numbers::pi / 3.0;
    return ScalarField::sample(grid, [=](const std::array<double, 3>& x) {
        switch (i) {
            case 0: return std::sin(two_pi * x[0] + phase) * std::cos(two_pi * x[1]);
            case 1: return -std::cos(two_pi * x[0] + phase) * std::sin(two_pi * x[1]);
            default: return 0.0;
        }
    });
}

// Built in Fourier space: modes in the half space (first nonzero index
// positive) get a_k cos + b_k sin with a_k, b_k ~ N(0, |k|^(-2(s+d))).
ScalarField fourier_decay_component(const GridSpec& grid, double s, const CounterRng& rng,
                                    std::uint32_t stream) {
    const int d = grid.dim();
    const int N = grid.points_per_axis();
    const int band = std::min(N / 8, 8);
    const double total = static_cast<double>(grid.size());
    Spectrum spec(grid.size(), 0.0);
    std::uint64_t draw = 0;
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < d; ++a) {
        lo[a] = -band;
        hi[a] = band;
    }
    for (int k0 = lo[0]; k0 <= hi[0]; ++k0)
        for (int k1 = lo[1]; k1 <= hi[1]; ++k1)
            for (int k2 = lo[2]; k2 <= hi[2]; ++k2) {
                const std::array<int, 3> k{k0, k1, k2};
                int first = 0;
                for (int a = 0; a < d && first == 0; ++a)
                    first = k[a];
                if (first <= 0)
                    continue;
                double norm2 = 0.0;
                for (int a = 0; a < d; ++a)
                    norm2 += double(k[a]) * k[a];
                const double amp = std::pow(std::sqrt(norm2), -(s + d));
                const double ca = amp * rng.normal(draw++, stream, 1);
                const double cb = amp * rng.normal(draw++, stream, 1);
                std::array<int, 3> pos{0, 0, 0}, neg{0, 0, 0};
                for (int a = 0; a < d; ++a) {
                    pos[a] = (k[a] + N) % N;
                    neg[a] = (N - k[a]) % N;
                }
                // a cos(t) + b sin(t) = Re[(a - i b) e^{it}]
                spec[grid.flatten(pos)] += std::complex<double>(ca, -cb) * (0.5 * total);
                spec[grid.flatten(neg)] += std::complex<double>(ca, cb) * (0.5 * total);
            }
    return inverse_transform(grid, spec);
}

ScalarField box_indicator(const GridSpec& grid, double a, double b) {
    if (!(a < b))
        throw std::invalid_argument("box-indicator needs a < b");
    return ScalarField::sample(grid, [=, d = grid.dim()](const std::array<double, 3>& x) {
        for (int i = 0; i < d; ++i)
            if (x[i] < a || x[i] >= b)
                return 0.0;
        return 1.0;
    });
}

}  // namespace

PresetSpec PresetSpec::parse(const std::string& text) {
    std::istringstream in(text);
    PresetSpec spec;
    if (!(in >> spec.name))
        throw std::invalid_argument("empty preset");
    std::string token;
    while (in >> token) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size())
            throw std::invalid_argument("bad preset argument '" + token + "' in '" + text + "'");
        spec.args.push_back(v);
    }
    return spec;
}

std::string PresetSpec::to_string() const {
    std::ostringstream out;
    out << name;
    for (double a : args)
        out << ' ' << a;
    return out.str();
}

SigmaField gen_sigma(const std::string& preset, const GridSpec& grid, int m, std::uint64_t seed) {
    const PresetSpec spec = PresetSpec::parse(preset);
    const int d = grid.dim();
    if (m < 1)
        throw std::invalid_argument("sigma needs m >= 1");
    std::vector<ScalarField> comps;
    comps.reserve(d * m);
    if (spec.name == "constant") {
        require_args(spec, 1, 1);
        return SigmaField::constant(grid, m, spec.args[0]);
    }
    if (spec.name == "trig") {
        require_args(spec, 0, 0);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < d; ++i)
                comps.push_back(trig_sigma_component(grid, i, k));
    } else if (spec.name == "div-free") {
        require_args(spec, 0, 0);
        if (d < 2)
            throw std::invalid_argument("div-free sigma needs d >= 2");
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < d; ++i)
                comps.push_back(div_free_component(grid, i, k));
    } else if (spec.name == "fourier-decay") {
        require_args(spec, 1, 1);
        const CounterRng rng(seed);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < d; ++i)
                comps.push_back(fourier_decay_component(grid, spec.args[0], rng,
                                                        static_cast<std::uint32_t>(k * d + i)));
    } else {
        throw std::invalid_argument("unknown sigma preset '" + spec.name + "'");
    }
    return SigmaField(d, m, std::move(comps));
}

ScalarField gen_u(const std::string& preset, const GridSpec& grid, const UPresetOptions& options) {
    const PresetSpec spec = PresetSpec::parse(preset);
    const int d = grid.dim();
    if (spec.name == "trig") {
        require_args(spec, 0, 0);
        return ScalarField::sample(grid, [d](const std::array<double, 3>& x) {
            double v = 0.5 + std::cos(two_pi * x[0]) + 0.5 * std::sin(2.0 * two_pi * x[d - 1]);
            if (d >= 2)
                v += 0.3 * std::cos(two_pi * (x[0] + x[1]));
            return v;
        });
    }
    if (spec.name == "constant") {
        require_args(spec, 1, 1);
        return ScalarField::constant(grid, spec.args[0]);
    }
    if (spec.name == "box-indicator") {
        require_args(spec, 0, 2);
        return box_indicator(grid, arg_or(spec, 0, 0.25), arg_or(spec, 1, 0.75));
    }
    if (spec.name == "random-box") {
        require_args(spec, 0, 0);
        const CounterRng rng(options.seed);
        const double a = 0.1 + 0.3 * rng.uniform(0, 0, 7);
        const double b = a + 0.2 + 0.3 * rng.uniform(1, 0, 7);
        return box_indicator(grid, a, b);
    }
    if (spec.name == "power-singularity") {
        require_args(spec, 1, 1);
        const double alpha = spec.args[0];
        const double cap = options.cap;
        if (!(alpha > 0.0))
            throw std::invalid_argument("power-singularity needs alpha > 0");
        if (options.p && alpha * *options.p >= d)
            throw std::invalid_argument("power-singularity with alpha*p >= d is not in L^p");
        return ScalarField::sample(grid, [=](const std::array<double, 3>& x) {
            double r2 = 0.0;
            for (int i = 0; i < d; ++i)
                r2 += (x[i] - 0.5) * (x[i] - 0.5);
            if (r2 == 0.0)
                return cap;
            return std::min(cap, std::pow(r2, -0.5 * alpha));
        });
    }
    throw std::invalid_argument("unknown u preset '" + spec.name + "'");
}

ScalarField gen_phi(const std::string& preset, const GridSpec& grid) {
    const PresetSpec spec = PresetSpec::parse(preset);
    if (spec.name == "one")
        return ScalarField::constant(grid, 1.0);
    if (spec.name == "zero")
        return ScalarField(grid);
    if (spec.name == "constant") {
        require_args(spec, 1, 1);
        return ScalarField::constant(grid, spec.args[0]);
    }
    if (spec.name == "trig")
        return ScalarField::sample(grid, [](const std::array<double, 3>& x) {
            return 1.0 + 0.5 * std::sin(two_pi * x[0]);
        });
    throw std::invalid_argument("unknown phi preset '" + spec.name + "'");
}

double power_singularity_lp_norm(double alpha, double p, double cap) {
    if (alpha * p >= 1.0)
        throw std::invalid_argument("alpha*p >= 1: not in L^p");
    // The cap is active for |x - 1/2| < r_cap.
    const double r_cap = std::min(0.5, std::pow(cap, -1.0 / alpha));
    const double e = 1.0 - alpha * p;
    const double integral =
        2.0 * (std::pow(cap, p) * r_cap + (std::pow(0.5, e) - std::pow(r_cap, e)) / e);
    return std::pow(integral, 1.0 / p);
}

}  // namespace renormal
