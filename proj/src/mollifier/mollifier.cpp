#include "renormal/mollifier.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "renormal/errors.hpp"

namespace renormal {

namespace {

double profile(KernelKind kind, double r) {
    if (r >= 1.0)
        return 0.0;
    switch (kind) {
        case KernelKind::bump: return std::exp(-1.0 / (1.0 - r * r));
        case KernelKind::truncated_gaussian: return std::exp(-4.5 * r * r);
    }
    return 0.0;
}

double displacement_norm(const GridSpec& grid, const std::array<int, 3>& idx) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double z = grid.displacement(idx[a]);
        r2 += z * z;
    }
    return std::sqrt(r2);
}

double sequential_sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s;
}

}  // namespace

KernelKind parse_kernel_kind(const std::string& name) {
    if (name == "bump")
        return KernelKind::bump;
    if (name == "truncated-gaussian")
        return KernelKind::truncated_gaussian;
    throw std::invalid_argument("unknown kernel kind '" + name + "'");
}

std::string to_string(KernelKind kind) {
    return kind == KernelKind::bump ? "bump" : "truncated-gaussian";
}

MollifierKernel::MollifierKernel(KernelKind kind, double width, ScalarField samples)
    : kind_(kind), width_(width), samples_(std::move(samples)), spectrum_(forward_transform(samples_)) {}

double MollifierKernel::mass() const {
    return grid().cell_volume() * sequential_sum(samples_.values());
}

double MollifierKernel::evenness_residual() const {
    const GridSpec& g = grid();
    const int N = g.points_per_axis();
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto mirror = g.unflatten(i);
        for (int a = 0; a < g.dim(); ++a)
            mirror[a] = (N - mirror[a]) % N;
        worst = std::max(worst, std::abs(samples_[i] - samples_[g.flatten(mirror)]));
    }
    return worst;
}

MollifierKernel build_kernel(KernelKind kind, double delta, const GridSpec& grid) {
    if (!(delta >= 8.0 * grid.spacing()))
        throw KernelResolutionError("under-resolved kernel: delta < 8h");
    if (delta > 0.25)
        throw KernelResolutionError("support exceeds torus: delta > 1/4");

    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = profile(kind, displacement_norm(grid, grid.unflatten(i)) / delta);

    // h^d is a power of two, so unit mass means the plain sum equals N^d
    // exactly. Scale, then absorb the rounding residue into the center node,
    // which is its own mirror image and keeps the kernel even.
    const double target = static_cast<double>(grid.size());
    const double scale = target / sequential_sum(values);
    for (double& v : values)
        v *= scale;
    for (int iter = 0; iter < 16; ++iter) {
        const double residue = target - sequential_sum(values);
        if (residue == 0.0)
            break;
        values[0] += residue;
    }
    return MollifierKernel(kind, delta, ScalarField(grid, std::move(values)));
}

ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel) {
    require_same_grid(f.grid(), kernel.grid(), "mollify");
    return circular_convolution(f, kernel.spectrum());
}

VectorFieldM mollify(const VectorFieldM& f, const MollifierKernel& kernel) {
    std::vector<ScalarField> out;
    for (const auto& c : f.all())
        out.push_back(mollify(c, kernel));
    return VectorFieldM(std::move(out));
}

ScalarField direct_convolution(const ScalarField& f, const ScalarField& kernel) {
    const GridSpec& grid = f.grid();
    require_same_grid(grid, kernel.grid(), "direct_convolution");
    if (grid.size() > direct_convolution_max_nodes)
        throw std::length_error("direct_convolution cost guard: N^d exceeds 2^16");
    const int N = grid.points_per_axis();
    const int d = grid.dim();
    const std::size_t n = grid.size();
    std::vector<std::array<int, 3>> idx(n);
    for (std::size_t i = 0; i < n; ++i)
        idx[i] = grid.unflatten(i);
    std::vector<double> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        double s = 0.0;
        for (std::size_t y = 0; y < n; ++y) {
            std::array<int, 3> diff{0, 0, 0};
            for (int a = 0; a < d; ++a)
                diff[a] = (idx[x][a] - idx[y][a] + N) % N;
            s += kernel[grid.flatten(diff)] * f[y];
        }
        out[x] = s * grid.cell_volume();
    }
    return ScalarField(grid, std::move(out));
}

ScalarField direct_convolution(const ScalarField& f, const MollifierKernel& kernel) {
    return direct_convolution(f, kernel.samples());
}

ScalarField kernel_derivative(const MollifierKernel& kernel, int i) {
    Spectrum s = kernel.spectrum();
    apply_derivative_symbol(kernel.grid(), s, i);
    return inverse_transform(kernel.grid(), s);
}

ScalarField kernel_second_derivative(const MollifierKernel& kernel, int i, int j) {
    Spectrum s = kernel.spectrum();
    apply_second_derivative_symbol(kernel.grid(), s, i, j);
    return inverse_transform(kernel.grid(), s);
}

double first_moment(const MollifierKernel& kernel, int axis) {
    const GridSpec& g = kernel.grid();
    if (axis < 0 || axis >= g.dim())
        throw std::invalid_argument("axis out of range");
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n)
        s += g.displacement(g.unflatten(n)[axis]) * kernel.samples()[n];
    return s * g.cell_volume();
}

double weighted_moment_first(const MollifierKernel& kernel, int i) {
    const GridSpec& g = kernel.grid();
    const ScalarField dj = kernel_derivative(kernel, i);
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n)
        s += displacement_norm(g, g.unflatten(n)) * std::abs(dj[n]);
    return s * g.cell_volume();
}

double second_moment_matrix(const MollifierKernel& kernel, int i, int j, int a, int b) {
    const GridSpec& g = kernel.grid();
    for (int axis : {i, j, a, b})
        if (axis < 0 || axis >= g.dim())
            throw std::invalid_argument("axis out of range");
    const ScalarField d2 = kernel_second_derivative(kernel, i, j);
    double s = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const auto idx = g.unflatten(n);
        s += g.displacement(idx[a]) * g.displacement(idx[b]) * d2[n];
    }
    return s * g.cell_volume();
}

std::vector<double> delta_ladder(int k_min, int k_max) {
    if (k_min > k_max)
        throw std::invalid_argument("empty delta ladder");
    std::vector<double> out;
    for (int k = k_min; k <= k_max; ++k)
        out.push_back(std::ldexp(1.0, -k));
    return out;
}

int finest_ladder_k(const GridSpec& grid) {
    int k = 2;
    while (std::ldexp(1.0, -(k + 1)) >= 8.0 * grid.spacing())
        ++k;
    return k;
}

void write_kernel_csv(const std::filesystem::path& path, const MollifierKernel& kernel) {
    const GridSpec& g = kernel.grid();
    if (g.dim() != 1)
        throw std::invalid_argument("kernel CSV dump is one-dimensional only");
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "z,J\n";
    const int N = g.points_per_axis();
    char buf[64];
    for (int step = 0; step < N; ++step) {
        const int n = (step + N / 2) % N;  // z ascending from -1/2
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.displacement(n), kernel.samples()[n]);
        out << buf;
    }
}

}  // namespace renormal
