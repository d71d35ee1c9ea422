#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "renormal/field.hpp"
#include "renormal/spectral.hpp"

namespace renormal {

enum class KernelKind { bump, truncated_gaussian };

KernelKind parse_kernel_kind(const std::string& name);
std::string to_string(KernelKind kind);

/// Discrete Friedrichs mollifier J_delta sampled on the grid around the
/// origin (minimal-image displacements) and renormalized to unit discrete
/// mass. Nonnegative, even on the grid, supported in |z| < delta.
class MollifierKernel {
public:
    const GridSpec& grid() const { return samples_.grid(); }
    double width() const { return width_; }
    KernelKind kind() const { return kind_; }
    const ScalarField& samples() const { return samples_; }
    /// Unnormalized DFT of the samples.
    const Spectrum& spectrum() const { return spectrum_; }

    /// h^d times the sequential sum of the samples; equals 1.0 exactly.
    double mass() const;
    /// max |J(z) - J(-z)| over the grid.
    double evenness_residual() const;

private:
    friend MollifierKernel build_kernel(KernelKind, double, const GridSpec&);
    MollifierKernel(KernelKind kind, double width, ScalarField samples);

    KernelKind kind_;
    double width_;
    ScalarField samples_;
    Spectrum spectrum_;
};

/// Smallest resolvable width is 8h; the support must fit the torus
/// (delta <= 1/4). Violations throw KernelResolutionError with
/// "under-resolved kernel" / "support exceeds torus".
MollifierKernel build_kernel(KernelKind kind, double delta, const GridSpec& grid);

/// J_delta f through the transform path.
ScalarField mollify(const ScalarField& f, const MollifierKernel& kernel);
VectorFieldM mollify(const VectorFieldM& f, const MollifierKernel& kernel);

/// Largest number of nodes accepted by the quadratic-cost oracle.
inline constexpr std::size_t direct_convolution_max_nodes = std::size_t{1} << 16;

/// Literal double sum h^d sum_y kernel(x - y) f(y). Reference semantics for
/// circular_convolution; throws std::length_error above the cost guard.
ScalarField direct_convolution(const ScalarField& f, const ScalarField& kernel);
ScalarField direct_convolution(const ScalarField& f, const MollifierKernel& kernel);

/// Spectral derivative of the sampled kernel along axis i.
ScalarField kernel_derivative(const MollifierKernel& kernel, int i);
/// Spectral second derivative of the sampled kernel.
ScalarField kernel_second_derivative(const MollifierKernel& kernel, int i, int j);

/// h^d sum z_axis J(z); vanishes for an even kernel.
double first_moment(const MollifierKernel& kernel, int axis);
/// h^d sum |z| |d_i J(z)|, the weighted L^1 norm that stays O(1) in delta.
double weighted_moment_first(const MollifierKernel& kernel, int i);
/// h^d sum z_a z_b d^2_{ij} J(z); tends to delta_ia delta_jb + delta_ja delta_ib.
double second_moment_matrix(const MollifierKernel& kernel, int i, int j, int a, int b);

/// Widths 2^-k for k = k_min..k_max (descending widths).
std::vector<double> delta_ladder(int k_min, int k_max);
/// Largest k with 2^-k >= 8h.
int finest_ladder_k(const GridSpec& grid);

/// CSV "z,J" of a one-dimensional kernel, z in [-1/2, 1/2).
void write_kernel_csv(const std::filesystem::path& path, const MollifierKernel& kernel);

}  // namespace renormal
