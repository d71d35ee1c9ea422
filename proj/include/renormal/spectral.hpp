#pragma once

#include <complex>
#include <vector>

#include "renormal/field.hpp"

namespace renormal {

enum class DerivativeBackend { spectral, centered2 };

/// Discretization switches shared by the differential operators.
struct Discretization {
    DerivativeBackend backend = DerivativeBackend::spectral;
    /// Apply the 2/3-rule filter to products before differentiating them.
    bool dealias = false;
};

using Spectrum = std::vector<std::complex<double>>;

/// Unnormalized forward DFT (FFTW sign -1).
Spectrum forward_transform(const ScalarField& f);
/// Normalized inverse DFT; keeps the real part.
ScalarField inverse_transform(const GridSpec& grid, const Spectrum& spectrum);

/// Signed mode number of DFT index n: n for n < N/2, n - N otherwise.
/// The Nyquist index N/2 maps to -N/2.
int mode_number(const GridSpec& grid, int n);

/// In-place multiplication by the symbol of d/dx_axis. The Nyquist mode of
/// the differentiated axis is zeroed so the result stays real.
void apply_derivative_symbol(const GridSpec& grid, Spectrum& spectrum, int axis);
/// In-place multiplication by the symbol of d^2/dx_i dx_j. For i == j this is
/// -(2 pi k_i)^2 with the Nyquist mode kept; for i != j it is the product of
/// the two first-derivative symbols.
void apply_second_derivative_symbol(const GridSpec& grid, Spectrum& spectrum, int i, int j);

/// Periodic derivative along axis. The spectral backend is exact for
/// trigonometric polynomials below the Nyquist mode; centered2 is the
/// second-order centered difference.
ScalarField derivative(const ScalarField& f, int axis,
                       DerivativeBackend backend = DerivativeBackend::spectral);
ScalarField second_derivative(const ScalarField& f, int i, int j);

/// (kernel * f)(x) = h^d sum_y kernel(x - y) f(y), evaluated through the DFT.
ScalarField circular_convolution(const ScalarField& f, const ScalarField& kernel);
/// Same as circular_convolution with a kernel spectrum computed ahead of time.
ScalarField circular_convolution(const ScalarField& f, const Spectrum& kernel_spectrum);

/// Zeroes every mode with |k_a| > N/3 on any axis.
ScalarField two_thirds_filter(const ScalarField& f);

/// Largest |k|_inf carried by f above a relative threshold; used to report
/// band limits of presets.
int spectral_bandwidth(const ScalarField& f, double rel_threshold = 1e-12);

}  // namespace renormal
