#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "renormal/field.hpp"

namespace renormal {

/// A preset string split into its name and numeric arguments, e.g.
/// "box-indicator 0.25 0.75" -> {"box-indicator", {0.25, 0.75}}.
struct PresetSpec {
    std::string name;
    std::vector<double> args;

    static PresetSpec parse(const std::string& text);
    std::string to_string() const;
};

/// Noise coefficient presets:
///   "constant c"        sigma_ik = c
///   "trig"              finite trigonometric polynomials, not divergence-free;
///                       d=1: sin(2 pi x + k pi/3); d>=2, column k:
///                       (sin(2 pi x1 + k pi/3) sin(2 pi x2), cos(2 pi x1 + k pi/3), ...)
///   "div-free"          d>=2, each column the rotation of a stream function
///   "fourier-decay s"   random coefficients with |k|^(-s-d) decay, |k|_inf <= min(N/8, 8)
/// Throws std::invalid_argument for an unknown preset.
SigmaField gen_sigma(const std::string& preset, const GridSpec& grid, int m, std::uint64_t seed = 0);

struct UPresetOptions {
    std::uint64_t seed = 0;
    /// Cap applied to singular presets to keep samples finite.
    double cap = 1e6;
    /// When set, singular presets outside L^p are rejected.
    std::optional<double> p;
};

/// Scalar data presets:
///   "trig"                   band-limited smooth data
///   "constant c"
///   "box-indicator a b"      product of 1[a <= x_i < b] (defaults a=1/4, b=3/4)
///   "random-box"             box with endpoints drawn from the seed
///   "power-singularity a"    min(cap, |x - 1/2|^-a); rejected when a*p >= d
ScalarField gen_u(const std::string& preset, const GridSpec& grid, const UPresetOptions& options = {});

/// Test-function presets: "one", "zero", "constant c", "trig" (1 + sin(2 pi x1)/2).
ScalarField gen_phi(const std::string& preset, const GridSpec& grid);

/// Exact L^p norm over the circle of min(cap, |x - 1/2|^-alpha), d = 1.
double power_singularity_lp_norm(double alpha, double p, double cap);

}  // namespace renormal
