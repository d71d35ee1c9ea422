#pragma once

#include "renormal/config.hpp"
#include "renormal/report.hpp"

namespace renormal {

/// Largest grid for which the harness runs the quadratic-cost oracle next to
/// the transform path.
inline constexpr std::size_t oracle_max_nodes = 4096;

/// Executes the configured experiment. With write_artifacts, the report (and
/// for spde-run the trajectory) lands in config.output.
///
/// Errors keep distinct types: ConfigError for schema problems,
/// KernelResolutionError / CflViolation (both PreconditionError) for
/// numerical preconditions.
ConvergenceReport run(const ExperimentConfig& config, bool write_artifacts = true);

/// u0(x - shift) for a band-limited u0, via the Fourier shift theorem.
ScalarField spectral_shift(const ScalarField& u0, const std::array<double, 3>& shift);

}  // namespace renormal
