#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "renormal/exponents.hpp"
#include "renormal/field.hpp"
#include "renormal/spectral.hpp"

namespace renormal {

/// Pre-sampled Brownian increments dB_k for one path, steps x m, each
/// N(0, dt). Draw (step, k) of path P uses Philox index `step`, streams
/// (k, P) under the seed, so Ito and Stratonovich runs can share a path.
class BrownianDriver {
public:
    int components() const { return m_; }
    int steps() const { return steps_; }
    double dt() const { return dt_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t path() const { return path_; }
    /// The m increments of one step.
    std::span<const double> increment(int step) const;
    /// Column k across all steps.
    std::vector<double> column(int k) const;
    /// Same path at twice the step: consecutive increments summed pairwise.
    BrownianDriver coarsened() const;
    /// W_k at the final time.
    double terminal_value(int k) const;

private:
    friend BrownianDriver sample_increments(int, int, double, std::uint64_t, std::uint64_t);
    BrownianDriver(int m, int steps, double dt, std::uint64_t seed, std::uint64_t path, std::vector<double> inc);

    int m_;
    int steps_;
    double dt_;
    std::uint64_t seed_;
    std::uint64_t path_;
    std::vector<double> increments_;
};

/// Throws std::invalid_argument for dt <= 0, m < 1 or steps < 1.
BrownianDriver sample_increments(int m, int steps, double dt, std::uint64_t seed, std::uint64_t path = 0);

/// Drift F[u]: zero, or the divergence-form linear transport d_i(b_i u).
class DriftSpec {
public:
    enum class Kind { zero, linear_divergence };

    static DriftSpec zero() { return DriftSpec(Kind::zero, {}); }
    /// b holds one field per axis.
    static DriftSpec linear_divergence(std::vector<ScalarField> b);

    Kind kind() const { return kind_; }
    const std::vector<ScalarField>& velocity() const { return b_; }
    ScalarField apply(const ScalarField& u, const Discretization& disc = {}) const;

private:
    DriftSpec(Kind kind, std::vector<ScalarField> b) : kind_(kind), b_(std::move(b)) {}
    Kind kind_;
    std::vector<ScalarField> b_;
};

struct SpdeState {
    double t;
    ScalarField u;
    SigmaField sigma;
    DriftSpec drift;
};

/// Checks that u, sigma and the drift share one grid and that sigma has
/// m columns matching the driver.
void validate_state(const SpdeState& state);

/// 0.1 h^2 / max(1, max_x sum_ik sigma_ik^2).
double cfl_dt(const SigmaField& sigma);

/// Euler-Maruyama for du = -F dt - (K u)_k dB_k + 1/2 K K u dt.
/// Throws CflViolation when dt > cfl_dt.
SpdeState step_ito(const SpdeState& state, std::span<const double> dW, double dt, const Discretization& disc = {});
/// Heun predictor-corrector for du = -F dt - (K u)_k o dB_k.
SpdeState step_strat_heun(const SpdeState& state, std::span<const double> dW, double dt,
                          const Discretization& disc = {});

/// Noise-free reference integrators for du = -F dt.
SpdeState step_drift_euler(const SpdeState& state, double dt, const Discretization& disc = {});
SpdeState step_drift_heun(const SpdeState& state, double dt, const Discretization& disc = {});

enum class Stepper { ito, stratonovich };
Stepper parse_stepper(const std::string& name);
std::string to_string(Stepper stepper);

/// Runs every step of the driver.
SpdeState integrate(SpdeState state, const BrownianDriver& driver, Stepper stepper, const Discretization& disc = {});

struct TrajectoryRow {
    double t;
    double mean;
    double l2;
    double linf;
    double lp;
};

struct TrajectoryOptions {
    Exponent p = Exponent::finite(2.0);
    /// Record a row (and a snapshot when out_dir is set) every this many steps.
    int snapshot_every = 1;
    std::filesystem::path out_dir;
};

/// Integrates and records rows at t0 and every snapshot_every steps (and at
/// the end). With out_dir set, writes snapshot_NNNNNN.bin per row plus
/// timeseries.csv with columns t,mean,l2,linf,lp.
std::vector<TrajectoryRow> run_trajectory(SpdeState state, const BrownianDriver& driver, Stepper stepper,
                                          const TrajectoryOptions& options, const Discretization& disc = {});

struct AprioriConfig {
    int paths = 8;
    double horizon = 0.1;
    double p = 2.0;
    /// Requested step; reduced to the CFL bound and adjusted to divide the horizon.
    double dt = 0.0;
    Stepper stepper = Stepper::ito;
    std::uint64_t seed = 0;
};

struct AprioriEstimate {
    double estimate;
    double stderr_;
    int paths;
    int steps;
    double dt;
    std::vector<double> per_path;
};

/// Monte Carlo mean over paths of dt sum_n ||u_n||_p^p, n = 0..steps-1,
/// the left-point quadrature of ||u||^p in L^p([0,T] x T^d). Throws
/// std::invalid_argument for fewer than two paths.
AprioriEstimate estimate_apriori(const SpdeState& initial, const AprioriConfig& config,
                                 const Discretization& disc = {});

}  // namespace renormal
