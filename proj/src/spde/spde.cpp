#include "renormal/spde.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "renormal/errors.hpp"
#include "renormal/field_io.hpp"
#include "renormal/norms.hpp"
#include "renormal/operators.hpp"
#include "renormal/workers.hpp"

namespace renormal {

DriftSpec DriftSpec::linear_divergence(std::vector<ScalarField> b) {
    if (b.empty())
        throw std::invalid_argument("linear-divergence drift needs a velocity field");
    const GridSpec& grid = b.front().grid();
    if (static_cast<int>(b.size()) != grid.dim())
        throw std::invalid_argument("drift velocity needs one component per axis");
    for (const auto& c : b)
        require_same_grid(grid, c.grid(), "drift velocity");
    return DriftSpec(Kind::linear_divergence, std::move(b));
}

ScalarField DriftSpec::apply(const ScalarField& u, const Discretization& disc) const {
    if (kind_ == Kind::zero)
        return ScalarField(u.grid());
    require_same_grid(u.grid(), b_.front().grid(), "drift");
    std::vector<ScalarField> flux;
    for (const auto& b : b_)
        flux.push_back(b * u);
    return divergence(flux, disc);
}

void validate_state(const SpdeState& state) {
    require_same_grid(state.u.grid(), state.sigma.grid(), "SPDE state");
    if (state.drift.kind() == DriftSpec::Kind::linear_divergence)
        require_same_grid(state.u.grid(), state.drift.velocity().front().grid(), "SPDE drift");
}

double cfl_dt(const SigmaField& sigma) {
    const double h = sigma.grid().spacing();
    return 0.1 * h * h / std::max(1.0, sigma.max_frobenius_squared());
}

namespace {

void check_step(const SpdeState& state, std::span<const double> dW, double dt) {
    validate_state(state);
    if (static_cast<int>(dW.size()) != state.sigma.columns())
        throw std::invalid_argument("increment count does not match the number of Brownian components");
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be positive");
    const double limit = cfl_dt(state.sigma);
    if (dt > limit) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "time step %.6g exceeds the stability bound %.6g", dt, limit);
        throw CflViolation(buf);
    }
}

// -F dt
ScalarField drift_increment(const SpdeState& s, const ScalarField& u, double dt, const Discretization& disc) {
    return (-dt) * s.drift.apply(u, disc);
}

// -F dt - (K u)_k dB_k
ScalarField increment(const SpdeState& s, const ScalarField& u, std::span<const double> dW, double dt,
                      const Discretization& disc) {
    ScalarField a = drift_increment(s, u, dt, disc);
    const VectorFieldM ku = apply_K_scalar(s.sigma, u, disc);
    for (int k = 0; k < ku.components(); ++k)
        a = a - dW[k] * ku[k];
    return a;
}

SpdeState advanced(const SpdeState& s, ScalarField u, double dt) {
    return SpdeState{s.t + dt, std::move(u), s.sigma, s.drift};
}

}  // namespace

SpdeState step_ito(const SpdeState& state, std::span<const double> dW, double dt, const Discretization& disc) {
    check_step(state, dW, dt);
    const ScalarField& u = state.u;
    return advanced(state, u + increment(state, u, dW, dt, disc) + dt * ito_correction(state.sigma, u, disc), dt);
}

SpdeState step_strat_heun(const SpdeState& state, std::span<const double> dW, double dt,
                          const Discretization& disc) {
    check_step(state, dW, dt);
    const ScalarField& u = state.u;
    const ScalarField a0 = increment(state, u, dW, dt, disc);
    const ScalarField predictor = u + a0;
    const ScalarField a1 = increment(state, predictor, dW, dt, disc);
    return advanced(state, u + 0.5 * (a0 + a1), dt);
}

SpdeState step_drift_euler(const SpdeState& state, double dt, const Discretization& disc) {
    validate_state(state);
    return advanced(state, state.u + drift_increment(state, state.u, dt, disc), dt);
}

SpdeState step_drift_heun(const SpdeState& state, double dt, const Discretization& disc) {
    validate_state(state);
    const ScalarField& u = state.u;
    const ScalarField a0 = drift_increment(state, u, dt, disc);
    const ScalarField a1 = drift_increment(state, u + a0, dt, disc);
    return advanced(state, u + 0.5 * (a0 + a1), dt);
}

Stepper parse_stepper(const std::string& name) {
    if (name == "ito")
        return Stepper::ito;
    if (name == "stratonovich" || name == "strat-heun")
        return Stepper::stratonovich;
    throw std::invalid_argument("unknown stepper: " + name);
}

std::string to_string(Stepper stepper) { return stepper == Stepper::ito ? "ito" : "stratonovich"; }

namespace {

SpdeState one_step(const SpdeState& s, const BrownianDriver& driver, int n, Stepper stepper,
                   const Discretization& disc) {
    return stepper == Stepper::ito ? step_ito(s, driver.increment(n), driver.dt(), disc)
                                   : step_strat_heun(s, driver.increment(n), driver.dt(), disc);
}

}  // namespace

SpdeState integrate(SpdeState state, const BrownianDriver& driver, Stepper stepper, const Discretization& disc) {
    for (int n = 0; n < driver.steps(); ++n)
        state = one_step(state, driver, n, stepper, disc);
    return state;
}

std::vector<TrajectoryRow> run_trajectory(SpdeState state, const BrownianDriver& driver, Stepper stepper,
                                          const TrajectoryOptions& options, const Discretization& disc) {
    if (options.snapshot_every < 1)
        throw std::invalid_argument("snapshot_every must be >= 1");
    if (!options.out_dir.empty())
        std::filesystem::create_directories(options.out_dir);
    std::vector<TrajectoryRow> rows;
    auto record = [&](const SpdeState& s) {
        if (!options.out_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "snapshot_%06zu.bin", rows.size());
            write_fields_binary(options.out_dir / name, {s.u});
        }
        rows.push_back({s.t, mean(s.u), lq_norm(s.u, Exponent::finite(2.0)), lq_norm(s.u, Exponent::infinity()),
                        lq_norm(s.u, options.p)});
    };
    record(state);
    for (int n = 0; n < driver.steps(); ++n) {
        state = one_step(state, driver, n, stepper, disc);
        if ((n + 1) % options.snapshot_every == 0 || n + 1 == driver.steps())
            record(state);
    }
    if (!options.out_dir.empty()) {
        std::ofstream csv(options.out_dir / "timeseries.csv");
        if (!csv)
            throw std::runtime_error("cannot write " + (options.out_dir / "timeseries.csv").string());
        csv << "t,mean,l2,linf,lp\n";
        char buf[160];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mean, r.l2, r.linf, r.lp);
            csv << buf;
        }
    }
    return rows;
}

AprioriEstimate estimate_apriori(const SpdeState& initial, const AprioriConfig& config, const Discretization& disc) {
    if (config.paths < 2)
        throw std::invalid_argument("a-priori estimate needs at least two paths");
    if (!(config.horizon > 0.0))
        throw std::invalid_argument("horizon must be positive");
    validate_state(initial);
    const Exponent p = Exponent::finite(config.p);
    double dt = cfl_dt(initial.sigma);
    if (config.dt > 0.0)
        dt = std::min(dt, config.dt);
    const int steps = static_cast<int>(std::ceil(config.horizon / dt - 1e-9));
    dt = config.horizon / steps;

    std::vector<double> per_path(config.paths);
    parallel_for(static_cast<std::size_t>(config.paths), [&](std::size_t path) {
        const BrownianDriver driver =
            sample_increments(initial.sigma.columns(), steps, dt, config.seed, static_cast<std::uint64_t>(path));
        SpdeState s = initial;
        double acc = 0.0;
        for (int n = 0; n < steps; ++n) {
            acc += std::pow(lq_norm(s.u, p), config.p);
            s = one_step(s, driver, n, config.stepper, disc);
        }
        per_path[path] = dt * acc;
    });

    // Running mean: exact when every path gives the same value (sigma = 0).
    double est = 0.0;
    for (std::size_t n = 0; n < per_path.size(); ++n)
        est += (per_path[n] - est) / static_cast<double>(n + 1);
    double var = 0.0;
    for (double v : per_path)
        var += (v - est) * (v - est);
    var /= (config.paths - 1);
    return AprioriEstimate{est, std::sqrt(var / config.paths), config.paths, steps, dt, std::move(per_path)};
}

}  // namespace renormal
