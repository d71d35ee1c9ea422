// Command-line front end for the commutator and SPDE experiments.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 configuration error,
// 3 numerical precondition failure (unresolved kernel, stability bound).

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "renormal/errors.hpp"
#include "renormal/experiments.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<int> N;
    std::optional<int> delta_min_k;
    std::optional<int> delta_max_k;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool quiet = false;
};

void print_summary(const renormal::ConvergenceReport& r) {
    std::printf("experiment: %s\n", r.experiment.c_str());
    for (std::size_t c = 0; c < r.columns.size(); ++c)
        std::printf("%s%16s", c ? " " : "", r.columns[c].c_str());
    std::printf("\n");
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            std::printf("%s%16.8e", c ? " " : "", row[c]);
        std::printf("\n");
    }
    for (const auto& f : r.fits)
        std::printf("fit %-10s %-10s slope %.4f +- %.4f  R2 %.6f\n", f.quantity.c_str(), f.fit.status.c_str(),
                    f.fit.slope, f.fit.stderr_, f.fit.r2);
    for (const auto& v : r.verdicts)
        std::printf("verdict %-28s %-16s measured %.6g threshold %.6g  (%s)\n", v.name.c_str(), v.status.c_str(),
                    v.measured, v.threshold, v.detail.c_str());
    std::printf("overall: %s\n", r.overall.c_str());
}

int execute(const Overrides& o, const std::set<renormal::ExperimentKind>& accepted, const std::string& command) {
    using namespace renormal;
    try {
        ExperimentConfig config = load_config(o.config);
        if (!accepted.count(config.experiment))
            throw ConfigError("subcommand '" + command + "' cannot run experiment '" + to_string(config.experiment) +
                              "'");
        if (o.N)
            apply_override(config, "N", std::to_string(*o.N));
        if (o.delta_min_k)
            apply_override(config, "delta_min_k", std::to_string(*o.delta_min_k));
        if (o.delta_max_k)
            apply_override(config, "delta_max_k", std::to_string(*o.delta_max_k));
        if (o.seed)
            apply_override(config, "seed", std::to_string(*o.seed));
        if (o.out)
            apply_override(config, "output", *o.out);

        const ConvergenceReport report = run(config);
        if (!o.quiet)
            print_summary(report);
        return report.overall == "fail" ? 1 : 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "precondition failed: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using renormal::ExperimentKind;
    CLI::App app{"Mollification commutators and gradient-noise transport experiments"};
    app.require_subcommand(1);

    struct Command {
        const char* name;
        const char* help;
        std::set<ExperimentKind> kinds;
    };
    const Command commands[] = {
        {"sweep", "delta-ladder sweep of E2 or the double commutator",
         {ExperimentKind::e2_sweep, ExperimentKind::double_commutator_sweep}},
        {"check-identities", "eight-term decomposition and operator identities", {ExperimentKind::decomposition_check}},
        {"limits", "residuals against the closed-form delta -> 0 limits", {ExperimentKind::limit_residuals}},
        {"theorem3", "entropy-weighted combination of E2 and E3", {ExperimentKind::theorem3_sweep}},
        {"moments", "mollifier moment identities", {ExperimentKind::moment_check}},
        {"simulate", "pathwise SPDE run with time-step refinement", {ExperimentKind::spde_run}},
        {"apriori", "Monte Carlo estimate of the a-priori L^p bound", {ExperimentKind::apriori_mc}},
    };

    Overrides o;
    int status = 0;
    for (const auto& cmd : commands) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->add_option("--config", o.config, "experiment config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--N", o.N, "grid points per axis");
        sub->add_option("--delta-min-k", o.delta_min_k, "first ladder index (largest delta = 2^-k)");
        sub->add_option("--delta-max-k", o.delta_max_k, "last ladder index (smallest delta = 2^-k)");
        sub->add_option("--seed", o.seed, "base seed for random draws");
        sub->add_option("--out", o.out, "output directory");
        sub->add_flag("--quiet", o.quiet, "suppress the summary table");
        sub->callback([&o, &status, &cmd] { status = execute(o, cmd.kinds, cmd.name); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return status;
}
