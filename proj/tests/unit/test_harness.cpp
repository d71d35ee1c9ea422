#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "renormal/config.hpp"
#include "renormal/errors.hpp"
#include "renormal/experiments.hpp"
#include "renormal/report.hpp"
#include "renormal/rng.hpp"

using namespace renormal;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "renormal_harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ConvergenceReport synthetic_report() {
    ConvergenceReport r;
    r.experiment = "e2-sweep";
    r.columns.push_back("norm_inf");
    for (int k = 2; k <= 6; ++k) {
        const double delta = std::ldexp(1.0, -k);
        r.rows.push_back({delta, 3 * delta * delta, k == 6 ? NAN : 1e-15 * k, 10 * delta});
    }
    r.fits.push_back({"norm_q", fit_rate({{0.25, 0.1875}, {0.125, 0.046875}, {0.0625, 0.01171875}})});
    r.metadata = {{"d", "1"}, {"N", "1024"}, {"sigma", "trig"}};
    r.verdicts.push_back({"slope_min", "pass", 2.0, 1.5, "fitted slope of norm_q"});
    r.conclude();
    return r;
}

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + RENORMAL_CLI + "\" " + args + " --quiet > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
    const fs::path p = dir / "run.cfg";
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(Config, ParsesKeysCommentsAndVerdicts) {
    const ExperimentConfig c = parse_config(
        "# comment\nschema_version = 1\nexperiment = limit-residuals\nd = 2\nN = 64\nsigma = fourier-decay 2\n"
        "q = 2  # trailing\ndelta_min_k = 3\ndelta_max_k = 5\nverdict.slope_min = 1.7\n");
    EXPECT_EQ(c.experiment, ExperimentKind::limit_residuals);
    EXPECT_EQ(c.d, 2);
    EXPECT_EQ(c.N, 64);
    EXPECT_EQ(c.sigma, "fourier-decay 2");
    EXPECT_EQ(c.q, 2.0);
    EXPECT_EQ(c.verdicts.at("slope_min"), 1.7);
    EXPECT_EQ(c.ladder(), (std::vector<double>{0.125, 0.0625, 0.03125}));
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config("experiment = e2-sweep\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 2\nexperiment = e2-sweep\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 1\nexperiment = e2-sweep\nbogus = 3\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 1\nexperiment = e2-sweep\nN = 64\nN = 128\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 1\nexperiment = nope\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 1\nexperiment = e2-sweep\nN = sixty\n"), ConfigError);
    EXPECT_THROW(parse_config("schema_version = 1\nexperiment = e2-sweep\ndelta_min_k = 5\ndelta_max_k = 3\n"),
                 ConfigError);
    EXPECT_THROW(load_config("/nonexistent/renormal.cfg"), ConfigError);
}

TEST(Config, Overrides) {
    ExperimentConfig c = parse_config("schema_version = 1\nexperiment = e2-sweep\n");
    apply_override(c, "N", "512");
    apply_override(c, "seed", "99");
    apply_override(c, "delta_max_k", "7");
    EXPECT_EQ(c.N, 512);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.delta_max_k, 7);
    EXPECT_THROW(apply_override(c, "unknown", "1"), ConfigError);
}

TEST(FitRate, ExactPowerData) {
    std::vector<std::pair<double, double>> pts;
    for (int k = 2; k <= 6; ++k) {
        const double d = std::ldexp(1.0, -k);
        pts.emplace_back(d, d * d);
    }
    const RateFit f = fit_rate(pts);
    EXPECT_EQ(f.status, "ok");
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_EQ(f.points, 5);
}

TEST(FitRate, ConstantData) {
    const RateFit f = fit_rate({{0.5, 3.0}, {0.25, 3.0}, {0.125, 3.0}});
    EXPECT_NEAR(f.slope, 0.0, 1e-15);
}

TEST(FitRate, NoisyPowerData) {
    const CounterRng rng(2024);
    std::vector<std::pair<double, double>> pts;
    for (int k = 2; k <= 8; ++k) {
        const double d = std::ldexp(1.0, -k);
        pts.emplace_back(d, std::pow(d, 1.5) * (1 + 0.01 * rng.normal(k)));
    }
    const RateFit f = fit_rate(pts);
    EXPECT_GE(f.slope, 1.4);
    EXPECT_LE(f.slope, 1.6);
}

TEST(FitRate, DegenerateInputs) {
    EXPECT_THROW(fit_rate({{0.5, 1.0}, {0.25, 0.5}}), std::invalid_argument);
    const RateFit f = fit_rate({{0.5, 1.0}, {0.25, 0.0}, {0.125, 0.1}});
    EXPECT_EQ(f.status, "no-rate");
    EXPECT_TRUE(std::isnan(f.slope));
}

TEST(Report, JsonRoundTrip) {
    const ConvergenceReport r = synthetic_report();
    const ConvergenceReport back = report_from_json(nlohmann::ordered_json::parse(report_json(r).dump()));
    EXPECT_TRUE(same_report(r, back));
    EXPECT_EQ(back.overall, "pass");
    EXPECT_TRUE(std::isnan(back.rows.back()[2]));
}

TEST(Report, CsvHeaderAndMissingValues) {
    const std::string csv = report_csv(synthetic_report());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "delta,norm_q,oracle_absdiff,norm_inf");
    EXPECT_NE(csv.find(",nan,"), std::string::npos);
}

TEST(Report, SvgMatchesGolden) {
    const std::string svg = report_svg(synthetic_report());
    const fs::path golden = fs::path(RENORMAL_GOLDEN_DIR) / "report.svg";
    if (std::getenv("RENORMAL_UPDATE_GOLDEN"))
        std::ofstream(golden, std::ios::binary) << svg;
    ASSERT_TRUE(fs::exists(golden)) << "run once with RENORMAL_UPDATE_GOLDEN=1";
    EXPECT_EQ(svg, slurp(golden));
    // One series per measured quantity plus the fitted line.
    std::size_t series = 0;
    for (std::size_t at = svg.find("class=\"series\""); at != std::string::npos;
         at = svg.find("class=\"series\"", at + 1))
        ++series;
    EXPECT_EQ(series, 2u);
    EXPECT_NE(svg.find("class=\"fit\""), std::string::npos);
}

TEST(Report, ConcludeStates) {
    ConvergenceReport r;
    r.conclude();
    EXPECT_EQ(r.overall, "unchecked");
    r.verdicts = {{"a", "pass", 0, 0, ""}};
    r.conclude();
    EXPECT_EQ(r.overall, "pass");
    // A degenerate verdict is surfaced rather than folded into a plain pass.
    r.verdicts.push_back({"b", "degenerate-pass", 0, 0, ""});
    r.conclude();
    EXPECT_EQ(r.overall, "degenerate-pass");
    r.verdicts.push_back({"c", "fail", 0, 0, ""});
    r.conclude();
    EXPECT_EQ(r.overall, "fail");
}

TEST(Run, ConstantSigmaIsDegeneratePass) {
    ExperimentConfig c = load_config(fs::path(RENORMAL_CONFIG_DIR) / "e2_constant_sigma.cfg");
    const ConvergenceReport r = run(c, false);
    for (double v : r.values("norm_q"))
        EXPECT_LE(v, 1e-12);
    ASSERT_FALSE(r.fits.empty());
    EXPECT_EQ(r.overall, "degenerate-pass");
}

TEST(Run, DecompositionCheckPasses) {
    ExperimentConfig c = load_config(fs::path(RENORMAL_CONFIG_DIR) / "decomposition.cfg");
    const ConvergenceReport r = run(c, false);
    for (double v : r.values("identity_residual"))
        EXPECT_LE(v, 1e-10);
    EXPECT_EQ(r.overall, "pass");
}

TEST(Run, DoubleCommutatorSweep) {
    ExperimentConfig c = load_config(fs::path(RENORMAL_CONFIG_DIR) / "double_commutator.cfg");
    ASSERT_EQ(c.N, 1024);
    ASSERT_EQ(c.q, 1.0);
    const ConvergenceReport r = run(c, false);
    const auto v = r.values("norm_q");
    for (std::size_t i = 1; i < v.size(); ++i)
        EXPECT_LT(v[i], v[i - 1]);
    EXPECT_LE(v.back() / v.front(), 0.1);
    EXPECT_EQ(r.overall, "pass");
}

TEST(Run, ReportCarriesSigmaNorms) {
    ExperimentConfig c = load_config(fs::path(RENORMAL_CONFIG_DIR) / "e2_sweep.cfg");
    const ConvergenceReport r = run(c, false);
    bool found = false;
    for (const auto& [k, v] : r.metadata)
        found = found || k.starts_with("sigma_W2_");
    EXPECT_TRUE(found);
}

TEST(Run, ByteIdenticalArtifacts) {
    ExperimentConfig c = load_config(fs::path(RENORMAL_CONFIG_DIR) / "limits.cfg");
    c.N = 1024;
    c.delta_max_k = 6;
    c.output = scratch("det_a");
    run(c);
    c.output = scratch("det_b");
    run(c);
    for (const char* f : {"report.csv", "report.json"}) {
        const std::string a = slurp(fs::temp_directory_path() / "renormal_harness" / "det_a" / f);
        EXPECT_FALSE(a.empty());
        EXPECT_EQ(a, slurp(c.output / f)) << f;
    }
}

TEST(Run, Preconditions) {
    ExperimentConfig c = parse_config("schema_version = 1\nexperiment = e2-sweep\nN = 64\ndelta_max_k = 6\n");
    EXPECT_THROW(run(c, false), KernelResolutionError);
}

TEST(Cli, ExitCodes) {
    const fs::path dir = scratch("cli");
    const std::string out = " --out \"" + (dir / "out").string() + "\"";
    const std::string cfg = std::string(RENORMAL_CONFIG_DIR);
    EXPECT_EQ(cli("sweep --config \"" + cfg + "/e2_sweep.cfg\" --N 512" + out), 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));

    const fs::path strict = write_config(
        dir, "schema_version = 1\nexperiment = e2-sweep\nN = 256\ndelta_min_k = 2\ndelta_max_k = 5\n"
             "verdict.slope_min = 10\n");
    EXPECT_EQ(cli("sweep --config \"" + strict.string() + "\"" + out), 1);

    const fs::path bad = write_config(dir, "schema_version = 1\nexperiment = e2-sweep\ncolour = blue\n");
    EXPECT_EQ(cli("sweep --config \"" + bad.string() + "\"" + out), 2);
    EXPECT_EQ(cli("sweep --config \"" + cfg + "/apriori.cfg\"" + out), 2);
    EXPECT_EQ(cli("sweep" + out), 2);

    const fs::path coarse = write_config(dir, "schema_version = 1\nexperiment = e2-sweep\nN = 64\ndelta_max_k = 6\n");
    EXPECT_EQ(cli("sweep --config \"" + coarse.string() + "\"" + out), 3);
    EXPECT_EQ(cli("sweep --config \"" + cfg + "/e2_sweep.cfg\" --N 64" + out), 3);
}
