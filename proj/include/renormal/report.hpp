#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace renormal {

/// Least-squares line through (log delta, log value).
struct RateFit {
    /// "ok", or "no-rate" when some value is not positive and finite.
    std::string status = "no-rate";
    double slope = 0.0;
    double stderr_ = 0.0;
    double r2 = 0.0;
    int points = 0;
};

/// Needs at least three points (std::invalid_argument otherwise). A
/// nonpositive value yields status "no-rate" with NaN statistics.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

struct NamedFit {
    std::string quantity;
    RateFit fit;
};

struct Verdict {
    std::string name;
    /// "pass", "fail" or "degenerate-pass".
    std::string status;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

/// Rows hold one value per column; the first three columns are always
/// delta, norm_q, oracle_absdiff. NaN marks a value that was not computed.
struct ConvergenceReport {
    std::string experiment;
    std::vector<std::string> columns{"delta", "norm_q", "oracle_absdiff"};
    std::vector<std::vector<double>> rows;
    std::vector<NamedFit> fits;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Verdict> verdicts;
    /// "pass", "fail", "degenerate-pass", or "unchecked" with no verdicts.
    std::string overall = "unchecked";

    std::size_t column(const std::string& name) const;
    std::vector<double> values(const std::string& name) const;
    /// Sets overall from the verdict list.
    void conclude();
};

/// Field-for-field equality with NaN == NaN.
bool same_report(const ConvergenceReport& a, const ConvergenceReport& b);

std::string report_csv(const ConvergenceReport& report);
nlohmann::ordered_json report_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::ordered_json& j);
/// Log-log plot, one polyline per positive-valued measured column, plus
/// dashed fitted lines.
std::string report_svg(const ConvergenceReport& report);

enum ReportFormat : unsigned { report_csv_format = 1, report_json_format = 2, report_svg_format = 4 };

/// Writes report.csv / report.json / report.svg into dir (created when
/// missing). Throws std::runtime_error when a file cannot be written.
void emit_report(const ConvergenceReport& report, const std::filesystem::path& dir,
                 unsigned formats = report_csv_format | report_json_format | report_svg_format);

}  // namespace renormal
