#include "renormal/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace renormal {

using nlohmann::ordered_json;

std::size_t ConvergenceReport::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw std::out_of_range("report has no column '" + name + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ConvergenceReport::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    for (const auto& r : rows)
        out.push_back(r.at(c));
    return out;
}

void ConvergenceReport::conclude() {
    if (verdicts.empty()) {
        overall = "unchecked";
        return;
    }
    bool all_degenerate = true;
    for (const auto& v : verdicts) {
        if (v.status == "fail") {
            overall = "fail";
            return;
        }
        all_degenerate = all_degenerate && v.status == "degenerate-pass";
    }
    const bool any_degenerate = std::any_of(verdicts.begin(), verdicts.end(),
                                            [](const Verdict& v) { return v.status == "degenerate-pass"; });
    overall = all_degenerate || any_degenerate ? "degenerate-pass" : "pass";
}

namespace {

bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json json_number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }
double from_json_number(const ordered_json& j) { return j.is_null() ? NAN : j.get<double>(); }

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

bool same_report(const ConvergenceReport& a, const ConvergenceReport& b) {
    if (a.experiment != b.experiment || a.columns != b.columns || a.metadata != b.metadata ||
        a.overall != b.overall || a.rows.size() != b.rows.size() || a.fits.size() != b.fits.size() ||
        a.verdicts.size() != b.verdicts.size())
        return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size())
            return false;
        for (std::size_t c = 0; c < a.rows[r].size(); ++c)
            if (!same_number(a.rows[r][c], b.rows[r][c]))
                return false;
    }
    for (std::size_t n = 0; n < a.fits.size(); ++n) {
        const auto &x = a.fits[n], &y = b.fits[n];
        if (x.quantity != y.quantity || x.fit.status != y.fit.status || x.fit.points != y.fit.points ||
            !same_number(x.fit.slope, y.fit.slope) || !same_number(x.fit.stderr_, y.fit.stderr_) ||
            !same_number(x.fit.r2, y.fit.r2))
            return false;
    }
    for (std::size_t n = 0; n < a.verdicts.size(); ++n) {
        const auto &x = a.verdicts[n], &y = b.verdicts[n];
        if (x.name != y.name || x.status != y.status || x.detail != y.detail ||
            !same_number(x.measured, y.measured) || !same_number(x.threshold, y.threshold))
            return false;
    }
    return true;
}

std::string report_csv(const ConvergenceReport& report) {
    std::string out;
    for (std::size_t c = 0; c < report.columns.size(); ++c)
        out += (c ? "," : "") + report.columns[c];
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + number(row[c]);
        out += '\n';
    }
    return out;
}

ordered_json report_json(const ConvergenceReport& report) {
    ordered_json j;
    j["experiment"] = report.experiment;
    j["columns"] = report.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows) {
        ordered_json r = ordered_json::array();
        for (double v : row)
            r.push_back(json_number(v));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    ordered_json fits = ordered_json::array();
    for (const auto& f : report.fits)
        fits.push_back({{"quantity", f.quantity},
                        {"status", f.fit.status},
                        {"slope", json_number(f.fit.slope)},
                        {"stderr", json_number(f.fit.stderr_)},
                        {"r2", json_number(f.fit.r2)},
                        {"points", f.fit.points}});
    j["fits"] = std::move(fits);
    ordered_json meta = ordered_json::array();
    for (const auto& [k, v] : report.metadata)
        meta.push_back({k, v});
    j["metadata"] = std::move(meta);
    ordered_json verdicts = ordered_json::array();
    for (const auto& v : report.verdicts)
        verdicts.push_back({{"name", v.name},
                            {"status", v.status},
                            {"measured", json_number(v.measured)},
                            {"threshold", json_number(v.threshold)},
                            {"detail", v.detail}});
    j["verdicts"] = std::move(verdicts);
    j["overall"] = report.overall;
    return j;
}

ConvergenceReport report_from_json(const ordered_json& j) {
    ConvergenceReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
        std::vector<double> values;
        for (const auto& v : row)
            values.push_back(from_json_number(v));
        r.rows.push_back(std::move(values));
    }
    for (const auto& f : j.at("fits")) {
        NamedFit nf;
        nf.quantity = f.at("quantity").get<std::string>();
        nf.fit.status = f.at("status").get<std::string>();
        nf.fit.slope = from_json_number(f.at("slope"));
        nf.fit.stderr_ = from_json_number(f.at("stderr"));
        nf.fit.r2 = from_json_number(f.at("r2"));
        nf.fit.points = f.at("points").get<int>();
        r.fits.push_back(std::move(nf));
    }
    for (const auto& m : j.at("metadata"))
        r.metadata.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
    for (const auto& v : j.at("verdicts"))
        r.verdicts.push_back(Verdict{v.at("name").get<std::string>(), v.at("status").get<std::string>(),
                                     from_json_number(v.at("measured")), from_json_number(v.at("threshold")),
                                     v.at("detail").get<std::string>()});
    r.overall = j.at("overall").get<std::string>();
    return r;
}

std::string report_svg(const ConvergenceReport& report) {
    constexpr double width = 640, height = 420;
    constexpr double left = 80, right = 620, top = 40, bottom = 360;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    const std::vector<double> delta = report.values("delta");
    for (std::size_t c = 1; c < report.columns.size(); ++c) {
        if (report.columns[c] == "oracle_absdiff")
            continue;
        Series s{report.columns[c], {}};
        bool usable = !report.rows.empty();
        for (std::size_t r = 0; r < report.rows.size() && usable; ++r) {
            const double v = report.rows[r][c];
            usable = delta[r] > 0 && v > 0 && std::isfinite(v) && std::isfinite(delta[r]);
            if (usable)
                s.pts.emplace_back(std::log10(delta[r]), std::log10(v));
        }
        if (usable)
            series.push_back(std::move(s));
    }

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (series.empty()) {
        x0 = y0 = 0;
        x1 = y1 = 1;
    }
    x0 = std::floor(x0);
    x1 = std::max(std::ceil(x1), x0 + 1);
    y0 = std::floor(y0);
    y1 = std::max(std::ceil(y1), y0 + 1);
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
    auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  width, height, width, height);
    out += buf;
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"24\" font-size=\"14\">%s</text>\n", left,
                  report.experiment.c_str());
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"black\"/>\n",
                  left, top, right - left, bottom - top);
    out += buf;
    for (double x = x0; x <= x1 + 1e-9; x += 1.0) {
        std::snprintf(buf, sizeof buf,
                      "<text class=\"xtick\" x=\"%.2f\" y=\"%.0f\" font-size=\"11\" text-anchor=\"middle\">1e%.0f</text>\n",
                      px(x), bottom + 16, x);
        out += buf;
    }
    for (double y = y0; y <= y1 + 1e-9; y += 1.0) {
        std::snprintf(buf, sizeof buf,
                      "<text class=\"ytick\" x=\"%.0f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">1e%.0f</text>\n",
                      left - 6, py(y) + 4, y);
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\" text-anchor=\"middle\">delta</text>\n",
                  0.5 * (left + right), bottom + 34);
    out += buf;

    for (std::size_t n = 0; n < series.size(); ++n) {
        const auto& s = series[n];
        const char* color = palette[n % std::size(palette)];
        out += "<polyline class=\"series\" data-quantity=\"" + s.name + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < s.pts.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", k ? " " : "", px(s.pts[k].first), py(s.pts[k].second));
            out += buf;
        }
        out += "\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text class=\"legend\" x=\"%.0f\" y=\"%.0f\" font-size=\"11\" fill=\"%s\">%s</text>\n",
                      left + 10, top + 16 + 14.0 * n, color, s.name.c_str());
        out += buf;

        for (const auto& f : report.fits) {
            if (f.quantity != s.name || f.fit.status != "ok")
                continue;
            double mx = 0, my = 0;
            for (const auto& [x, y] : s.pts) {
                mx += x;
                my += y;
            }
            mx /= s.pts.size();
            my /= s.pts.size();
            const double xa = s.pts.front().first, xb = s.pts.back().first;
            std::snprintf(buf, sizeof buf,
                          "<line class=\"fit\" data-quantity=\"%s\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                          "stroke=\"%s\" stroke-dasharray=\"5 3\"/>\n",
                          s.name.c_str(), px(xa), py(my + f.fit.slope * (xa - mx)), px(xb),
                          py(my + f.fit.slope * (xb - mx)), color);
            out += buf;
        }
    }
    out += "</svg>\n";
    return out;
}

void emit_report(const ConvergenceReport& report, const std::filesystem::path& dir, unsigned formats) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    if (formats & report_csv_format)
        write_file(dir / "report.csv", report_csv(report));
    if (formats & report_json_format)
        write_file(dir / "report.json", report_json(report).dump(2) + "\n");
    if (formats & report_svg_format)
        write_file(dir / "report.svg", report_svg(report));
}

}  // namespace renormal
