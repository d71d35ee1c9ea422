#include <cmath>
#include <stdexcept>

#include "renormal/report.hpp"

namespace renormal {

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("fit_rate needs at least three points");
    RateFit fit;
    fit.points = static_cast<int>(points.size());
    for (const auto& [delta, value] : points) {
        if (!(delta > 0.0) || !(value > 0.0) || !std::isfinite(delta) || !std::isfinite(value)) {
            fit.status = "no-rate";
            fit.slope = fit.stderr_ = fit.r2 = NAN;
            return fit;
        }
    }
    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [delta, value] : points) {
        mx += std::log(delta);
        my += std::log(value);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [delta, value] : points) {
        const double dx = std::log(delta) - mx;
        const double dy = std::log(value) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_rate needs at least two distinct deltas");
    fit.status = "ok";
    fit.slope = sxy / sxx;
    const double sse = std::max(0.0, syy - fit.slope * sxy);
    fit.stderr_ = std::sqrt(sse / (n - 2.0) / sxx);
    fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

}  // namespace renormal
