#include "renormal/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace renormal {

namespace {

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op, const char* what) {
    require_same_grid(a.grid(), b.grid(), what);
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = op(a[i], b[i]);
    return ScalarField(a.grid(), std::move(out));
}

template <class Op>
VectorFieldM zip_vec(const VectorFieldM& a, const VectorFieldM& b, Op op) {
    if (a.components() != b.components())
        throw std::invalid_argument("component-count mismatch");
    std::vector<ScalarField> out;
    out.reserve(a.components());
    for (int k = 0; k < a.components(); ++k)
        out.push_back(op(a[k], b[k]));
    return VectorFieldM(std::move(out));
}

}  // namespace

ScalarField::ScalarField(const GridSpec& grid) : grid_(grid), values_(grid.size(), 0.0) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("field length does not match grid");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("field contains a non-finite entry");
}

ScalarField ScalarField::constant(const GridSpec& grid, double c) {
    return ScalarField(grid, std::vector<double>(grid.size(), c));
}

ScalarField ScalarField::sample(const GridSpec& grid,
                                const std::function<double(const std::array<double, 3>&)>& fn) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto idx = grid.unflatten(i);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < grid.dim(); ++a)
            x[a] = grid.coordinate(idx[a]);
        out[i] = fn(x);
    }
    return ScalarField(grid, std::move(out));
}

ScalarField ScalarField::map(const std::function<double(double)>& fn) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), fn);
    return ScalarField(grid_, std::move(out));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "field addition");
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "field subtraction");
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x * y; }, "field product");
}

ScalarField operator*(double c, const ScalarField& a) {
    return a.map([c](double x) { return c * x; });
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values())
        s += v;
    return s * f.grid().cell_volume();
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values())
        m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

VectorFieldM::VectorFieldM(std::vector<ScalarField> components) : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("vector field needs at least one component");
    for (const auto& c : components_)
        require_same_grid(components_.front().grid(), c.grid(), "vector field");
}

VectorFieldM VectorFieldM::zeros(const GridSpec& grid, int m) {
    return VectorFieldM(std::vector<ScalarField>(m, ScalarField(grid)));
}

VectorFieldM operator+(const VectorFieldM& a, const VectorFieldM& b) {
    return zip_vec(a, b, [](const ScalarField& x, const ScalarField& y) { return x + y; });
}

VectorFieldM operator-(const VectorFieldM& a, const VectorFieldM& b) {
    return zip_vec(a, b, [](const ScalarField& x, const ScalarField& y) { return x - y; });
}

VectorFieldM operator*(double c, const VectorFieldM& a) {
    std::vector<ScalarField> out;
    for (const auto& comp : a.all())
        out.push_back(c * comp);
    return VectorFieldM(std::move(out));
}

VectorFieldM operator*(const ScalarField& w, const VectorFieldM& a) {
    std::vector<ScalarField> out;
    for (const auto& comp : a.all())
        out.push_back(w * comp);
    return VectorFieldM(std::move(out));
}

ScalarField dot(const VectorFieldM& a, const VectorFieldM& b) {
    if (a.components() != b.components())
        throw std::invalid_argument("component-count mismatch in dot");
    ScalarField acc = a[0] * b[0];
    for (int k = 1; k < a.components(); ++k)
        acc = acc + a[k] * b[k];
    return acc;
}

double max_abs_diff(const VectorFieldM& a, const VectorFieldM& b) {
    if (a.components() != b.components())
        throw std::invalid_argument("component-count mismatch");
    double m = 0.0;
    for (int k = 0; k < a.components(); ++k)
        m = std::max(m, max_abs_diff(a[k], b[k]));
    return m;
}

SigmaField::SigmaField(int d, int m, std::vector<ScalarField> components)
    : d_(d), m_(m), components_(std::move(components)) {
    if (m < 1)
        throw std::invalid_argument("sigma needs at least one Brownian component");
    if (static_cast<int>(components_.size()) != d * m)
        throw std::invalid_argument("sigma needs d*m components");
    if (components_.front().grid().dim() != d)
        throw std::invalid_argument("sigma row count must equal the grid dimension");
    for (const auto& c : components_)
        require_same_grid(components_.front().grid(), c.grid(), "sigma field");
}

SigmaField SigmaField::constant(const GridSpec& grid, int m, double c) {
    return SigmaField(grid.dim(), m,
                      std::vector<ScalarField>(grid.dim() * m, ScalarField::constant(grid, c)));
}

SigmaField SigmaField::scaled(double c) const {
    std::vector<ScalarField> out;
    for (const auto& comp : components_)
        out.push_back(c * comp);
    return SigmaField(d_, m_, std::move(out));
}

double SigmaField::max_frobenius_squared() const {
    double best = 0.0;
    const std::size_t n = grid().size();
    for (std::size_t x = 0; x < n; ++x) {
        double s = 0.0;
        for (const auto& comp : components_)
            s += comp[x] * comp[x];
        best = std::max(best, s);
    }
    return best;
}

}  // namespace renormal
