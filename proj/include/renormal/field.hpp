#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "renormal/grid.hpp"

namespace renormal {

/// Real samples of a function on the torus grid. Immutable once built.
class ScalarField {
public:
    /// Zero field.
    explicit ScalarField(const GridSpec& grid);
    /// Throws std::invalid_argument on a length mismatch or a non-finite entry.
    ScalarField(const GridSpec& grid, std::vector<double> values);

    static ScalarField constant(const GridSpec& grid, double c);
    /// Samples fn at every node; fn receives the node coordinates (unused
    /// trailing entries are zero).
    static ScalarField sample(const GridSpec& grid,
                              const std::function<double(const std::array<double, 3>&)>& fn);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Pointwise map; the result is validated like any other field.
    ScalarField map(const std::function<double(double)>& fn) const;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
/// Pointwise product.
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);

/// h^d-weighted mean over the unit torus, i.e. the integral.
double mean(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);

/// m-tuple of scalar fields sharing one grid.
class VectorFieldM {
public:
    explicit VectorFieldM(std::vector<ScalarField> components);
    static VectorFieldM zeros(const GridSpec& grid, int m);

    const GridSpec& grid() const { return components_.front().grid(); }
    int components() const { return static_cast<int>(components_.size()); }
    const ScalarField& operator[](int k) const { return components_[k]; }
    const std::vector<ScalarField>& all() const { return components_; }

private:
    std::vector<ScalarField> components_;
};

VectorFieldM operator+(const VectorFieldM& a, const VectorFieldM& b);
VectorFieldM operator-(const VectorFieldM& a, const VectorFieldM& b);
VectorFieldM operator*(double c, const VectorFieldM& a);
/// Scales every component pointwise by w.
VectorFieldM operator*(const ScalarField& w, const VectorFieldM& a);
/// Pointwise Euclidean inner product sum_k a_k b_k.
ScalarField dot(const VectorFieldM& a, const VectorFieldM& b);
double max_abs_diff(const VectorFieldM& a, const VectorFieldM& b);

/// Noise coefficient sigma in R^{d x m}: component (i, k) multiplies the
/// derivative along axis i for Brownian component k.
class SigmaField {
public:
    /// components are stored column by column: index k*d + i.
    SigmaField(int d, int m, std::vector<ScalarField> components);

    static SigmaField constant(const GridSpec& grid, int m, double c);
    static SigmaField zeros(const GridSpec& grid, int m) { return constant(grid, m, 0.0); }

    const GridSpec& grid() const { return components_.front().grid(); }
    int dim() const { return d_; }
    int columns() const { return m_; }
    const ScalarField& operator()(int i, int k) const { return components_[k * d_ + i]; }

    SigmaField scaled(double c) const;
    /// max_x sum_{i,k} sigma_ik(x)^2
    double max_frobenius_squared() const;

private:
    int d_;
    int m_;
    std::vector<ScalarField> components_;
};

}  // namespace renormal
