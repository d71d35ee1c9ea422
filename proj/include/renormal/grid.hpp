#pragma once

#include <array>
#include <cstddef>

namespace renormal {

/// Uniform periodic grid on the unit torus [0,1)^d, N nodes per axis.
///
/// Node n along an axis sits at x_n = n*h with h = 1/N. Flat indices are
/// row-major with axis 0 slowest, matching the FFTW multi-dimensional layout.
class GridSpec {
public:
    static constexpr int max_dim = 3;
    static constexpr int min_points = 16;

    /// Throws std::invalid_argument unless 1 <= d <= 3 and n is a power of
    /// two with n >= 16.
    GridSpec(int d, int n);

    int dim() const { return d_; }
    int points_per_axis() const { return n_; }
    double spacing() const { return h_; }
    /// h^d; exact because h is a power of two.
    double cell_volume() const { return cell_volume_; }
    std::size_t size() const { return size_; }

    double coordinate(int n) const { return n * h_; }
    /// Minimal-image displacement of node n from the origin, in [-1/2, 1/2).
    double displacement(int n) const { return (n < n_ / 2 ? n : n - n_) * h_; }

    std::array<int, max_dim> unflatten(std::size_t index) const;
    std::size_t flatten(const std::array<int, max_dim>& idx) const;

    bool operator==(const GridSpec&) const = default;

private:
    int d_;
    int n_;
    double h_;
    double cell_volume_;
    std::size_t size_;
};

GridSpec make_grid(int d, int n);

/// Throws std::invalid_argument when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace renormal
