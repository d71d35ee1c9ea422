#include "renormal/grid.hpp"

#include <stdexcept>
#include <string>

namespace renormal {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec::GridSpec(int d, int n) : d_(d), n_(n) {
    if (d < 1 || d > max_dim)
        throw std::invalid_argument("grid dimension must be in [1, 3], got " + std::to_string(d));
    if (!is_power_of_two(n))
        throw std::invalid_argument("points per axis must be a power of two, got " + std::to_string(n));
    if (n < min_points)
        throw std::invalid_argument("points per axis must be at least 16, got " + std::to_string(n));
    h_ = 1.0 / n;
    cell_volume_ = 1.0;
    size_ = 1;
    for (int a = 0; a < d; ++a) {
        cell_volume_ *= h_;
        size_ *= static_cast<std::size_t>(n);
    }
}

std::array<int, GridSpec::max_dim> GridSpec::unflatten(std::size_t index) const {
    std::array<int, max_dim> idx{0, 0, 0};
    for (int a = d_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(index % n_);
        index /= n_;
    }
    return idx;
}

std::size_t GridSpec::flatten(const std::array<int, max_dim>& idx) const {
    std::size_t index = 0;
    for (int a = 0; a < d_; ++a)
        index = index * n_ + static_cast<std::size_t>(idx[a]);
    return index;
}

GridSpec make_grid(int d, int n) { return GridSpec(d, n); }

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b))
        throw std::invalid_argument(std::string("grid mismatch in ") + what);
}

}  // namespace renormal
