#pragma once

#include <array>
#include <cstdint>

namespace renormal {

/// Philox4x32-10 block function: a keyed bijection on 128-bit counters.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random numbers. Every draw is addressed by
/// (index, stream_a, stream_b) under a 64-bit seed, so draws are
/// reproducible regardless of evaluation order or thread count.
///
/// Counter words: {index low, index high, stream_a, stream_b}; key words:
/// {seed low, seed high}.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    /// Uniform in the open interval (0, 1).
    double uniform(std::uint64_t index, std::uint32_t stream_a = 0, std::uint32_t stream_b = 0) const;
    /// Standard normal via Box-Muller on one Philox block.
    double normal(std::uint64_t index, std::uint32_t stream_a = 0, std::uint32_t stream_b = 0) const;

private:
    std::array<std::uint32_t, 4> block(std::uint64_t index, std::uint32_t a, std::uint32_t b) const;
    std::uint64_t seed_;
};

}  // namespace renormal
