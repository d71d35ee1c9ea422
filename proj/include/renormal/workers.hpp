#pragma once

#include <cstddef>
#include <functional>

namespace renormal {

/// Worker-pool bound: RENORMAL_WORKERS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
int worker_count();

/// Runs task(0..n-1) on at most worker_count() threads. Each index is an
/// independent unit of work; callers store results by index so the outcome
/// does not depend on scheduling. The exception of the lowest failing index
/// is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace renormal
