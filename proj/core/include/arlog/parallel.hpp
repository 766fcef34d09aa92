#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace arlog {

// Number of workers used for `requested` (values <= 0 mean "all cores").
int resolve_threads(int requested);

// Calls fn(i) for i in [0, count), split into contiguous blocks across
// threads. The first exception thrown by any worker is rethrown.
void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn);

// Pairwise (tree) sum. The result depends only on the input order.
double pairwise_sum(std::span<const double> values);

}  // namespace arlog
