#ifndef DISSIPSCAT_CORE_REDUCE_HPP
#define DISSIPSCAT_CORE_REDUCE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "dissipscat/core/parallel.hpp"

namespace dissipscat {

namespace detail {
// Pairwise summation with a fixed recursion tree. The split point depends
// only on the length, so the order of additions is independent of how the
// work is scheduled.
inline double pairwise_sum(const double* a, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}
} // namespace detail

// Deterministic sum: fixed 4096-element chunks are pairwise-summed, then the
// chunk results are pairwise-summed. Parallelism only distributes the chunk
// work; the additions happen in the same order for any thread count.
inline double tree_sum(std::span<const double> a, Exec exec = Exec::Parallel) {
    constexpr std::size_t chunk = 4096;
    const std::size_t n = a.size();
    if (n <= chunk) return detail::pairwise_sum(a.data(), n);
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nchunks);
    parallel_for(exec, static_cast<std::int64_t>(nchunks), [&](std::int64_t c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t len = std::min(chunk, n - lo);
        partial[static_cast<std::size_t>(c)] = detail::pairwise_sum(a.data() + lo, len);
    });
    return detail::pairwise_sum(partial.data(), partial.size());
}

inline double tree_sum(const std::vector<double>& a, Exec exec = Exec::Parallel) {
    return tree_sum(std::span<const double>(a.data(), a.size()), exec);
}

} // namespace dissipscat

#endif
