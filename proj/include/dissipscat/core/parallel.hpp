#ifndef DISSIPSCAT_CORE_PARALLEL_HPP
#define DISSIPSCAT_CORE_PARALLEL_HPP

#include <cstdlib>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dissipscat {

// Execution policy for the data-parallel kernels. Every kernel produces
// results that are bitwise identical under Serial and Parallel: parallel
// loops write disjoint elements and all reductions go through tree_sum,
// whose summation order is fixed by the data layout, not the worker count.
enum class Exec { Serial, Parallel };

// Worker cap: DISSIPSCAT_THREADS, else the OpenMP default.
inline int max_threads() {
#ifdef _OPENMP
    static int cached = [] {
        int n = omp_get_max_threads();
        if (const char* env = std::getenv("DISSIPSCAT_THREADS")) {
            int cap = std::atoi(env);
            if (cap > 0 && cap < n) n = cap;
        }
        return n;
    }();
    return cached;
#else
    return 1;
#endif
}

template <class F>
void parallel_for(Exec exec, std::int64_t n, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::Parallel && n > 1) {
        int nt = max_threads();
        #pragma omp parallel for schedule(static) num_threads(nt)
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    (void)exec;
    for (std::int64_t i = 0; i < n; ++i) body(i);
}

} // namespace dissipscat

#endif
