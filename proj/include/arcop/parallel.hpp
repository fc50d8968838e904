#pragma once

#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace arcop {

/// Execution policy for the Monte Carlo kernels (bootstrap replicates,
/// permutations, simulation paths). `serial` is the reference implementation
/// kept for testing; `parallel` runs the same per-task work under OpenMP.
/// Both produce identical results: each task draws from its own derived seed
/// and writes to its own slot, so no reduction depends on scheduling.
enum class ExecutionPolicy { serial, parallel };

inline constexpr ExecutionPolicy default_policy = ExecutionPolicy::parallel;

/// Runs fn(i) for i in [0, n). Under the parallel policy the iterations are
/// distributed over OpenMP threads; fn must only write to per-i state.
template <typename Fn>
void parallel_for(std::int64_t n, ExecutionPolicy policy, Fn&& fn) {
#if defined(_OPENMP)
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
#else
    (void)policy;
#endif
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

inline int hardware_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace arcop
