#pragma once

#include <exception>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fanozl {

// Global worker budget.  1 = serial reference path; results are required to
// be byte-identical for every setting (work items are pure, reduction is by
// preallocated index).
inline int& worker_threads() {
    static int t = 1;
    return t;
}

template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
#ifdef _OPENMP
    if (worker_threads() > 1 && !omp_in_parallel()) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(worker_threads())
        for (long i = 0; i < (long)n; ++i) {
            try {
                fn((size_t)i);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    for (size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace fanozl
