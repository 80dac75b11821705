#pragma once

#include <exception>

namespace steinso {

// Runs fn(i) for i in [0, n) under OpenMP. Each index writes only its own
// slots, so callers stay deterministic for any thread count. The first
// exception is captured and rethrown after the loop (exceptions must not
// cross an omp region).
template <class Fn>
void parallel_for(int n, Fn&& fn) {
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(steinso_parallel_for)
            if (!eptr) {
                eptr = std::current_exception();
            }
        }
    }
    if (eptr) {
        std::rethrow_exception(eptr);
    }
}

}  // namespace steinso
