#include "omlaser/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace omlaser {

int worker_count() {
#ifdef _OPENMP
    if (const char* env = std::getenv("OMLASER_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // fall through to the OpenMP default
        }
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace detail {

// Bodies must not throw; an exception escaping an OpenMP region aborts.
void run_indexed(std::size_t n, ExecMode mode, void (*fn)(std::size_t, void*), void* ctx) {
#ifdef _OPENMP
    if (mode == ExecMode::OpenMP && n > 1) {
        const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            fn(static_cast<std::size_t>(i), ctx);
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i, ctx);
}

}  // namespace detail

}  // namespace omlaser
