#ifndef OMLASER_PARALLEL_HPP
#define OMLASER_PARALLEL_HPP

#include <cstddef>

namespace omlaser {

/// Execution policy for the data-parallel loops (sweep points, ensemble
/// realizations, Newton starts). Every loop body writes only its own slot, so
/// Serial and OpenMP produce bit-identical results; Serial is the reference
/// the tests compare against.
enum class ExecMode { Serial, OpenMP };

/// Worker count for ExecMode::OpenMP: OMLASER_THREADS when set, otherwise the
/// OpenMP default. Returns 1 when built without OpenMP.
int worker_count();

namespace detail {
void run_indexed(std::size_t n, ExecMode mode, void (*fn)(std::size_t, void*), void* ctx);
}

/// Applies body(i) for i in [0, n), serially or via an OpenMP parallel-for.
template <typename F>
void for_each_index(std::size_t n, ExecMode mode, F&& body) {
    auto trampoline = [](std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
    detail::run_indexed(n, mode, trampoline, &body);
}

}  // namespace omlaser

#endif
