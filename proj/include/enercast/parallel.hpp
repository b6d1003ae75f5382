#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enercast {

// Execution mode for the data-parallel kernels. Serial is the reference
// path kept for testing; Parallel dispatches the same per-item body through
// OpenMP. Items never share mutable state, so both paths produce identical
// bytes at any thread count.
enum class Exec { Serial, Parallel };

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

template <typename Body>
void parallel_for(std::size_t count, Exec exec, Body&& body) {
#ifdef _OPENMP
  if (exec == Exec::Parallel && count > 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace enercast
