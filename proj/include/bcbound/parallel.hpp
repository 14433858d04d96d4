// Index-parallel loops with deterministic reductions.
//
// Every parallel loop in this project writes results into a slot keyed by
// the loop index and reduces serially afterwards, so thread count and
// scheduling cannot change any result. The serial path is the reference
// implementation; tests compare the two, and tools/bench_regions times them.

#ifndef BCBOUND_PARALLEL_HPP
#define BCBOUND_PARALLEL_HPP

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bcbound {

// Process-wide switch; the CLI maps --threads onto this.
void set_max_threads(int n);
int max_threads();
bool parallel_enabled();

template <class Fn>
void serial_for(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
    const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  serial_for(n, fn);
}

}  // namespace bcbound

#endif  // BCBOUND_PARALLEL_HPP
