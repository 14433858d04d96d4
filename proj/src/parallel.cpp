#include "bcbound/parallel.hpp"

#include <atomic>

namespace bcbound {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = OpenMP default
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
  int n = g_max_threads.load();
#ifdef _OPENMP
  if (n == 0) n = omp_get_max_threads();
#else
  if (n == 0) n = 1;
#endif
  return n;
}

bool parallel_enabled() { return max_threads() > 1; }

}  // namespace bcbound
