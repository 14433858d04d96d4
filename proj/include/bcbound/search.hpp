// Multi-start maximization over products of probability simplices: full
// deterministic (vertex) enumeration when small, Dirichlet(1) restarts, and
// coordinate ascent along simplex edges with a shrinking step.
//
// Results are deterministic for a fixed seed regardless of thread count:
// each restart derives its own generator from (seed, index), per-restart
// results are stored by index, and ties break toward the lowest index.

#ifndef BCBOUND_SEARCH_HPP
#define BCBOUND_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace bcbound {

struct SearchConfig {
  int restarts = 64;
  int grid_points = 5;   // per-axis resolution of coarse simplex grids
  int local_iters = 200;
  double step_init = 0.5;
  double step_min = 1e-4;
  std::uint64_t seed = 1;
  double time_budget_s = 0.0;  // 0 = unlimited; setting it trades determinism
                               // for a wall-clock cap (checked per restart)
};

struct SearchResult {
  double best_value = 0.0;
  std::vector<double> witness;   // flattened simplex blocks
  std::vector<double> history;   // best value per restart
  long long evaluations = 0;
};

// Counter-based generator (splitmix64): stable across platforms and thread
// schedules, unlike the standard distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t s) : state(s) {}
  std::uint64_t next_u64() {
    std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  double next_double() {  // [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// One Dirichlet(1) draw (uniform on the simplex) of the given size.
std::vector<double> dirichlet_flat(Rng& rng, int size);

// All pmfs on `dim` symbols with entries that are multiples of
// 1/(points_per_axis - 1); includes the vertices. Deterministic order.
std::vector<std::vector<double>> simplex_grid(int dim, int points_per_axis);

using Objective = std::function<double(const std::vector<double>&)>;

// Maximizes `objective` over a product of simplices with the given block
// sizes. Non-finite objective values discard the candidate (flagged in the
// history as unchanged). Always returns the best point found.
SearchResult optimize_simplex(const Objective& objective,
                              const std::vector<int>& shape,
                              const SearchConfig& cfg);

// Ascent-only phases (no vertex enumeration): restart r starts from seeds[r]
// when provided, otherwise from a Dirichlet draw. Runs serially; callers
// parallelize across independent problems and keep `salt` distinct.
SearchResult refine_simplex(const Objective& objective,
                            const std::vector<int>& shape,
                            const std::vector<std::vector<double>>& seeds,
                            int restarts, const SearchConfig& cfg,
                            std::uint64_t salt);

}  // namespace bcbound

#endif  // BCBOUND_SEARCH_HPP
