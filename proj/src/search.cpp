#include "bcbound/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bcbound/parallel.hpp"

namespace bcbound {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return r.next_u64();
}

std::vector<double> dirichlet_flat(Rng& rng, int size) {
  std::vector<double> out(size);
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    // exponential(1) via inverse cdf; offset keeps log() finite
    out[i] = -std::log(1.0 - rng.next_double() + 1e-300);
    sum += out[i];
  }
  for (int i = 0; i < size; ++i) out[i] /= sum;
  return out;
}

std::vector<std::vector<double>> simplex_grid(int dim, int points_per_axis) {
  if (dim <= 0 || points_per_axis < 2)
    throw std::invalid_argument("simplex_grid: bad arguments");
  const int n = points_per_axis - 1;
  std::vector<std::vector<double>> out;
  std::vector<int> comp(dim, 0);
  // enumerate compositions of n into dim nonnegative parts
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == dim - 1) {
      comp[pos] = left;
      std::vector<double> p(dim);
      for (int i = 0; i < dim; ++i) p[i] = static_cast<double>(comp[i]) / n;
      out.push_back(std::move(p));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      comp[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
  return out;
}

namespace {

constexpr double kImprove = 1e-13;
constexpr long long kDetCap = 1000000;  // deterministic-enumeration cap

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> witness;
  long long evaluations = 0;
};

double eval_or_neg_inf(const Objective& f, const std::vector<double>& x,
                       long long& evals) {
  ++evals;
  const double v = f(x);
  return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
}

RestartOutcome ascend(const Objective& f, const std::vector<int>& shape,
                      std::vector<double> x, double fx, Rng rng,
                      const SearchConfig& cfg) {
  RestartOutcome out;
  const int nblocks = static_cast<int>(shape.size());
  std::vector<int> offsets(nblocks, 0);
  int total_vertices = 0;
  for (int j = 1; j < nblocks; ++j) offsets[j] = offsets[j - 1] + shape[j - 1];
  for (int s : shape) total_vertices += s;

  double step = cfg.step_init;
  int fails = 0;
  std::vector<double> trial = x;
  for (int it = 0; it < cfg.local_iters && step >= cfg.step_min; ++it) {
    const int j = static_cast<int>(rng.next_below(nblocks));
    const int v = static_cast<int>(rng.next_below(shape[j]));
    trial = x;
    for (int c = 0; c < shape[j]; ++c) trial[offsets[j] + c] *= (1.0 - step);
    trial[offsets[j] + v] += step;
    const double fv = eval_or_neg_inf(f, trial, out.evaluations);
    if (fv > fx + kImprove) {
      x = trial;
      fx = fv;
      fails = 0;
    } else if (++fails >= total_vertices) {
      step *= 0.5;
      fails = 0;
    }
  }
  out.value = fx;
  out.witness = std::move(x);
  return out;
}

}  // namespace

SearchResult refine_simplex(const Objective& objective,
                            const std::vector<int>& shape,
                            const std::vector<std::vector<double>>& seeds,
                            int restarts, const SearchConfig& cfg,
                            std::uint64_t salt) {
  if (restarts < 1) throw std::invalid_argument("refine_simplex: restarts < 1");
  int total = 0;
  for (int s : shape) total += s;
  SearchResult res;
  res.best_value = -std::numeric_limits<double>::infinity();
  const std::uint64_t base = cfg.seed ^ (0xabcdef1234567891ULL * (salt + 1));
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(base, r + 1));
    std::vector<double> x;
    if (r < static_cast<int>(seeds.size())) {
      x = seeds[r];
    } else {
      x.reserve(total);
      for (int s : shape) {
        auto block = dirichlet_flat(rng, s);
        x.insert(x.end(), block.begin(), block.end());
      }
    }
    long long evals = 0;
    const double fx = eval_or_neg_inf(objective, x, evals);
    RestartOutcome o = ascend(objective, shape, std::move(x), fx, rng, cfg);
    res.evaluations += evals + o.evaluations;
    res.history.push_back(o.value);
    if (o.value > res.best_value + kImprove) {
      res.best_value = o.value;
      res.witness = o.witness;
    }
  }
  return res;
}

SearchResult optimize_simplex(const Objective& objective,
                              const std::vector<int>& shape,
                              const SearchConfig& cfg) {
  if (shape.empty()) throw std::invalid_argument("optimize_simplex: no blocks");
  for (int s : shape)
    if (s <= 0) throw std::invalid_argument("optimize_simplex: bad block size");
  if (cfg.restarts < 1 || cfg.step_min > cfg.step_init)
    throw std::invalid_argument("optimize_simplex: bad config");

  const int nblocks = static_cast<int>(shape.size());
  int total = 0;
  for (int s : shape) total += s;

  SearchResult res;
  res.best_value = -std::numeric_limits<double>::infinity();

  // Phase 1: enumerate all products of simplex vertices when affordable.
  long long combos = 1;
  for (int s : shape) {
    combos *= s;
    if (combos > kDetCap) break;
  }
  std::vector<double> det_best;
  double det_val = -std::numeric_limits<double>::infinity();
  if (combos <= kDetCap) {
    std::vector<int> idx(nblocks, 0);
    std::vector<double> x(total, 0.0);
    long long det_evals = 0;
    for (;;) {
      int off = 0;
      std::fill(x.begin(), x.end(), 0.0);
      for (int j = 0; j < nblocks; ++j) {
        x[off + idx[j]] = 1.0;
        off += shape[j];
      }
      const double v = eval_or_neg_inf(objective, x, det_evals);
      if (v > det_val) {
        det_val = v;
        det_best = x;
      }
      int j = nblocks - 1;
      while (j >= 0 && ++idx[j] == shape[j]) idx[j--] = 0;
      if (j < 0) break;
    }
    res.evaluations += det_evals;
  }

  // Phases 2+3: Dirichlet restarts with coordinate ascent (restart 0 refines
  // the deterministic optimum when one exists).
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  parallel_for(static_cast<std::size_t>(cfg.restarts), [&](std::size_t r) {
    if (cfg.time_budget_s > 0.0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      if (elapsed > cfg.time_budget_s) return;
    }
    Rng rng(derive_seed(cfg.seed, r + 1));
    std::vector<double> x;
    if (r == 0 && !det_best.empty()) {
      x = det_best;
    } else {
      x.reserve(total);
      for (int j = 0; j < nblocks; ++j) {
        auto block = dirichlet_flat(rng, shape[j]);
        x.insert(x.end(), block.begin(), block.end());
      }
    }
    long long evals = 0;
    const double fx = eval_or_neg_inf(objective, x, evals);
    outcomes[r] = ascend(objective, shape, std::move(x), fx, rng, cfg);
    outcomes[r].evaluations += evals;
  });

  res.history.resize(cfg.restarts);
  res.best_value = det_val;
  res.witness = det_best;
  for (int r = 0; r < cfg.restarts; ++r) {
    res.history[r] = outcomes[r].value;
    res.evaluations += outcomes[r].evaluations;
    if (outcomes[r].value > res.best_value + kImprove ||
        (res.witness.empty() && std::isfinite(outcomes[r].value))) {
      res.best_value = outcomes[r].value;
      res.witness = outcomes[r].witness;
    }
  }
  if (res.witness.empty())
    throw std::runtime_error("optimize_simplex: no finite objective value found");
  return res;
}

}  // namespace bcbound
