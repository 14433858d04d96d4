#include "bcbound/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "bcbound/parallel.hpp"

namespace bcbound {

namespace {

constexpr long long kDetCandidateCap = 1000000;
constexpr double kImprove = 1e-13;

// ---- canonical set partitions (restricted growth strings) -----------------

long long count_partitions(int n, int max_classes, long long cap) {
  // memoized count of RGS with < max_classes+1 labels
  std::map<std::pair<int, int>, long long> memo;
  std::function<long long(int, int)> rec = [&](int i, int used) -> long long {
    if (i == n) return 1;
    auto key = std::make_pair(i, used);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long long total = 0;
    const int top = std::min(used + 1, max_classes - 1);
    for (int v = 0; v <= top; ++v) {
      total += rec(i + 1, std::max(used, v));
      if (total > cap) break;
    }
    memo[key] = total;
    return total;
  };
  return n == 0 ? 0 : rec(1, 0);  // label[0] = 0 always
}

void for_each_partition(int n, int max_classes,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> labels(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      fn(labels);
      return;
    }
    const int top = std::min(used + 1, max_classes - 1);
    for (int v = 0; v <= top; ++v) {
      labels[i] = v;
      rec(i + 1, std::max(used, v));
    }
  };
  if (n > 0) rec(1, 0);
}

}  // namespace

std::vector<std::vector<double>> input_candidates(int nx,
                                                  const SearchConfig& cfg) {
  std::vector<std::vector<double>> out;
  auto push = [&](std::vector<double> p) {
    for (const auto& q : out) {
      double d = 0.0;
      for (int i = 0; i < nx; ++i) d += std::abs(q[i] - p[i]);
      if (d < 1e-12) return;
    }
    out.push_back(std::move(p));
  };
  push(std::vector<double>(nx, 1.0 / nx));
  for (int i = 0; i < nx; ++i) {
    std::vector<double> p(nx, 0.0);
    p[i] = 1.0;
    push(std::move(p));
  }
  for (auto& p : simplex_grid(nx, std::max(2, cfg.grid_points)))
    push(std::move(p));
  return out;
}

std::string to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::MartonInner: return "cin";
    case RegionTag::NairOuter: return "cout";
    case RegionTag::SourceRegion: return "source";
    case RegionTag::DetCapacity: return "det-capacity";
    case RegionTag::DegradedCD: return "cd";
    case RegionTag::R10Channel: return "r10-channel";
    case RegionTag::R10SourceLossless: return "r10-source";
    case RegionTag::R10SourceLossy: return "r10-lossy";
  }
  return "?";
}

int RegionKind::dim() const {
  switch (tag) {
    case RegionTag::DegradedCD: return 2;
    case RegionTag::R10Channel:
    case RegionTag::R10SourceLossless:
    case RegionTag::R10SourceLossy: return 10;
    default: return 3;
  }
}

RegionKind RegionKind::marton_inner(BroadcastChannel ch, std::optional<Pmf> px,
                                    AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::MartonInner;
  k.channel = std::move(ch);
  k.input = std::move(px);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::nair_outer(BroadcastChannel ch, std::optional<Pmf> px,
                                  AuxCards cards) {
  RegionKind k = marton_inner(std::move(ch), std::move(px), cards);
  k.tag = RegionTag::NairOuter;
  return k;
}

RegionKind RegionKind::source_region(SourcePair src, AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::SourceRegion;
  k.source = std::move(src);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::det_capacity(BroadcastChannel ch, std::optional<Pmf> px,
                                    AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::DetCapacity;
  k.channel = std::move(ch);
  k.input = std::move(px);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::degraded_cd(BroadcastChannel ch, std::optional<Pmf> px,
                                   AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::DegradedCD;
  k.channel = std::move(ch);
  k.input = std::move(px);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::r10_channel(BroadcastChannel ch, std::optional<Pmf> px,
                                   AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::R10Channel;
  k.channel = std::move(ch);
  k.input = std::move(px);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::r10_source(SourcePair src, AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::R10SourceLossless;
  k.source = std::move(src);
  k.cards = cards;
  return k;
}

RegionKind RegionKind::r10_lossy(Pmf ps, BroadcastChannel virt,
                                 AuxCards cards) {
  RegionKind k;
  k.tag = RegionTag::R10SourceLossy;
  k.channel = std::move(virt);
  k.input = std::move(ps);
  k.cards = cards;
  return k;
}

namespace {

bool is_channel_triple(RegionTag t) {
  return t == RegionTag::MartonInner || t == RegionTag::NairOuter ||
         t == RegionTag::R10Channel;
}

bool is_source_kind(RegionTag t) {
  return t == RegionTag::SourceRegion || t == RegionTag::R10SourceLossless;
}

bool is_single_aux(RegionTag t) {
  return t == RegionTag::DetCapacity || t == RegionTag::DegradedCD;
}

}  // namespace

KindEvaluator::KindEvaluator(RegionKind kind) : kind_(std::move(kind)) {
  dim_ = kind_.dim();
  const RegionTag tag = kind_.tag;
  if (is_channel_triple(tag) || is_single_aux(tag)) {
    if (!kind_.channel) throw std::invalid_argument("KindEvaluator: channel missing");
    const int nx = kind_.channel->x_size();
    input_size_ = nx;
    input_free_ = !kind_.input.has_value();
    cards_ = resolve_cards(kind_.cards, nx, 1, 1, kind_.full_cards);
    if (tag == RegionTag::DetCapacity) {
      // single test variable against the output pair, eq:inview-style bound
      const int pairs = kind_.channel->y1_size() * kind_.channel->y2_size();
      cards_.u = kind_.cards.u > 0
                     ? kind_.cards.u
                     : (kind_.full_cards ? pairs + 2 : pairs);
      aux_block_ = cards_.u;
    } else if (tag == RegionTag::DegradedCD) {
      cards_.u = kind_.cards.u > 0 ? kind_.cards.u : nx + 1;
      aux_block_ = cards_.u;
    } else {
      aux_block_ = cards_.v0 * cards_.v1 * cards_.v2;
    }
    for (int x = 0; x < nx; ++x) active_cells_.push_back(x);
  } else if (is_source_kind(tag)) {
    if (!kind_.source) throw std::invalid_argument("KindEvaluator: source missing");
    const int n1 = kind_.source->s1_size(), n2 = kind_.source->s2_size();
    input_free_ = false;
    input_size_ = 0;
    cards_ = resolve_cards(kind_.cards, 1, n1, n2, kind_.full_cards);
    aux_block_ = cards_.u;
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n2; ++b)
        if (kind_.source->at(a, b) > 0.0) active_cells_.push_back(a * n2 + b);
  } else {  // R10SourceLossy
    if (!kind_.channel || !kind_.input)
      throw std::invalid_argument("KindEvaluator: lossy kind needs (p_S, virtual channel)");
    const int ns = kind_.channel->x_size();
    if (kind_.input->size() != ns)
      throw std::invalid_argument("KindEvaluator: p_S does not match the virtual channel");
    input_free_ = false;
    input_size_ = ns;
    cards_ = resolve_cards(kind_.cards, ns, 1, 1, kind_.full_cards);
    cards_.v0 = kind_.cards.v0 > 0 ? kind_.cards.v0 : ns;
    aux_block_ = cards_.v0 * cards_.v1 * cards_.v2;
    for (int s = 0; s < ns; ++s)
      if ((*kind_.input)[s] > 0.0) active_cells_.push_back(s);
  }
  if (input_free_) shape_.push_back(input_size_);
  for (std::size_t i = 0; i < active_cells_.size(); ++i)
    shape_.push_back(aux_block_);
}

void KindEvaluator::expand(const std::vector<double>& x,
                           std::vector<double>& input,
                           std::vector<double>& rows) const {
  std::size_t off = 0;
  if (input_free_) {
    input.assign(x.begin(), x.begin() + input_size_);
    off = input_size_;
  } else if (kind_.input) {
    input = kind_.input->probs();
  } else {
    input.clear();
  }
  int total_symbols = 0;
  if (is_source_kind(kind_.tag))
    total_symbols = kind_.source->s1_size() * kind_.source->s2_size();
  else
    total_symbols = input_size_;
  rows.assign(static_cast<std::size_t>(total_symbols) * aux_block_, 0.0);
  std::size_t cell_idx = 0;
  for (int cell : active_cells_) {
    for (int v = 0; v < aux_block_; ++v)
      rows[static_cast<std::size_t>(cell) * aux_block_ + v] =
          x[off + cell_idx * aux_block_ + v];
    ++cell_idx;
  }
  // inactive conditioning symbols get a fixed point mass
  std::vector<bool> active(total_symbols, false);
  for (int cell : active_cells_) active[cell] = true;
  for (int cell = 0; cell < total_symbols; ++cell)
    if (!active[cell]) rows[static_cast<std::size_t>(cell) * aux_block_] = 1.0;
}

SliceData KindEvaluator::slice(const std::vector<double>& x) const {
  std::vector<double> input, rows;
  expand(x, input, rows);
  SliceData s;
  switch (kind_.tag) {
    case RegionTag::MartonInner: {
      const auto t = compute_channel_terms(input, *kind_.channel, rows,
                                           cards_.v0, cards_.v1, cards_.v2);
      const Polytope p = cin_polytope(t);
      s.ineqs = p.inequalities();
      s.vertices = p.vertices();
      break;
    }
    case RegionTag::NairOuter: {
      const auto t = compute_channel_terms(input, *kind_.channel, rows,
                                           cards_.v0, cards_.v1, cards_.v2);
      const Polytope p = cout_polytope(t);
      s.ineqs = p.inequalities();
      s.vertices = p.vertices();
      break;
    }
    case RegionTag::SourceRegion: {
      const auto t = compute_source_terms(*kind_.source, rows, cards_.u);
      const Polytope p = source_polytope(t);
      s.ineqs = p.inequalities();
      s.vertices = p.vertices();
      break;
    }
    case RegionTag::DetCapacity: {
      const auto t = compute_detcap_terms(input, *kind_.channel, rows, cards_.u);
      const Polytope p = source_polytope(t);
      s.ineqs = p.inequalities();
      s.vertices = p.vertices();
      break;
    }
    case RegionTag::DegradedCD: {
      const auto t = compute_cd_terms(input, *kind_.channel, rows, cards_.u);
      const Polytope p = cd_polytope(t);
      s.ineqs = p.inequalities();
      s.vertices = p.vertices();
      break;
    }
    case RegionTag::R10Channel: {
      const auto t = compute_channel_terms(input, *kind_.channel, rows,
                                           cards_.v0, cards_.v1, cards_.v2);
      s.corner = r10_channel_corner(t);
      s.is_corner = true;
      break;
    }
    case RegionTag::R10SourceLossless: {
      const auto t = compute_source_terms(*kind_.source, rows, cards_.u);
      s.corner = r10_source_corner(t);
      s.is_corner = true;
      break;
    }
    case RegionTag::R10SourceLossy: {
      const auto t = compute_lossy_terms(*kind_.input, *kind_.channel, rows,
                                         cards_.v0, cards_.v1, cards_.v2);
      s.corner = r10_lossy_corner(t);
      s.is_corner = true;
      break;
    }
  }
  return s;
}

double KindEvaluator::support_at(const SliceData& s,
                                 const std::vector<double>& lambda) const {
  if (s.is_corner) {
    double dot = 0.0;
    for (int i = 0; i < 10; ++i) dot += lambda[i] * s.corner[i];
    return dot;
  }
  return support_from_vertices(s.vertices, lambda);
}

std::vector<double> KindEvaluator::cap_values(const SliceData& s) const {
  if (s.is_corner) return std::vector<double>(s.corner.begin(), s.corner.end());
  std::vector<double> out;
  out.reserve(s.ineqs.size());
  for (const auto& iq : s.ineqs) out.push_back(iq.bound);
  return out;
}

void KindEvaluator::for_each_det_candidate(
    const SearchConfig& cfg,
    const std::function<void(const std::vector<double>&)>& fn) const {
  const auto inputs = input_free_
                          ? input_candidates(input_size_, cfg)
                          : std::vector<std::vector<double>>{{}};
  const int ncells = static_cast<int>(active_cells_.size());
  std::vector<double> x(shape_.size() ? std::accumulate(shape_.begin(), shape_.end(), 0) : 0, 0.0);

  auto emit = [&](const std::vector<int>& combined_labels,
                  const std::vector<double>& input) {
    std::fill(x.begin(), x.end(), 0.0);
    std::size_t off = 0;
    if (input_free_) {
      std::copy(input.begin(), input.end(), x.begin());
      off = input_size_;
    }
    for (int c = 0; c < ncells; ++c)
      x[off + static_cast<std::size_t>(c) * aux_block_ + combined_labels[c]] = 1.0;
    fn(x);
  };

  auto for_each_labeling =
      [&](const std::function<void(const std::vector<int>&)>& sink) {
        if (is_single_aux(kind_.tag)) {
          for_each_partition(ncells, cards_.u, sink);
          return;
        }
        if (is_source_kind(kind_.tag)) {
          const long long count =
              count_partitions(ncells, cards_.u, kDetCandidateCap);
          // trivial labeling first so a candidate always exists
          sink(std::vector<int>(ncells, 0));
          if (count <= kDetCandidateCap && count > 0) {
            for_each_partition(ncells, cards_.u, sink);
          } else {
            // all product labelings f(S1) x g(S2), then the common part
            const int n1 = kind_.source->s1_size(), n2 = kind_.source->s2_size();
            std::vector<int> lab(ncells);
            for_each_partition(n1, n1, [&](const std::vector<int>& f) {
              const int fk = 1 + *std::max_element(f.begin(), f.end());
              for_each_partition(n2, n2, [&](const std::vector<int>& g) {
                const int gk = 1 + *std::max_element(g.begin(), g.end());
                if (fk * gk > cards_.u) return;
                for (int c = 0; c < ncells; ++c) {
                  const int cell = active_cells_[c];
                  lab[c] = f[cell / n2] * gk + g[cell % n2];
                }
                sink(lab);
              });
            });
            const CommonPart cp = common_part(*kind_.source);
            if (cp.components <= cards_.u) {
              for (int c = 0; c < ncells; ++c)
                lab[c] = cp.cell_label[active_cells_[c]];
              sink(lab);
            }
          }
          return;
        }
        // triple-auxiliary kinds: partitions per variable
        const int k0 = cards_.v0, k1 = cards_.v1, k2 = cards_.v2;
        const long long c0 = count_partitions(ncells, k0, kDetCandidateCap);
        const long long c1 = count_partitions(ncells, k1, kDetCandidateCap);
        const long long c2 = count_partitions(ncells, k2, kDetCandidateCap);
        std::vector<int> lab(ncells);
        auto combine = [&](const std::vector<int>& l0, const std::vector<int>& l1,
                           const std::vector<int>& l2) {
          for (int c = 0; c < ncells; ++c)
            lab[c] = (l0[c] * k1 + l1[c]) * k2 + l2[c];
          sink(lab);
        };
        const bool full = c0 > 0 && c1 > 0 && c2 > 0 &&
                          c0 <= kDetCandidateCap / std::max(1LL, c1) &&
                          c0 * c1 <= kDetCandidateCap / std::max(1LL, c2);
        if (full) {
          for_each_partition(ncells, k0, [&](const std::vector<int>& l0) {
            for_each_partition(ncells, k1, [&](const std::vector<int>& l1) {
              for_each_partition(ncells, k2, [&](const std::vector<int>& l2) {
                combine(l0, l1, l2);
              });
            });
          });
        } else {
          // vary one variable at a time, others trivial or identity
          const std::vector<int> trivial(ncells, 0);
          std::vector<int> ident(ncells);
          for (int c = 0; c < ncells; ++c) ident[c] = c;
          auto clampk = [&](const std::vector<int>& l, int k) {
            std::vector<int> out(ncells);
            for (int c = 0; c < ncells; ++c) out[c] = std::min(l[c], k - 1);
            return out;
          };
          const std::vector<std::vector<int>> basics = {trivial, ident};
          for_each_partition(ncells, k0, [&](const std::vector<int>& l0) {
            for (const auto& b1 : basics)
              for (const auto& b2 : basics)
                combine(l0, clampk(b1, k1), clampk(b2, k2));
          });
          for_each_partition(ncells, k1, [&](const std::vector<int>& l1) {
            for (const auto& b0 : basics)
              for (const auto& b2 : basics)
                combine(clampk(b0, k0), l1, clampk(b2, k2));
          });
          for_each_partition(ncells, k2, [&](const std::vector<int>& l2) {
            for (const auto& b0 : basics)
              for (const auto& b1 : basics)
                combine(clampk(b0, k0), clampk(b1, k1), l2);
          });
        }
      };

  for (const auto& input : inputs)
    for_each_labeling([&](const std::vector<int>& lab) { emit(lab, input); });
}

Json KindEvaluator::witness_json(const std::vector<double>& x) const {
  std::vector<double> input, rows;
  expand(x, input, rows);
  Json j;
  j["kind"] = to_string(kind_.tag);
  if (!input.empty()) {
    Json in = Json::array();
    for (double v : input) in.push_back(round_sig(v));
    j["input"] = std::move(in);
  }
  Json r = Json::array();
  const int total = static_cast<int>(rows.size()) / aux_block_;
  for (int c = 0; c < total; ++c) {
    Json row = Json::array();
    for (int v = 0; v < aux_block_; ++v)
      row.push_back(round_sig(rows[static_cast<std::size_t>(c) * aux_block_ + v]));
    r.push_back(std::move(row));
  }
  j["rows"] = std::move(r);
  if (is_channel_triple(kind_.tag) || kind_.tag == RegionTag::R10SourceLossy)
    j["aux_dims"] = Json::array({cards_.v0, cards_.v1, cards_.v2});
  else
    j["aux_dims"] = Json::array({aux_block_});
  return j;
}

AuxAssignment KindEvaluator::witness_assignment(const std::vector<double>& x) const {
  std::vector<double> input, rows;
  expand(x, input, rows);
  std::vector<int> from_dims, to_dims;
  if (is_source_kind(kind_.tag)) {
    from_dims = {kind_.source->s1_size(), kind_.source->s2_size()};
  } else {
    from_dims = {input_size_};
  }
  if (is_channel_triple(kind_.tag) || kind_.tag == RegionTag::R10SourceLossy)
    to_dims = {cards_.v0, cards_.v1, cards_.v2};
  else
    to_dims = {aux_block_};
  Pmf in = input.empty() ? Pmf::uniform(1) : Pmf(input);
  return AuxAssignment{std::move(in), CondPmf(from_dims, to_dims, rows)};
}

namespace {

struct DirectionBest {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

}  // namespace

RegionApprox build_region(const RegionKind& kind,
                          const std::vector<Direction>& directions,
                          const SearchConfig& cfg, const BuildOptions& opts) {
  const KindEvaluator ev(kind);
  const std::size_t nd = directions.size();
  if (nd == 0) throw std::invalid_argument("build_region: no directions");
  for (const auto& d : directions)
    if (static_cast<int>(d.lambda.size()) != ev.dim())
      throw std::invalid_argument("build_region: direction dim mismatch");

  std::vector<DirectionBest> best(nd);
  long long det_candidates = 0;

  // deterministic phase: every candidate scores every direction
  ev.for_each_det_candidate(cfg, [&](const std::vector<double>& x) {
    ++det_candidates;
    const SliceData s = ev.slice(x);
    for (std::size_t i = 0; i < nd; ++i) {
      const double v = ev.support_at(s, directions[i].lambda);
      if (v > best[i].value) {
        best[i].value = v;
        best[i].x = x;
      }
    }
  });

  // ascent phase, independently per direction
  const int per_dir = opts.per_direction_restarts > 0
                          ? opts.per_direction_restarts
                          : std::max(2, cfg.restarts / 8);
  std::vector<long long> evals(nd, 0);
  parallel_for(nd, [&](std::size_t i) {
    const bool skip = opts.ascent_only_if_below &&
                      best[i].value >= (*opts.ascent_only_if_below)[i] - 1e-15;
    if (skip) return;
    const auto& lam = directions[i].lambda;
    Objective obj = [&ev, &lam](const std::vector<double>& x) {
      return ev.support_at(ev.slice(x), lam);
    };
    std::vector<std::vector<double>> seeds;
    if (!best[i].x.empty()) seeds.push_back(best[i].x);
    SearchResult r = refine_simplex(obj, ev.shape(), seeds, per_dir, cfg,
                                    0x5eedULL + i);
    evals[i] += r.evaluations;
    if (r.best_value > best[i].value + kImprove) {
      best[i].value = r.best_value;
      best[i].x = r.witness;
    }
    if (opts.intensify_restarts > 0 && opts.ascent_only_if_below &&
        best[i].value < (*opts.ascent_only_if_below)[i] - 1e-15) {
      SearchResult r2 = refine_simplex(obj, ev.shape(), seeds,
                                       opts.intensify_restarts, cfg,
                                       0xf0c0ULL + i);
      evals[i] += r2.evaluations;
      if (r2.best_value > best[i].value + kImprove) {
        best[i].value = r2.best_value;
        best[i].x = r2.witness;
      }
    }
  });

  RegionApprox region;
  region.dim = ev.dim();
  region.kappa = 1.0;
  long long total_evals = det_candidates;
  for (long long e : evals) total_evals += e;
  for (std::size_t i = 0; i < nd; ++i) {
    RegionEntry e;
    e.direction = directions[i];
    e.h = best[i].value;
    if (!best[i].x.empty()) {
      e.witness = ev.witness_json(best[i].x);
      const SliceData s = ev.slice(best[i].x);
      if (s.is_corner) {
        for (int k = 0; k < 10; ++k) {
          LinearInequality iq;
          iq.normal.assign(10, 0.0);
          iq.normal[k] = 1.0;
          iq.bound = s.corner[k];
          e.witness_region.push_back(std::move(iq));
        }
      } else {
        e.witness_region = s.ineqs;
      }
    }
    region.entries.push_back(std::move(e));
  }
  region.meta["kind"] = to_string(kind.tag);
  region.meta["seed"] = cfg.seed;
  region.meta["directions"] = nd;
  region.meta["det_candidates"] = det_candidates;
  region.meta["restarts_per_direction"] = per_dir;
  region.meta["evaluations"] = total_evals;
  return region;
}

SupportResult maximize_support(const RegionKind& kind, const Direction& d,
                               const SearchConfig& cfg) {
  BuildOptions opts;
  opts.per_direction_restarts = cfg.restarts;
  RegionApprox r = build_region(kind, {d}, cfg, opts);
  SupportResult out;
  out.value = r.entries[0].h;
  out.witness = r.entries[0].witness;
  out.evaluations = r.meta["evaluations"].get<long long>();
  return out;
}

CapFitResult fit_caps(const RegionKind& kind, const std::vector<double>& needs,
                      double kappa, const SearchConfig& cfg) {
  if (!(kappa > 0.0)) throw std::invalid_argument("fit_caps: kappa <= 0");
  const KindEvaluator ev(kind);
  {
    // constraint count must match the builder's output
    std::vector<double> probe(ev.shape().size() ? std::accumulate(ev.shape().begin(), ev.shape().end(), 0) : 0, 0.0);
    std::size_t off = 0;
    for (int s : ev.shape()) {
      probe[off] = 1.0;
      off += s;
    }
    if (ev.cap_values(ev.slice(probe)).size() != needs.size())
      throw std::invalid_argument("fit_caps: needs size mismatch");
  }
  Objective obj = [&](const std::vector<double>& x) {
    const auto caps = ev.cap_values(ev.slice(x));
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < needs.size(); ++i)
      worst = std::min(worst, kappa * caps[i] - needs[i]);
    return worst;
  };

  CapFitResult out;
  out.min_slack = -std::numeric_limits<double>::infinity();
  long long dets = 0;
  ev.for_each_det_candidate(cfg, [&](const std::vector<double>& x) {
    ++dets;
    const double v = obj(x);
    if (v > out.min_slack) {
      out.min_slack = v;
      out.witness_x = x;
    }
  });
  std::vector<std::vector<double>> seeds;
  if (!out.witness_x.empty()) seeds.push_back(out.witness_x);
  SearchResult r = refine_simplex(obj, ev.shape(), seeds, cfg.restarts, cfg,
                                  0xca9f17ULL);
  out.evaluations = dets + r.evaluations;
  if (r.best_value > out.min_slack + kImprove) {
    out.min_slack = r.best_value;
    out.witness_x = r.witness;
  }
  const auto caps = ev.cap_values(ev.slice(out.witness_x));
  for (std::size_t i = 0; i < needs.size(); ++i)
    out.slacks.push_back(kappa * caps[i] - needs[i]);
  out.witness = ev.witness_json(out.witness_x);
  return out;
}

}  // namespace bcbound
