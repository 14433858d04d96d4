// Region kinds and the support-value search: per-direction maximization of
// polytope supports / R^10 corner sums over auxiliary conditionals (and the
// input law when the kind ranges over inputs).
//
// Search phases per direction: (1) deterministic auxiliaries, enumerated as
// canonical set partitions (information terms are invariant to relabeling,
// so partitions cover every deterministic map), crossed with a coarse input
// grid when the input is free; (2) Dirichlet restarts; (3) coordinate ascent
// along simplex edges. Found values are lower bounds by construction.

#ifndef BCBOUND_SUPPORT_HPP
#define BCBOUND_SUPPORT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bcbound/bounds.hpp"
#include "bcbound/channel.hpp"
#include "bcbound/region.hpp"
#include "bcbound/search.hpp"

namespace bcbound {

enum class RegionTag {
  MartonInner,
  NairOuter,
  SourceRegion,
  DetCapacity,
  DegradedCD,
  R10Channel,
  R10SourceLossless,
  R10SourceLossy,
};

std::string to_string(RegionTag tag);

struct RegionKind {
  RegionTag tag = RegionTag::NairOuter;
  std::optional<BroadcastChannel> channel;  // physical or virtual channel
  std::optional<SourcePair> source;
  std::optional<Pmf> input;  // fixed input law; empty = union over inputs
  AuxCards cards;
  bool full_cards = false;

  int dim() const;

  static RegionKind marton_inner(BroadcastChannel ch, std::optional<Pmf> px,
                                 AuxCards cards = {});
  static RegionKind nair_outer(BroadcastChannel ch, std::optional<Pmf> px,
                               AuxCards cards = {});
  static RegionKind source_region(SourcePair src, AuxCards cards = {});
  // capacity slice of a deterministic channel via the single-auxiliary form
  static RegionKind det_capacity(BroadcastChannel ch, std::optional<Pmf> px,
                                 AuxCards cards = {});
  static RegionKind degraded_cd(BroadcastChannel ch, std::optional<Pmf> px,
                                AuxCards cards = {});
  static RegionKind r10_channel(BroadcastChannel ch, std::optional<Pmf> px,
                                AuxCards cards = {});
  static RegionKind r10_source(SourcePair src, AuxCards cards = {});
  static RegionKind r10_lossy(Pmf ps, BroadcastChannel virt,
                              AuxCards cards = {});
};

// One candidate's realized slice: inequality list (dim <= 3) or corner box.
struct SliceData {
  std::vector<LinearInequality> ineqs;
  std::vector<std::vector<double>> vertices;  // dim <= 3 only
  std::array<double, 10> corner{};            // dim 10 only
  bool is_corner = false;
};

class KindEvaluator {
 public:
  explicit KindEvaluator(RegionKind kind);

  const RegionKind& kind() const { return kind_; }
  int dim() const { return dim_; }
  // optimizer blocks: [input simplex when free] + one block per conditioning
  // symbol with positive mass
  const std::vector<int>& shape() const { return shape_; }

  SliceData slice(const std::vector<double>& x) const;
  double support_at(const SliceData& s, const std::vector<double>& lambda) const;
  // bound values of the slice's inequalities (corner entries for R^10 kinds);
  // order matches the constraint builders
  std::vector<double> cap_values(const SliceData& s) const;

  // deterministic candidates, streamed into fn as flattened assignments
  void for_each_det_candidate(
      const SearchConfig& cfg,
      const std::function<void(const std::vector<double>&)>& fn) const;

  Json witness_json(const std::vector<double>& x) const;
  AuxAssignment witness_assignment(const std::vector<double>& x) const;

 private:
  RegionKind kind_;
  int dim_ = 0;
  std::vector<int> shape_;
  bool input_free_ = false;
  int input_size_ = 0;
  std::vector<int> active_cells_;  // conditioning symbols with positive mass
  int aux_block_ = 0;              // product auxiliary alphabet size
  ResolvedCards cards_;

  void expand(const std::vector<double>& x, std::vector<double>& input,
              std::vector<double>& rows) const;
};

struct BuildOptions {
  int per_direction_restarts = 0;  // 0 = derive from cfg.restarts
  // Skip ascent on direction i when the deterministic phase already reaches
  // this value (used to focus effort on potentially violated directions).
  std::optional<std::vector<double>> ascent_only_if_below;
  int intensify_restarts = 0;  // extra restarts for directions still below
};

RegionApprox build_region(const RegionKind& kind,
                          const std::vector<Direction>& directions,
                          const SearchConfig& cfg,
                          const BuildOptions& opts = {});

struct SupportResult {
  double value = 0.0;
  std::vector<double> witness_x;
  Json witness;
  long long evaluations = 0;
  std::vector<double> history;
};

SupportResult maximize_support(const RegionKind& kind, const Direction& d,
                               const SearchConfig& cfg);

// Best witness for "needs_i <= kappa * cap_i(slice) for every constraint i":
// maximizes the minimum slack over auxiliaries (and the input when free).
// Needs must match the kind's constraint order (nonnegativity excluded).
struct CapFitResult {
  double min_slack = 0.0;
  std::vector<double> slacks;
  std::vector<double> witness_x;
  Json witness;
  long long evaluations = 0;
};

CapFitResult fit_caps(const RegionKind& kind, const std::vector<double>& needs,
                      double kappa, const SearchConfig& cfg);

// Structured input laws: uniform, the vertices, and a coarse simplex grid
// with cfg.grid_points per axis (deduplicated, deterministic order).
std::vector<std::vector<double>> input_candidates(int nx,
                                                  const SearchConfig& cfg);

}  // namespace bcbound

#endif  // BCBOUND_SUPPORT_HPP
