// Sampled support-function representation of rate regions: direction banks,
// per-direction best values with explicit witnesses, kappa scaling,
// membership and containment verdicts.
//
// Searched support values are lower bounds, so the verdicts are one-sided:
// "holds" answers are evidence unless backed by a direct witness check, and
// "violated" answers always re-verify an explicit achievable witness.

#ifndef BCBOUND_REGION_HPP
#define BCBOUND_REGION_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bcbound/polytope.hpp"

namespace bcbound {

using Json = nlohmann::ordered_json;

// Nonnegative direction, normalized to unit 1-norm.
struct Direction {
  std::vector<double> lambda;
};

Direction make_direction(std::vector<double> raw);

// Deterministic direction bank. dim <= 3: all 0/1 indicator directions plus
// n random ones. dim 10: the coordinate axes, the convex-combination
// patterns obtained by weighting the five constraint groups and picking a
// side (or both) within each group, plus n random directions.
std::vector<Direction> sample_directions(int dim, int n, std::uint64_t seed);

struct RegionEntry {
  Direction direction;
  double h = 0.0;                        // best found support value
  Json witness;                          // aux assignment achieving h
  std::vector<LinearInequality> witness_region;  // region slice of the witness
};

struct RegionApprox {
  int dim = 0;
  double kappa = 1.0;
  std::vector<RegionEntry> entries;
  Json meta;

  // Support value of the scaled region in the entry's direction.
  double scaled_h(std::size_t i) const { return kappa * entries[i].h; }
};

RegionApprox scale(const RegionApprox& r, double kappa);

enum class VerdictStatus { CertifiedHolds, EvidenceHolds, EvidenceViolated, Inconclusive };

std::string to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double margin = 0.0;  // violation size (positive) or containment slack
  std::optional<Direction> direction;
  Json witness;
  Json trace;
};

// Membership of a point in the (kappa-scaled) region. A stored witness slice
// containing the point certifies membership; a direction with
// d.pt > kappa h(d) + tol is evidence of violation.
Verdict contains_point(const RegionApprox& r, const std::vector<double>& pt,
                       double tol);

// Does A (unscaled) sit inside kappa * B? Entries must share the direction
// bank. Violations re-verify against A's stored witness region.
Verdict region_subset(const RegionApprox& a, const RegionApprox& b,
                      double kappa, double tol);

// ---- serialization ----------------------------------------------------

// Round to 10 significant digits (all floats in emitted JSON/CSV go through
// this so reruns are byte-identical).
double round_sig(double v);

Json region_to_json(const RegionApprox& r);
RegionApprox region_from_json(const Json& j);
std::string region_to_csv(const RegionApprox& r);

}  // namespace bcbound

#endif  // BCBOUND_REGION_HPP
