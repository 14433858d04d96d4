// The inequality systems behind the rate regions: information-term
// evaluators for channel-side auxiliaries (V0,V1,V2|X), source-side
// auxiliaries (U|S1,S2 and U0,U1,U2|S), the induced polytopes and R^10
// corners, and the chain-sum pattern evaluator that generates them.
//
// Fast evaluators here are the hot kernels; channel_terms_reference builds
// the full joint and recomputes everything through the generic entropy
// machinery, and stays as the cross-check path.

#ifndef BCBOUND_BOUNDS_HPP
#define BCBOUND_BOUNDS_HPP

#include <array>
#include <vector>

#include "bcbound/channel.hpp"
#include "bcbound/polytope.hpp"
#include "bcbound/prob.hpp"

namespace bcbound {

// I-terms of a channel-side auxiliary assignment. c1/c2 condition on X, so
// they vanish exactly when the auxiliaries determine the input.
struct ChannelTerms {
  double a1 = 0;   // I(V0;Y1)
  double a2 = 0;   // I(V0;Y2)
  double b1 = 0;   // I(V1;Y1|V0)
  double b2 = 0;   // I(V2;Y2|V0)
  double c1 = 0;   // I(X;Y1|V0,V2)
  double c2 = 0;   // I(X;Y2|V0,V1)
  double i12 = 0;  // I(V1;V2|V0)
};

// aux_rows: x_size rows, each a pmf over v0*v1*v2 (row-major v0,v1,v2).
ChannelTerms compute_channel_terms(const std::vector<double>& px,
                                   const BroadcastChannel& ch,
                                   const std::vector<double>& aux_rows, int n0,
                                   int n1, int n2);

// Same terms through JointPmf + mutual_information (reference path).
ChannelTerms channel_terms_reference(const Pmf& input,
                                     const BroadcastChannel& ch,
                                     const CondPmf& aux);

struct SourceTerms {
  double i1 = 0;    // I(U;S1)
  double i2 = 0;    // I(U;S2)
  double h1 = 0;    // H(S1)
  double h2 = 0;    // H(S2)
  double h1u = 0;   // H(S1|U)
  double h2u = 0;   // H(S2|U)
  double h12u = 0;  // H(S1,S2|U)
};

// aux_rows: one pmf over u per (s1,s2) cell, row-major; rows on zero-mass
// cells are ignored.
SourceTerms compute_source_terms(const SourcePair& src,
                                 const std::vector<double>& aux_rows, int nu);

// Source-region terms of a deterministic channel viewed through an input law
// and a test conditional U|X: I(U;Y1), I(U;Y2), H(Yi|U), H(Y1,Y2|U).
SourceTerms compute_detcap_terms(const std::vector<double>& px,
                                 const BroadcastChannel& ch,
                                 const std::vector<double>& aux_rows, int nu);

// Degraded-message-set terms for a single auxiliary V|X.
struct CdTerms {
  double iv_y1 = 0;   // I(V;Y1)
  double ix_y2_v = 0; // I(X;Y2|V)
  double ix_y2 = 0;   // I(X;Y2)
};

CdTerms compute_cd_terms(const std::vector<double>& px,
                         const BroadcastChannel& ch,
                         const std::vector<double>& aux_rows, int nv);

// Lossy source-side terms for (U0,U1,U2|S) against a virtual channel.
struct LossyTerms {
  double a1 = 0;  // I(U0;S1^)
  double a2 = 0;  // I(U0;S2^)
  double b1 = 0;  // I(U1;S1^|U0)
  double b2 = 0;  // I(U2;S2^|U0)
  double c1 = 0;  // I(S;S1^|U0,U2)
  double c2 = 0;  // I(S;S2^|U0,U1)
};

LossyTerms compute_lossy_terms(const Pmf& ps, const BroadcastChannel& virt,
                               const std::vector<double>& aux_rows, int n0,
                               int n1, int n2);

// ---- polytope builders -------------------------------------------------

// Marton inner bound slice for one auxiliary, in the equivalent min{} form.
// The sum bound subtracts I(V1;V2|V0) and is clamped at zero; `clamped`
// reports when that happened.
Polytope cin_polytope(const ChannelTerms& t, bool* clamped = nullptr);

// Nair outer bound slice for one auxiliary (5 inequalities).
Polytope cout_polytope(const ChannelTerms& t);

// C(p_{S1,S2}) slice for one test conditional (also serves deterministic-
// channel capacity slices via compute_detcap_terms).
Polytope source_polytope(const SourceTerms& t);

// Degraded-message-set slice in (R0, R2).
Polytope cd_polytope(const CdTerms& t);

// ---- R^10 corners --------------------------------------------------------

std::array<double, 10> r10_channel_corner(const ChannelTerms& t);
std::array<double, 10> r10_source_corner(const SourceTerms& t);
std::array<double, 10> r10_lossy_corner(const LossyTerms& t);

// Requirement profile of a rate triple against the 10 coordinates:
// (R0, R0, R0+R1, R0+R2, R0+R2, R0+R1, S, S, S, S). A triple lies in the
// outer-bound slice of one auxiliary iff its profile is dominated by that
// auxiliary's corner.
std::array<double, 10> r10_point_profile(double r0, double r1, double r2);

// ---- chain-sum patterns ---------------------------------------------------

// One chained information sum: sum_i I(U_{A_i}; out_{a(i)} | U_{A_1..A_{i-1}}).
struct Pattern {
  std::vector<std::vector<int>> subsets;  // A_i subset of {0,..,L}
  std::vector<int> receivers;             // a(i) in {1,2}
};

// Evaluates the pattern on a joint laid out as (aux_0..aux_L, core, out1,
// out2); `aux_count` = L+1. Empty unions condition on a constant.
double pattern_sum(const JointPmf& joint, int aux_count, const Pattern& pat);

// Both sides of the comparison at once: source joint (U0..UL, S, S1^, S2^)
// and channel joint (V0..VL, X, Y1, Y2).
std::pair<double, double> lemma1_pair(const JointPmf& joint_source,
                                      const JointPmf& joint_channel,
                                      int aux_count, const Pattern& pat);

// The ten patterns that generate the R^10 coordinate bounds (L = 2).
// Entries 7..10 take their trailing term against the core variable, so the
// corner builders substitute U=S (resp. V=X) there; see the tests.
const std::vector<Pattern>& r10_patterns();

// ---- auxiliary cardinalities ----------------------------------------------

struct AuxCards {
  int v0 = 0, v1 = 0, v2 = 0, u = 0;  // 0 = resolve to the desk default
};

// Desk defaults: v0 = |X|+1, v1 = v2 = |X|, u = |S1||S2|; `full` switches to
// the stated bounds v0 = |X|+5 and u = |S1||S2|+2.
struct ResolvedCards {
  int v0 = 1, v1 = 1, v2 = 1, u = 1;
};

ResolvedCards resolve_cards(const AuxCards& cards, int x_size, int s1_size,
                            int s2_size, bool full);

}  // namespace bcbound

#endif  // BCBOUND_BOUNDS_HPP
