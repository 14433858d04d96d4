// Necessary/sufficient condition checkers for broadcasting correlated
// sources: the common-part outer bound, the R^10-containment outer bound,
// capacity comparison for deterministic channels, the Markov / degraded /
// more-capable special cases, and the lossy virtual-channel sweep.
//
// Verdicts are one-sided by construction: a condition certified to HOLD
// carries directly checkable witnesses, while VIOLATED verdicts are
// evidence at the given search budget (global optimality is not certified).

#ifndef BCBOUND_CHECKS_HPP
#define BCBOUND_CHECKS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "bcbound/support.hpp"

namespace bcbound {

// Precondition failures (NotMarkov, NotMoreCapable, UnsupportedChannel, ...)
// map to CLI exit code 3.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct CheckConfig {
  SearchConfig search;
  int directions3 = 50;    // random directions on top of the indicator bank
  int directions10 = 200;  // random directions on top of axes + patterns
  double tol = 1e-6;       // support-comparison tolerance (bits)
  double cert_tol = 1e-9;  // witness slack tolerance for certified verdicts
  AuxCards cards;
  bool full_cards = false;
  int px_refine_rounds = 6;      // local input-grid refinement rounds
  int intensify_restarts = 16;   // extra ascent on near-violated directions
  int lossy_candidate_cap = 100000;
  int lossy_max_feasible = 32;   // containment runs on feasible candidates
};

struct NamedSlack {
  std::string name;
  double slack;
};

struct CheckReport {
  std::string check;
  VerdictStatus status = VerdictStatus::Inconclusive;
  double kappa = 1.0;
  double margin = 0.0;  // violation size (positive) / containment slack
  std::vector<NamedSlack> slacks;
  Json witnesses;
  Json trace;
};

int exit_code_for(VerdictStatus s);

// Common-part outer bound: searches an input law and auxiliaries whose five
// inequality groups dominate (H(S0), H(S1), H(S2), H(S1,S2), H(S1,S2)).
CheckReport check_ga_outer(const SourcePair& src, const BroadcastChannel& ch,
                           double kappa, const CheckConfig& cfg);

// R^10 containment test of the source region against the channel region,
// existential over the input law (grid plus refinement).
CheckReport check_new_outer(const SourcePair& src, const BroadcastChannel& ch,
                            double kappa, const CheckConfig& cfg);
// Same inputs evaluated at several kappas, sharing the region builds.
std::vector<CheckReport> check_new_outer_multi(const SourcePair& src,
                                               const BroadcastChannel& ch,
                                               const std::vector<double>& kappas,
                                               const CheckConfig& cfg);

// C(source) against kappa * C(channel); the channel must be deterministic
// (otherwise its capacity region has no computable characterization here).
CheckReport check_capacity_comparison(const SourcePair& src,
                                      const BroadcastChannel& ch, double kappa,
                                      const CheckConfig& cfg);

// Markov sources: membership of (H(S0), H(S1|S0), H(S2|S0)) in the scaled
// channel region; exact for deterministic channels, labeled outer-bound
// surrogate otherwise.
CheckReport check_markov_point(const SourcePair& src,
                               const BroadcastChannel& ch, double kappa,
                               const CheckConfig& cfg);

// S1 a deterministic function of S2: membership of (H(S1), H(S2|S1)) in the
// scaled degraded-message-set region.
CheckReport check_degraded_source(const SourcePair& src,
                                  const BroadcastChannel& ch, double kappa,
                                  const CheckConfig& cfg);

// Same membership test when receiver 2's channel is more capable.
CheckReport check_more_capable_case(const SourcePair& src,
                                    const BroadcastChannel& ch, double kappa,
                                    const CheckConfig& cfg);

struct DistortionSpec {
  std::vector<double> w1;  // |S| x |S1^| row-major
  std::vector<double> w2;  // |S| x |S2^| row-major
  int s1hat_size = 0;
  int s2hat_size = 0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Hamming distortion on each component of a flattened pair source.
DistortionSpec hamming_pair_distortion(int s1_size, int s2_size, double d1,
                                       double d2);

// Sweeps virtual channels meeting the distortion budget; EvidenceHolds when
// some candidate's R-region fits inside the scaled channel R-region.
CheckReport lossy_necessary_check(const Pmf& ps, const BroadcastChannel& ch,
                                  double kappa, const DistortionSpec& spec,
                                  const CheckConfig& cfg);

// End-to-end Blackwell demonstration: GA-bound witness slacks plus the
// R^10 violation scan for the alpha example source.
Json blackwell_demo(double alpha, double kappa, const CheckConfig& cfg);

Json report_to_json(const CheckReport& r);

}  // namespace bcbound

#endif  // BCBOUND_CHECKS_HPP
