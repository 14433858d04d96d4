// Two-receiver broadcast channels and correlated source pairs: the Blackwell
// channel, the alpha-parameterized example source, virtual broadcast channels
// induced by a source, Gacs-Korner common parts, and the more-capable test.

#ifndef BCBOUND_CHANNEL_HPP
#define BCBOUND_CHANNEL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bcbound/prob.hpp"
#include "bcbound/search.hpp"

namespace bcbound {

// p(y1, y2 | x) as one stochastic slice per input symbol. Also used for
// virtual broadcast channels p(s1_hat, s2_hat | s).
class BroadcastChannel {
 public:
  BroadcastChannel(int x_size, int y1_size, int y2_size,
                   std::vector<double> probs);

  int x_size() const { return x_size_; }
  int y1_size() const { return y1_size_; }
  int y2_size() const { return y2_size_; }
  const std::vector<double>& probs() const { return probs_; }
  double at(int x, int y1, int y2) const {
    return probs_[(static_cast<std::size_t>(x) * y1_size_ + y1) * y2_size_ + y2];
  }

  // True when every input maps to a single output pair with probability 1.
  bool is_deterministic(double tol = 1e-12) const;

  // Per-input output marginals, row-major [x][y].
  std::vector<double> y1_given_x() const;
  std::vector<double> y2_given_x() const;

 private:
  int x_size_, y1_size_, y2_size_;
  std::vector<double> probs_;
};

BroadcastChannel blackwell();
// n parallel clean binary pipes to both receivers: X = Y1 = Y2, |X| = 2^bits.
BroadcastChannel clean_pipe(int bits);

class SourcePair {
 public:
  SourcePair(int s1_size, int s2_size, std::vector<double> probs);

  int s1_size() const { return s1_size_; }
  int s2_size() const { return s2_size_; }
  const std::vector<double>& probs() const { return probs_; }
  double at(int s1, int s2) const {
    return probs_[static_cast<std::size_t>(s1) * s2_size_ + s2];
  }

  std::vector<double> marginal1() const;
  std::vector<double> marginal2() const;
  double h1() const;
  double h2() const;
  double h12() const;
  JointPmf joint() const;  // dims {s1_size, s2_size}

 private:
  int s1_size_, s2_size_;
  std::vector<double> probs_;
};

// Gacs-Korner common part: connected components of the bipartite support
// graph. Labels are -1 for symbols with zero marginal / cells off support.
struct CommonPart {
  std::vector<int> s1_label;
  std::vector<int> s2_label;
  std::vector<int> cell_label;        // size s1*s2, component of each support cell
  std::vector<double> component_prob;
  int components = 0;
  double entropy_s0 = 0.0;
};

CommonPart common_part(const SourcePair& src);

// Deterministic broadcast channel whose inputs are the support cells of the
// source, each emitting its own (s1, s2); `input` is the source law on cells.
struct VirtualChannel {
  BroadcastChannel channel;
  Pmf input;
  std::vector<std::pair<int, int>> cells;  // input symbol -> (s1, s2)
};

VirtualChannel virtual_channel_of(const SourcePair& src);

// The section-IV.B example: S1 = (S~0(a), S~1), S2 = (S-0(a), S-2), with
// beta(alpha) solved from H(S~0, S-0) = log2(3) - 4/3. Composite symbols
// are flattened row-major: s1 = 2*s~0 + s~1, s2 = 2*s-0 + s-2.
struct ExampleSource {
  SourcePair pair;
  double alpha = 0.0;
  double beta = 0.0;
  double q = 0.0;  // p(S~1 = 0) = p(S-2 = 0) = Hb^{-1}(2/3)
};

// Valid alpha range [alpha_min, alpha_max) of the example source.
double example_source_alpha_min();
double example_source_alpha_max();
ExampleSource example_source(double alpha);

// The optimization variable: an input law plus a conditional from the input
// alphabet to the (product) auxiliary alphabet.
struct AuxAssignment {
  Pmf input;
  CondPmf aux;
};

// Full joint p(v0, v1, v2, x, y1, y2) = aux(v|x) input(x) ch(y1, y2|x);
// aux must map {x_size} to a rank-3 auxiliary product alphabet.
JointPmf joint_from(const Pmf& input, const BroadcastChannel& ch,
                    const CondPmf& aux);

struct MoreCapableVerdict {
  enum class Status { Yes, No, Inconclusive };
  Status status = Status::Inconclusive;
  double best_gap = 0.0;            // max over found p_X of I(X;Y1) - I(X;Y2)
  std::vector<double> witness_px;   // maximizer (violation witness when No)
  long long evaluations = 0;
  int restarts = 0;
};

// Tests whether p(y2|x) is more capable than p(y1|x), i.e. whether
// I(X;Y2) >= I(X;Y1) for every input law. "Yes" is evidence-level (a
// heuristic maximum cannot prove the global inequality); "No" carries an
// explicit witness.
MoreCapableVerdict is_more_capable(const BroadcastChannel& ch,
                                   const SearchConfig& cfg,
                                   double tol = 1e-9);

// I(X;Yi) for a given input law (receiver = 1 or 2).
double input_output_mi(const BroadcastChannel& ch,
                       const std::vector<double>& px, int receiver);

}  // namespace bcbound

#endif  // BCBOUND_CHANNEL_HPP
