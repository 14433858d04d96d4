// Exact finite-alphabet probability kernel: pmfs, joint pmfs, conditional
// pmfs, Shannon information quantities in bits, binary entropy and its
// inverse, and monotone bisection root solving.
//
// All types are immutable after construction and all operations are pure,
// so everything here is safe to call from multiple threads.

#ifndef BCBOUND_PROB_HPP
#define BCBOUND_PROB_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcbound {

// Probabilities below this are treated as exact zeros inside entropy sums.
inline constexpr double kProbFloor = 1e-15;
// Pmf / joint mass normalization tolerance.
inline constexpr double kMassTol = 1e-12;
// Negative mutual informations within this of zero are clamped to zero;
// anything more negative signals a broken joint and raises.
inline constexpr double kMiClampTol = 1e-12;

// -log2 contribution of one cell, with 0 log 0 = 0.
double plog2p(double p);

// Entropy in bits of a raw nonnegative table (need not be validated).
double entropy_of(const std::vector<double>& probs);

class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);
  static Pmf uniform(int n);
  static Pmf point_mass(int n, int at);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }
  double entropy() const;

 private:
  std::vector<double> probs_;
};

// Dense joint pmf over a product of finite alphabets, row-major layout.
class JointPmf {
 public:
  JointPmf(std::vector<int> dims, std::vector<double> probs);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& probs() const { return probs_; }
  int rank() const { return static_cast<int>(dims_.size()); }
  std::size_t cells() const { return probs_.size(); }

  // Marginal table over a subset of variables (indices ascending order not
  // required; output ordered as `vars` is given).
  std::vector<double> marginal(const std::vector<int>& vars) const;
  double entropy() const;
  double entropy_of_group(const std::vector<int>& vars) const;

 private:
  std::vector<int> dims_;
  std::vector<double> probs_;
  std::vector<std::size_t> strides_;
};

// I(A;B) in bits, marginalizing over everything else. Groups must be disjoint.
double mutual_information(const JointPmf& j, const std::vector<int>& group_a,
                          const std::vector<int>& group_b);

// I(A;B|C) in bits. Groups must be pairwise disjoint. Empty C reduces to
// mutual_information.
double conditional_mutual_information(const JointPmf& j,
                                      const std::vector<int>& group_a,
                                      const std::vector<int>& group_b,
                                      const std::vector<int>& group_c);

// Conditional pmf: one stochastic row per conditioning value.
class CondPmf {
 public:
  CondPmf(std::vector<int> from_dims, std::vector<int> to_dims,
          std::vector<double> probs);

  const std::vector<int>& from_dims() const { return from_dims_; }
  const std::vector<int>& to_dims() const { return to_dims_; }
  int from_size() const { return from_size_; }
  int to_size() const { return to_size_; }
  // Row-major: probs()[row * to_size() + col].
  const std::vector<double>& probs() const { return probs_; }
  double at(int row, int col) const { return probs_[static_cast<std::size_t>(row) * to_size_ + col]; }

 private:
  std::vector<int> from_dims_, to_dims_;
  int from_size_, to_size_;
  std::vector<double> probs_;
};

// H_b(p) in bits; endpoints map to 0. p outside [0,1] raises.
double binary_entropy(double p);

// Inverse of H_b restricted to [0, 1/2]; |H_b(result) - h| <= 1e-12.
double binary_entropy_inverse(double h);

// Plain bisection for a continuous monotone f with f(lo), f(hi) bracketing 0.
// Returns x with |f(x)| <= tol. Raises if the bracket has no sign change.
double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol);

}  // namespace bcbound

#endif  // BCBOUND_PROB_HPP
