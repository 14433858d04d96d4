#include "bcbound/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bcbound {

double plog2p(double p) {
  if (p < kProbFloor) return 0.0;
  return -p * std::log2(p);
}

double entropy_of(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) h += plog2p(p);
  return h;
}

namespace {

void check_mass(const std::vector<double>& probs, const char* what) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0))
      throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kMassTol)
    throw std::invalid_argument(std::string(what) + ": mass " +
                                std::to_string(sum) + " not 1");
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("Pmf: empty");
  check_mass(probs_, "Pmf");
}

Pmf Pmf::uniform(int n) {
  if (n <= 0) throw std::invalid_argument("Pmf::uniform: n <= 0");
  return Pmf(std::vector<double>(n, 1.0 / n));
}

Pmf Pmf::point_mass(int n, int at) {
  if (n <= 0 || at < 0 || at >= n)
    throw std::invalid_argument("Pmf::point_mass: bad index");
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return Pmf(std::move(p));
}

double Pmf::entropy() const { return entropy_of(probs_); }

JointPmf::JointPmf(std::vector<int> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) throw std::invalid_argument("JointPmf: no dims");
  std::size_t n = 1;
  for (int d : dims_) {
    if (d <= 0) throw std::invalid_argument("JointPmf: nonpositive dim");
    n *= static_cast<std::size_t>(d);
  }
  if (n != probs_.size())
    throw std::invalid_argument("JointPmf: dims do not match tensor length");
  check_mass(probs_, "JointPmf");
  strides_.assign(dims_.size(), 1);
  for (int i = static_cast<int>(dims_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(dims_[i + 1]);
}

std::vector<double> JointPmf::marginal(const std::vector<int>& vars) const {
  std::size_t out_size = 1;
  for (int v : vars) {
    if (v < 0 || v >= rank())
      throw std::invalid_argument("JointPmf::marginal: variable out of range");
    out_size *= static_cast<std::size_t>(dims_[v]);
  }
  std::vector<double> out(out_size, 0.0);
  const std::size_t n = probs_.size();
  for (std::size_t cell = 0; cell < n; ++cell) {
    double p = probs_[cell];
    if (p == 0.0) continue;
    std::size_t idx = 0;
    for (int v : vars)
      idx = idx * static_cast<std::size_t>(dims_[v]) + (cell / strides_[v]) % dims_[v];
    out[idx] += p;
  }
  return out;
}

double JointPmf::entropy() const { return entropy_of(probs_); }

double JointPmf::entropy_of_group(const std::vector<int>& vars) const {
  if (vars.empty()) return 0.0;
  return entropy_of(marginal(vars));
}

namespace {

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a)
    for (int y : b)
      if (x == y) return false;
  return true;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double clamp_mi(double v, const char* what) {
  if (v < 0.0) {
    if (v < -kMiClampTol)
      throw std::runtime_error(std::string(what) + ": negative value " +
                               std::to_string(v) + " (broken joint)");
    return 0.0;
  }
  return v;
}

}  // namespace

double mutual_information(const JointPmf& j, const std::vector<int>& group_a,
                          const std::vector<int>& group_b) {
  if (group_a.empty() || group_b.empty()) return 0.0;
  if (!disjoint(group_a, group_b))
    throw std::invalid_argument("mutual_information: overlapping groups");
  const double v = j.entropy_of_group(group_a) + j.entropy_of_group(group_b) -
                   j.entropy_of_group(concat(group_a, group_b));
  return clamp_mi(v, "mutual_information");
}

double conditional_mutual_information(const JointPmf& j,
                                      const std::vector<int>& group_a,
                                      const std::vector<int>& group_b,
                                      const std::vector<int>& group_c) {
  if (group_c.empty()) return mutual_information(j, group_a, group_b);
  if (group_a.empty() || group_b.empty()) return 0.0;
  if (!disjoint(group_a, group_b) || !disjoint(group_a, group_c) ||
      !disjoint(group_b, group_c))
    throw std::invalid_argument(
        "conditional_mutual_information: overlapping groups");
  const double v = j.entropy_of_group(concat(group_a, group_c)) +
                   j.entropy_of_group(concat(group_b, group_c)) -
                   j.entropy_of_group(group_c) -
                   j.entropy_of_group(concat(concat(group_a, group_b), group_c));
  return clamp_mi(v, "conditional_mutual_information");
}

CondPmf::CondPmf(std::vector<int> from_dims, std::vector<int> to_dims,
                 std::vector<double> probs)
    : from_dims_(std::move(from_dims)),
      to_dims_(std::move(to_dims)),
      probs_(std::move(probs)) {
  auto prod = [](const std::vector<int>& d) {
    int n = 1;
    for (int x : d) {
      if (x <= 0) throw std::invalid_argument("CondPmf: nonpositive dim");
      n *= x;
    }
    return n;
  };
  from_size_ = prod(from_dims_);
  to_size_ = prod(to_dims_);
  if (probs_.size() != static_cast<std::size_t>(from_size_) * to_size_)
    throw std::invalid_argument("CondPmf: tensor length mismatch");
  for (int r = 0; r < from_size_; ++r) {
    double sum = 0.0;
    for (int c = 0; c < to_size_; ++c) {
      double p = at(r, c);
      if (!(p >= 0.0)) throw std::invalid_argument("CondPmf: negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kMassTol)
      throw std::invalid_argument("CondPmf: row " + std::to_string(r) +
                                  " mass " + std::to_string(sum));
  }
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("binary_entropy: p outside [0,1]");
  return plog2p(p) + plog2p(1.0 - p);
}

double binary_entropy_inverse(double h) {
  if (h < 0.0 || h > 1.0)
    throw std::invalid_argument("binary_entropy_inverse: h outside [0,1]");
  if (h == 0.0) return 0.0;
  if (h >= 1.0) return 0.5;
  return solve_monotone_root([h](double x) { return binary_entropy(x) - h; },
                             0.0, 0.5, 1e-12);
}

double solve_monotone_root(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("solve_monotone_root: no sign change on bracket");
  double mid = lo;
  for (int it = 0; it < 400; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= 0.0) break;
  }
  return mid;
}

}  // namespace bcbound
