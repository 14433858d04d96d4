#include "bcbound/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcbound {

BroadcastChannel::BroadcastChannel(int x_size, int y1_size, int y2_size,
                                   std::vector<double> probs)
    : x_size_(x_size), y1_size_(y1_size), y2_size_(y2_size),
      probs_(std::move(probs)) {
  if (x_size_ <= 0 || y1_size_ <= 0 || y2_size_ <= 0)
    throw std::invalid_argument("BroadcastChannel: nonpositive alphabet");
  if (probs_.size() !=
      static_cast<std::size_t>(x_size_) * y1_size_ * y2_size_)
    throw std::invalid_argument("BroadcastChannel: tensor length mismatch");
  for (int x = 0; x < x_size_; ++x) {
    double sum = 0.0;
    for (int a = 0; a < y1_size_; ++a)
      for (int b = 0; b < y2_size_; ++b) {
        const double p = at(x, a, b);
        if (!(p >= 0.0))
          throw std::invalid_argument("BroadcastChannel: negative entry");
        sum += p;
      }
    if (std::abs(sum - 1.0) > kMassTol)
      throw std::invalid_argument("BroadcastChannel: slice " +
                                  std::to_string(x) + " mass " +
                                  std::to_string(sum));
  }
}

bool BroadcastChannel::is_deterministic(double tol) const {
  for (int x = 0; x < x_size_; ++x) {
    double mx = 0.0;
    for (int a = 0; a < y1_size_; ++a)
      for (int b = 0; b < y2_size_; ++b) mx = std::max(mx, at(x, a, b));
    if (mx < 1.0 - tol) return false;
  }
  return true;
}

std::vector<double> BroadcastChannel::y1_given_x() const {
  std::vector<double> out(static_cast<std::size_t>(x_size_) * y1_size_, 0.0);
  for (int x = 0; x < x_size_; ++x)
    for (int a = 0; a < y1_size_; ++a)
      for (int b = 0; b < y2_size_; ++b)
        out[static_cast<std::size_t>(x) * y1_size_ + a] += at(x, a, b);
  return out;
}

std::vector<double> BroadcastChannel::y2_given_x() const {
  std::vector<double> out(static_cast<std::size_t>(x_size_) * y2_size_, 0.0);
  for (int x = 0; x < x_size_; ++x)
    for (int a = 0; a < y1_size_; ++a)
      for (int b = 0; b < y2_size_; ++b)
        out[static_cast<std::size_t>(x) * y2_size_ + b] += at(x, a, b);
  return out;
}

BroadcastChannel blackwell() {
  std::vector<double> p(3 * 2 * 2, 0.0);
  auto set = [&](int x, int y1, int y2) { p[(x * 2 + y1) * 2 + y2] = 1.0; };
  set(0, 0, 0);
  set(1, 1, 1);
  set(2, 0, 1);
  return BroadcastChannel(3, 2, 2, std::move(p));
}

BroadcastChannel clean_pipe(int bits) {
  if (bits < 1 || bits > 10)
    throw std::invalid_argument("clean_pipe: bits outside [1,10]");
  const int n = 1 << bits;
  std::vector<double> p(static_cast<std::size_t>(n) * n * n, 0.0);
  for (int x = 0; x < n; ++x)
    p[(static_cast<std::size_t>(x) * n + x) * n + x] = 1.0;
  return BroadcastChannel(n, n, n, std::move(p));
}

SourcePair::SourcePair(int s1_size, int s2_size, std::vector<double> probs)
    : s1_size_(s1_size), s2_size_(s2_size), probs_(std::move(probs)) {
  if (s1_size_ <= 0 || s2_size_ <= 0)
    throw std::invalid_argument("SourcePair: nonpositive alphabet");
  if (probs_.size() != static_cast<std::size_t>(s1_size_) * s2_size_)
    throw std::invalid_argument("SourcePair: tensor length mismatch");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) throw std::invalid_argument("SourcePair: negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kMassTol)
    throw std::invalid_argument("SourcePair: mass " + std::to_string(sum));
}

std::vector<double> SourcePair::marginal1() const {
  std::vector<double> m(s1_size_, 0.0);
  for (int a = 0; a < s1_size_; ++a)
    for (int b = 0; b < s2_size_; ++b) m[a] += at(a, b);
  return m;
}

std::vector<double> SourcePair::marginal2() const {
  std::vector<double> m(s2_size_, 0.0);
  for (int a = 0; a < s1_size_; ++a)
    for (int b = 0; b < s2_size_; ++b) m[b] += at(a, b);
  return m;
}

double SourcePair::h1() const { return entropy_of(marginal1()); }
double SourcePair::h2() const { return entropy_of(marginal2()); }
double SourcePair::h12() const { return entropy_of(probs_); }

JointPmf SourcePair::joint() const {
  return JointPmf({s1_size_, s2_size_}, probs_);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CommonPart common_part(const SourcePair& src) {
  const int n1 = src.s1_size(), n2 = src.s2_size();
  UnionFind uf(n1 + n2);
  const auto m1 = src.marginal1();
  const auto m2 = src.marginal2();
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      if (src.at(a, b) > 0.0) uf.unite(a, n1 + b);

  CommonPart cp;
  cp.s1_label.assign(n1, -1);
  cp.s2_label.assign(n2, -1);
  cp.cell_label.assign(static_cast<std::size_t>(n1) * n2, -1);
  std::vector<int> root_to_comp(n1 + n2, -1);
  for (int a = 0; a < n1; ++a) {
    if (m1[a] <= 0.0) continue;
    const int r = uf.find(a);
    if (root_to_comp[r] < 0) {
      root_to_comp[r] = cp.components++;
      cp.component_prob.push_back(0.0);
    }
    cp.s1_label[a] = root_to_comp[r];
    cp.component_prob[root_to_comp[r]] += m1[a];
  }
  for (int b = 0; b < n2; ++b) {
    if (m2[b] <= 0.0) continue;
    const int r = uf.find(n1 + b);
    if (root_to_comp[r] < 0) {
      // a positive column marginal always shares a component with some row
      root_to_comp[r] = cp.components++;
      cp.component_prob.push_back(0.0);
    }
    cp.s2_label[b] = root_to_comp[r];
  }
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      if (src.at(a, b) > 0.0)
        cp.cell_label[static_cast<std::size_t>(a) * n2 + b] = cp.s1_label[a];
  cp.entropy_s0 = entropy_of(cp.component_prob);
  return cp;
}

VirtualChannel virtual_channel_of(const SourcePair& src) {
  std::vector<std::pair<int, int>> cells;
  std::vector<double> mass;
  for (int a = 0; a < src.s1_size(); ++a)
    for (int b = 0; b < src.s2_size(); ++b)
      if (src.at(a, b) > 0.0) {
        cells.emplace_back(a, b);
        mass.push_back(src.at(a, b));
      }
  if (cells.empty())
    throw std::invalid_argument("virtual_channel_of: empty support");
  const int n = static_cast<int>(cells.size());
  std::vector<double> probs(
      static_cast<std::size_t>(n) * src.s1_size() * src.s2_size(), 0.0);
  for (int k = 0; k < n; ++k) {
    const auto [a, b] = cells[k];
    probs[(static_cast<std::size_t>(k) * src.s1_size() + a) * src.s2_size() +
          b] = 1.0;
  }
  // restore exact normalization lost to accumulated float error
  double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double& m : mass) m /= total;
  return VirtualChannel{
      BroadcastChannel(n, src.s1_size(), src.s2_size(), std::move(probs)),
      Pmf(std::move(mass)), std::move(cells)};
}

double example_source_alpha_min() {
  static const double v =
      binary_entropy_inverse(0.5 * std::log2(3.0) - 2.0 / 3.0);
  return v;
}

double example_source_alpha_max() {
  static const double v = binary_entropy_inverse(std::log2(3.0) - 4.0 / 3.0);
  return v;
}

ExampleSource example_source(double alpha) {
  const double lo = example_source_alpha_min();
  const double hi = example_source_alpha_max();
  if (!(alpha >= lo && alpha < hi))
    throw std::invalid_argument("example_source: alpha outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) +
                                ")");
  const double target = std::log2(3.0) - 4.0 / 3.0;
  auto pair_entropy = [alpha](double beta) {
    return plog2p(alpha * (1.0 - beta)) + 2.0 * plog2p(alpha * beta) +
           plog2p(1.0 - alpha - alpha * beta);
  };
  const double beta = solve_monotone_root(
      [&](double b) { return pair_entropy(b) - target; }, 1e-12, 1.0 - alpha,
      1e-12);
  if (alpha * beta > 1.0 - alpha)
    throw std::runtime_error("example_source: conditional p(S-0|S~0=1) invalid");

  const double q = binary_entropy_inverse(2.0 / 3.0);
  // (S~0, S-0) joint cells
  const double j00 = alpha * (1.0 - beta);
  const double j01 = alpha * beta;
  const double j10 = alpha * beta;
  const double j11 = 1.0 - alpha - alpha * beta;
  const double m1[2] = {q, 1.0 - q};
  const double m2[2] = {q, 1.0 - q};
  const double core[2][2] = {{j00, j01}, {j10, j11}};

  std::vector<double> probs(16, 0.0);
  for (int t0 = 0; t0 < 2; ++t0)
    for (int t1 = 0; t1 < 2; ++t1)
      for (int b0 = 0; b0 < 2; ++b0)
        for (int b2 = 0; b2 < 2; ++b2) {
          const int s1 = 2 * t0 + t1, s2 = 2 * b0 + b2;
          probs[static_cast<std::size_t>(s1) * 4 + s2] =
              core[t0][b0] * m1[t1] * m2[b2];
        }
  return ExampleSource{SourcePair(4, 4, std::move(probs)), alpha, beta, q};
}

JointPmf joint_from(const Pmf& input, const BroadcastChannel& ch,
                    const CondPmf& aux) {
  if (input.size() != ch.x_size())
    throw std::invalid_argument("joint_from: input size != channel inputs");
  if (aux.from_size() != ch.x_size() || aux.to_dims().size() != 3)
    throw std::invalid_argument(
        "joint_from: aux must map the input alphabet to a rank-3 product");
  const int n0 = aux.to_dims()[0], n1 = aux.to_dims()[1], n2 = aux.to_dims()[2];
  const int nx = ch.x_size(), ny1 = ch.y1_size(), ny2 = ch.y2_size();
  std::vector<double> probs(static_cast<std::size_t>(n0) * n1 * n2 * nx * ny1 *
                                ny2,
                            0.0);
  std::size_t idx = 0;
  for (int v0 = 0; v0 < n0; ++v0)
    for (int v1 = 0; v1 < n1; ++v1)
      for (int v2 = 0; v2 < n2; ++v2) {
        const int v = (v0 * n1 + v1) * n2 + v2;
        for (int x = 0; x < nx; ++x) {
          const double base = aux.at(x, v) * input[x];
          for (int a = 0; a < ny1; ++a)
            for (int b = 0; b < ny2; ++b)
              probs[idx++] = base * ch.at(x, a, b);
        }
      }
  return JointPmf({n0, n1, n2, nx, ny1, ny2}, std::move(probs));
}

double input_output_mi(const BroadcastChannel& ch,
                       const std::vector<double>& px, int receiver) {
  const int nx = ch.x_size();
  const int ny = receiver == 1 ? ch.y1_size() : ch.y2_size();
  const auto cond = receiver == 1 ? ch.y1_given_x() : ch.y2_given_x();
  std::vector<double> py(ny, 0.0);
  double h_y_given_x = 0.0;
  for (int x = 0; x < nx; ++x) {
    double hx = 0.0;
    for (int y = 0; y < ny; ++y) {
      const double c = cond[static_cast<std::size_t>(x) * ny + y];
      py[y] += px[x] * c;
      hx += plog2p(c);
    }
    h_y_given_x += px[x] * hx;
  }
  const double v = entropy_of(py) - h_y_given_x;
  return v < 0.0 ? 0.0 : v;
}

MoreCapableVerdict is_more_capable(const BroadcastChannel& ch,
                                   const SearchConfig& cfg, double tol) {
  const int nx = ch.x_size();
  Objective gap = [&ch](const std::vector<double>& px) {
    return input_output_mi(ch, px, 1) - input_output_mi(ch, px, 2);
  };
  SearchResult best = optimize_simplex(gap, {nx}, cfg);
  // coarse grid pass on top of the vertex/restart phases
  for (const auto& px : simplex_grid(nx, std::max(2, cfg.grid_points))) {
    const double v = gap(px);
    ++best.evaluations;
    if (v > best.best_value) {
      best.best_value = v;
      best.witness = px;
    }
  }
  MoreCapableVerdict out;
  out.best_gap = best.best_value;
  out.witness_px = best.witness;
  out.evaluations = best.evaluations;
  out.restarts = cfg.restarts;
  if (best.best_value > tol)
    out.status = MoreCapableVerdict::Status::No;
  else if (best.best_value <= 0.0)
    out.status = MoreCapableVerdict::Status::Yes;
  else
    out.status = MoreCapableVerdict::Status::Inconclusive;
  return out;
}

}  // namespace bcbound
