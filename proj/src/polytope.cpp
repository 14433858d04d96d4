#include "bcbound/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bcbound {

namespace {

constexpr double kFeasTol = 1e-9;

// Solve A x = b for n <= 3 via Gaussian elimination with partial pivoting.
// Returns false when singular.
bool solve_small(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

Polytope::Polytope(int dim, std::vector<LinearInequality> inequalities)
    : dim_(dim), ineqs_(std::move(inequalities)) {
  if (dim_ < 1) throw std::invalid_argument("Polytope: dim < 1");
  for (const auto& iq : ineqs_) {
    if (static_cast<int>(iq.normal.size()) != dim_)
      throw std::invalid_argument("Polytope: normal size mismatch");
    if (!std::isfinite(iq.bound))
      throw std::invalid_argument("Polytope: non-finite bound");
  }
}

bool Polytope::contains(const std::vector<double>& point, double tol) const {
  return min_slack(point) >= -tol;
}

double Polytope::min_slack(const std::vector<double>& point) const {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim_; ++i) worst = std::min(worst, point[i]);
  for (const auto& iq : ineqs_) {
    double dot = 0.0;
    for (int i = 0; i < dim_; ++i) dot += iq.normal[i] * point[i];
    worst = std::min(worst, iq.bound - dot);
  }
  return worst;
}

std::vector<std::vector<double>> Polytope::vertices() const {
  if (dim_ > 3)
    throw std::invalid_argument("Polytope::vertices: dim > 3 unsupported");
  // boundedness: every coordinate must be capped by some inequality with a
  // positive coefficient there and no negative coefficients elsewhere
  for (int i = 0; i < dim_; ++i) {
    bool capped = false;
    for (const auto& iq : ineqs_) {
      if (iq.normal[i] <= 0.0) continue;
      bool clean = true;
      for (int j = 0; j < dim_; ++j)
        if (iq.normal[j] < 0.0) clean = false;
      if (clean) {
        capped = true;
        break;
      }
    }
    if (!capped)
      throw std::invalid_argument("Polytope::vertices: unbounded polytope");
  }

  // constraint list: inequalities plus the axis planes r_i >= 0
  std::vector<LinearInequality> all = ineqs_;
  for (int i = 0; i < dim_; ++i) {
    LinearInequality axis;
    axis.normal.assign(dim_, 0.0);
    axis.normal[i] = -1.0;
    axis.bound = 0.0;
    all.push_back(std::move(axis));
  }

  const int m = static_cast<int>(all.size());
  std::vector<std::vector<double>> verts;
  std::vector<int> pick(dim_);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == dim_) {
      std::vector<std::vector<double>> a(dim_);
      std::vector<double> b(dim_);
      for (int k = 0; k < dim_; ++k) {
        a[k] = all[pick[k]].normal;
        b[k] = all[pick[k]].bound;
      }
      std::vector<double> x;
      if (!solve_small(std::move(a), std::move(b), x)) return;
      double slack = std::numeric_limits<double>::infinity();
      for (int i = 0; i < dim_; ++i) slack = std::min(slack, x[i]);
      for (const auto& iq : all) {
        double dot = 0.0;
        for (int i = 0; i < dim_; ++i) dot += iq.normal[i] * x[i];
        slack = std::min(slack, iq.bound - dot);
        if (slack < -kFeasTol) return;
      }
      for (const auto& v : verts) {
        double dist = 0.0;
        for (int i = 0; i < dim_; ++i) dist += std::abs(v[i] - x[i]);
        if (dist <= kFeasTol) return;
      }
      verts.push_back(std::move(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return verts;
}

double Polytope::support(const std::vector<double>& d) const {
  return support_from_vertices(vertices(), d);
}

double support_from_vertices(const std::vector<std::vector<double>>& vertices,
                             const std::vector<double>& d) {
  double best = 0.0;  // the origin is always feasible for our regions
  for (const auto& v : vertices) {
    double dot = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) dot += d[i] * v[i];
    best = std::max(best, dot);
  }
  return best;
}

}  // namespace bcbound
