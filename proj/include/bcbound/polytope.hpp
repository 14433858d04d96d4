// Small-dimension rate polytopes {r >= 0, a_i . r <= b_i}: exhaustive vertex
// enumeration (dim <= 3) and exact support values. Normals in this project
// are 0/1 rate-sum patterns, so boundedness means every coordinate appears
// in some inequality.

#ifndef BCBOUND_POLYTOPE_HPP
#define BCBOUND_POLYTOPE_HPP

#include <vector>

namespace bcbound {

struct LinearInequality {
  std::vector<double> normal;
  double bound;
};

class Polytope {
 public:
  Polytope(int dim, std::vector<LinearInequality> inequalities);

  int dim() const { return dim_; }
  const std::vector<LinearInequality>& inequalities() const { return ineqs_; }

  bool contains(const std::vector<double>& point, double tol) const;
  // Worst slack of the point over all inequalities (including r >= 0);
  // nonnegative inside.
  double min_slack(const std::vector<double>& point) const;

  // All vertices of the region, deduplicated within 1e-9. Requires dim <= 3.
  // Raises if the region is unbounded.
  std::vector<std::vector<double>> vertices() const;

  // max over the region of d . r (via vertices; d need not be normalized).
  double support(const std::vector<double>& d) const;

 private:
  int dim_;
  std::vector<LinearInequality> ineqs_;
};

// Support of a polytope from a precomputed vertex list.
double support_from_vertices(const std::vector<std::vector<double>>& vertices,
                             const std::vector<double>& d);

}  // namespace bcbound

#endif  // BCBOUND_POLYTOPE_HPP
