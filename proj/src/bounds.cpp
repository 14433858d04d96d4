#include "bcbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcbound {

namespace {

double nonneg(double v) { return v > 0.0 ? v : 0.0; }

}  // namespace

ChannelTerms compute_channel_terms(const std::vector<double>& px,
                                   const BroadcastChannel& ch,
                                   const std::vector<double>& aux_rows, int n0,
                                   int n1, int n2) {
  const int nx = ch.x_size(), ny1 = ch.y1_size(), ny2 = ch.y2_size();
  const int n = n0 * n1 * n2;
  const auto py1x = ch.y1_given_x();
  const auto py2x = ch.y2_given_x();

  // joint over (v0, v1, v2, x), grouped marginals
  std::vector<double> p_v0x(static_cast<std::size_t>(n0) * nx, 0.0);
  std::vector<double> p_v01x(static_cast<std::size_t>(n0) * n1 * nx, 0.0);
  std::vector<double> p_v02x(static_cast<std::size_t>(n0) * n2 * nx, 0.0);
  std::vector<double> p_v012(static_cast<std::size_t>(n0) * n1 * n2, 0.0);
  for (int x = 0; x < nx; ++x) {
    const double w = px[x];
    if (w == 0.0) continue;
    const double* row = &aux_rows[static_cast<std::size_t>(x) * n];
    for (int v0 = 0; v0 < n0; ++v0)
      for (int v1 = 0; v1 < n1; ++v1)
        for (int v2 = 0; v2 < n2; ++v2) {
          const double p = w * row[(v0 * n1 + v1) * n2 + v2];
          if (p == 0.0) continue;
          p_v0x[static_cast<std::size_t>(v0) * nx + x] += p;
          p_v01x[(static_cast<std::size_t>(v0) * n1 + v1) * nx + x] += p;
          p_v02x[(static_cast<std::size_t>(v0) * n2 + v2) * nx + x] += p;
          p_v012[(static_cast<std::size_t>(v0) * n1 + v1) * n2 + v2] += p;
        }
  }

  auto with_output = [nx](const std::vector<double>& pvx, int rows,
                          const std::vector<double>& pyx, int ny) {
    std::vector<double> out(static_cast<std::size_t>(rows) * ny, 0.0);
    for (int r = 0; r < rows; ++r)
      for (int x = 0; x < nx; ++x) {
        const double p = pvx[static_cast<std::size_t>(r) * nx + x];
        if (p == 0.0) continue;
        for (int y = 0; y < ny; ++y)
          out[static_cast<std::size_t>(r) * ny + y] +=
              p * pyx[static_cast<std::size_t>(x) * ny + y];
      }
    return out;
  };
  auto sum_out_x = [nx](const std::vector<double>& pvx, int rows) {
    std::vector<double> out(rows, 0.0);
    for (int r = 0; r < rows; ++r)
      for (int x = 0; x < nx; ++x)
        out[r] += pvx[static_cast<std::size_t>(r) * nx + x];
    return out;
  };
  auto joint_xy = [nx](const std::vector<double>& pvx, int rows,
                       const std::vector<double>& pyx, int ny) {
    std::vector<double> out(static_cast<std::size_t>(rows) * nx * ny, 0.0);
    for (int r = 0; r < rows; ++r)
      for (int x = 0; x < nx; ++x) {
        const double p = pvx[static_cast<std::size_t>(r) * nx + x];
        if (p == 0.0) continue;
        for (int y = 0; y < ny; ++y)
          out[(static_cast<std::size_t>(r) * nx + x) * ny + y] +=
              p * pyx[static_cast<std::size_t>(x) * ny + y];
      }
    return out;
  };

  std::vector<double> py1(ny1, 0.0), py2(ny2, 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny1; ++y)
      py1[y] += px[x] * py1x[static_cast<std::size_t>(x) * ny1 + y];
    for (int y = 0; y < ny2; ++y)
      py2[y] += px[x] * py2x[static_cast<std::size_t>(x) * ny2 + y];
  }

  const double H_v0 = entropy_of(sum_out_x(p_v0x, n0));
  const double H_v01 = entropy_of(sum_out_x(p_v01x, n0 * n1));
  const double H_v02 = entropy_of(sum_out_x(p_v02x, n0 * n2));
  const double H_y1 = entropy_of(py1);
  const double H_y2 = entropy_of(py2);
  const double H_v0y1 = entropy_of(with_output(p_v0x, n0, py1x, ny1));
  const double H_v0y2 = entropy_of(with_output(p_v0x, n0, py2x, ny2));
  const double H_v01y1 = entropy_of(with_output(p_v01x, n0 * n1, py1x, ny1));
  const double H_v01y2 = entropy_of(with_output(p_v01x, n0 * n1, py2x, ny2));
  const double H_v02y1 = entropy_of(with_output(p_v02x, n0 * n2, py1x, ny1));
  const double H_v02y2 = entropy_of(with_output(p_v02x, n0 * n2, py2x, ny2));
  const double H_v01x = entropy_of(p_v01x);
  const double H_v02x = entropy_of(p_v02x);
  const double H_v01xy2 = entropy_of(joint_xy(p_v01x, n0 * n1, py2x, ny2));
  const double H_v02xy1 = entropy_of(joint_xy(p_v02x, n0 * n2, py1x, ny1));
  const double H_v012 = entropy_of(p_v012);

  ChannelTerms t;
  t.a1 = nonneg(H_v0 + H_y1 - H_v0y1);
  t.a2 = nonneg(H_v0 + H_y2 - H_v0y2);
  t.b1 = nonneg((H_v0y1 - H_v0) - (H_v01y1 - H_v01));
  t.b2 = nonneg((H_v0y2 - H_v0) - (H_v02y2 - H_v02));
  t.c1 = nonneg((H_v02y1 - H_v02) - (H_v02xy1 - H_v02x));
  t.c2 = nonneg((H_v01y2 - H_v01) - (H_v01xy2 - H_v01x));
  t.i12 = nonneg(H_v01 + H_v02 - H_v0 - H_v012);
  return t;
}

ChannelTerms channel_terms_reference(const Pmf& input,
                                     const BroadcastChannel& ch,
                                     const CondPmf& aux) {
  const JointPmf j = joint_from(input, ch, aux);
  // variables: 0=V0, 1=V1, 2=V2, 3=X, 4=Y1, 5=Y2
  ChannelTerms t;
  t.a1 = mutual_information(j, {0}, {4});
  t.a2 = mutual_information(j, {0}, {5});
  t.b1 = conditional_mutual_information(j, {1}, {4}, {0});
  t.b2 = conditional_mutual_information(j, {2}, {5}, {0});
  t.c1 = conditional_mutual_information(j, {3}, {4}, {0, 2});
  t.c2 = conditional_mutual_information(j, {3}, {5}, {0, 1});
  t.i12 = conditional_mutual_information(j, {1}, {2}, {0});
  return t;
}

SourceTerms compute_source_terms(const SourcePair& src,
                                 const std::vector<double>& aux_rows, int nu) {
  const int n1 = src.s1_size(), n2 = src.s2_size();
  std::vector<double> p_u(nu, 0.0);
  std::vector<double> p_us1(static_cast<std::size_t>(nu) * n1, 0.0);
  std::vector<double> p_us2(static_cast<std::size_t>(nu) * n2, 0.0);
  std::vector<double> p_us12(static_cast<std::size_t>(nu) * n1 * n2, 0.0);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const double w = src.at(a, b);
      if (w == 0.0) continue;
      const double* row =
          &aux_rows[(static_cast<std::size_t>(a) * n2 + b) * nu];
      for (int u = 0; u < nu; ++u) {
        const double p = w * row[u];
        if (p == 0.0) continue;
        p_u[u] += p;
        p_us1[static_cast<std::size_t>(u) * n1 + a] += p;
        p_us2[static_cast<std::size_t>(u) * n2 + b] += p;
        p_us12[(static_cast<std::size_t>(u) * n1 + a) * n2 + b] += p;
      }
    }
  SourceTerms t;
  t.h1 = src.h1();
  t.h2 = src.h2();
  const double H_u = entropy_of(p_u);
  const double H_us1 = entropy_of(p_us1);
  const double H_us2 = entropy_of(p_us2);
  const double H_us12 = entropy_of(p_us12);
  t.h1u = nonneg(H_us1 - H_u);
  t.h2u = nonneg(H_us2 - H_u);
  t.h12u = nonneg(H_us12 - H_u);
  t.i1 = nonneg(t.h1 - t.h1u);
  t.i2 = nonneg(t.h2 - t.h2u);
  return t;
}

SourceTerms compute_detcap_terms(const std::vector<double>& px,
                                 const BroadcastChannel& ch,
                                 const std::vector<double>& aux_rows, int nu) {
  const int nx = ch.x_size(), ny1 = ch.y1_size(), ny2 = ch.y2_size();
  std::vector<double> p_u(nu, 0.0);
  std::vector<double> p_uy1(static_cast<std::size_t>(nu) * ny1, 0.0);
  std::vector<double> p_uy2(static_cast<std::size_t>(nu) * ny2, 0.0);
  std::vector<double> p_uy12(static_cast<std::size_t>(nu) * ny1 * ny2, 0.0);
  std::vector<double> py1(ny1, 0.0), py2(ny2, 0.0), py12(ny1 * ny2, 0.0);
  for (int x = 0; x < nx; ++x) {
    const double w = px[x];
    if (w == 0.0) continue;
    for (int u = 0; u < nu; ++u) {
      const double p = w * aux_rows[static_cast<std::size_t>(x) * nu + u];
      if (p == 0.0) continue;
      p_u[u] += p;
      for (int a = 0; a < ny1; ++a)
        for (int b = 0; b < ny2; ++b) {
          const double c = ch.at(x, a, b);
          if (c == 0.0) continue;
          p_uy1[static_cast<std::size_t>(u) * ny1 + a] += p * c;
          p_uy2[static_cast<std::size_t>(u) * ny2 + b] += p * c;
          p_uy12[(static_cast<std::size_t>(u) * ny1 + a) * ny2 + b] += p * c;
        }
    }
    for (int a = 0; a < ny1; ++a)
      for (int b = 0; b < ny2; ++b) {
        const double c = ch.at(x, a, b);
        py1[a] += w * c;
        py2[b] += w * c;
        py12[static_cast<std::size_t>(a) * ny2 + b] += w * c;
      }
  }
  SourceTerms t;
  t.h1 = entropy_of(py1);
  t.h2 = entropy_of(py2);
  const double H_u = entropy_of(p_u);
  t.h1u = nonneg(entropy_of(p_uy1) - H_u);
  t.h2u = nonneg(entropy_of(p_uy2) - H_u);
  t.h12u = nonneg(entropy_of(p_uy12) - H_u);
  t.i1 = nonneg(t.h1 - t.h1u);
  t.i2 = nonneg(t.h2 - t.h2u);
  return t;
}

CdTerms compute_cd_terms(const std::vector<double>& px,
                         const BroadcastChannel& ch,
                         const std::vector<double>& aux_rows, int nv) {
  const int nx = ch.x_size(), ny1 = ch.y1_size(), ny2 = ch.y2_size();
  const auto py1x = ch.y1_given_x();
  const auto py2x = ch.y2_given_x();
  std::vector<double> p_v(nv, 0.0);
  std::vector<double> p_vy1(static_cast<std::size_t>(nv) * ny1, 0.0);
  std::vector<double> p_vy2(static_cast<std::size_t>(nv) * ny2, 0.0);
  std::vector<double> py1(ny1, 0.0), py2(ny2, 0.0);
  double h_y2_given_x = 0.0;
  for (int x = 0; x < nx; ++x) {
    const double w = px[x];
    double hx = 0.0;
    for (int b = 0; b < ny2; ++b)
      hx += plog2p(py2x[static_cast<std::size_t>(x) * ny2 + b]);
    h_y2_given_x += w * hx;
    for (int y = 0; y < ny1; ++y)
      py1[y] += w * py1x[static_cast<std::size_t>(x) * ny1 + y];
    for (int y = 0; y < ny2; ++y)
      py2[y] += w * py2x[static_cast<std::size_t>(x) * ny2 + y];
    if (w == 0.0) continue;
    for (int v = 0; v < nv; ++v) {
      const double p = w * aux_rows[static_cast<std::size_t>(x) * nv + v];
      if (p == 0.0) continue;
      p_v[v] += p;
      for (int y = 0; y < ny1; ++y)
        p_vy1[static_cast<std::size_t>(v) * ny1 + y] +=
            p * py1x[static_cast<std::size_t>(x) * ny1 + y];
      for (int y = 0; y < ny2; ++y)
        p_vy2[static_cast<std::size_t>(v) * ny2 + y] +=
            p * py2x[static_cast<std::size_t>(x) * ny2 + y];
    }
  }
  CdTerms t;
  const double H_v = entropy_of(p_v);
  t.iv_y1 = nonneg(H_v + entropy_of(py1) - entropy_of(p_vy1));
  t.ix_y2_v = nonneg((entropy_of(p_vy2) - H_v) - h_y2_given_x);
  t.ix_y2 = nonneg(entropy_of(py2) - h_y2_given_x);
  return t;
}

LossyTerms compute_lossy_terms(const Pmf& ps, const BroadcastChannel& virt,
                               const std::vector<double>& aux_rows, int n0,
                               int n1, int n2) {
  const int ns = virt.x_size(), nh1 = virt.y1_size(), nh2 = virt.y2_size();
  if (ps.size() != ns)
    throw std::invalid_argument("compute_lossy_terms: p_S size mismatch");
  const int n = n0 * n1 * n2;
  std::vector<double> probs(static_cast<std::size_t>(n) * ns * nh1 * nh2, 0.0);
  std::size_t idx = 0;
  for (int u = 0; u < n; ++u)
    for (int s = 0; s < ns; ++s) {
      const double base = aux_rows[static_cast<std::size_t>(s) * n + u] * ps[s];
      for (int a = 0; a < nh1; ++a)
        for (int b = 0; b < nh2; ++b) probs[idx++] = base * virt.at(s, a, b);
    }
  JointPmf j({n0, n1, n2, ns, nh1, nh2}, std::move(probs));
  LossyTerms t;
  t.a1 = mutual_information(j, {0}, {4});
  t.a2 = mutual_information(j, {0}, {5});
  t.b1 = conditional_mutual_information(j, {1}, {4}, {0});
  t.b2 = conditional_mutual_information(j, {2}, {5}, {0});
  t.c1 = conditional_mutual_information(j, {3}, {4}, {0, 2});
  t.c2 = conditional_mutual_information(j, {3}, {5}, {0, 1});
  return t;
}

namespace {

std::vector<double> nvec(std::initializer_list<double> v) { return v; }

}  // namespace

Polytope cin_polytope(const ChannelTerms& t, bool* clamped) {
  const double m = std::min(t.a1, t.a2);
  double sum = m + t.b1 + t.b2 - t.i12;
  if (clamped) *clamped = sum < 0.0;
  sum = nonneg(sum);
  return Polytope(3, {{nvec({1, 0, 0}), m},
                      {nvec({1, 1, 0}), m + t.b1},
                      {nvec({1, 0, 1}), m + t.b2},
                      {nvec({1, 1, 1}), sum}});
}

Polytope cout_polytope(const ChannelTerms& t) {
  const double m = std::min(t.a1, t.a2);
  return Polytope(3, {{nvec({1, 0, 0}), m},
                      {nvec({1, 1, 0}), m + t.b1},
                      {nvec({1, 0, 1}), m + t.b2},
                      {nvec({1, 1, 1}), m + t.b1 + t.c2},
                      {nvec({1, 1, 1}), m + t.b2 + t.c1}});
}

Polytope source_polytope(const SourceTerms& t) {
  const double m = std::min(t.i1, t.i2);
  return Polytope(3, {{nvec({1, 0, 0}), m},
                      {nvec({1, 1, 0}), m + t.h1u},
                      {nvec({1, 0, 1}), m + t.h2u},
                      {nvec({1, 1, 1}), m + t.h12u}});
}

Polytope cd_polytope(const CdTerms& t) {
  return Polytope(2, {{nvec({1, 0}), t.iv_y1},
                      {nvec({0, 1}), t.ix_y2_v},
                      {nvec({1, 1}), t.ix_y2}});
}

std::array<double, 10> r10_channel_corner(const ChannelTerms& t) {
  return {t.a1,
          t.a2,
          t.a1 + t.b1,
          t.a2 + t.b2,
          t.a1 + t.b2,
          t.a2 + t.b1,
          t.a1 + t.b1 + t.c2,
          t.a2 + t.b2 + t.c1,
          t.a1 + t.b2 + t.c1,
          t.a2 + t.b1 + t.c2};
}

std::array<double, 10> r10_source_corner(const SourceTerms& t) {
  return {t.i1,
          t.i2,
          t.h1,
          t.h2,
          t.i1 + t.h2u,
          t.i2 + t.h1u,
          t.i1 + t.h12u,
          t.i2 + t.h12u,
          t.i1 + t.h12u,
          t.i2 + t.h12u};
}

std::array<double, 10> r10_lossy_corner(const LossyTerms& t) {
  return {t.a1,
          t.a2,
          t.a1 + t.b1,
          t.a2 + t.b2,
          t.a1 + t.b2,
          t.a2 + t.b1,
          t.a1 + t.b1 + t.c2,
          t.a2 + t.b2 + t.c1,
          t.a1 + t.b2 + t.c1,
          t.a2 + t.b1 + t.c2};
}

std::array<double, 10> r10_point_profile(double r0, double r1, double r2) {
  const double s = r0 + r1 + r2;
  return {r0, r0, r0 + r1, r0 + r2, r0 + r2, r0 + r1, s, s, s, s};
}

double pattern_sum(const JointPmf& joint, int aux_count, const Pattern& pat) {
  if (pat.subsets.size() != pat.receivers.size() || pat.subsets.empty())
    throw std::invalid_argument("pattern_sum: malformed pattern");
  if (joint.rank() != aux_count + 3)
    throw std::invalid_argument("pattern_sum: joint rank mismatch");
  std::vector<int> prev;  // accumulated union, ascending
  double total = 0.0;
  for (std::size_t i = 0; i < pat.subsets.size(); ++i) {
    const int recv = pat.receivers[i];
    if (recv != 1 && recv != 2)
      throw std::invalid_argument("pattern_sum: receiver must be 1 or 2");
    std::vector<int> fresh;
    for (int v : pat.subsets[i]) {
      if (v < 0 || v >= aux_count)
        throw std::invalid_argument("pattern_sum: subset index out of range");
      if (std::find(prev.begin(), prev.end(), v) == prev.end() &&
          std::find(fresh.begin(), fresh.end(), v) == fresh.end())
        fresh.push_back(v);
    }
    const std::vector<int> out{aux_count + recv};
    if (!fresh.empty())
      total += conditional_mutual_information(joint, fresh, out, prev);
    for (int v : fresh) prev.push_back(v);
  }
  return total;
}

std::pair<double, double> lemma1_pair(const JointPmf& joint_source,
                                      const JointPmf& joint_channel,
                                      int aux_count, const Pattern& pat) {
  return {pattern_sum(joint_source, aux_count, pat),
          pattern_sum(joint_channel, aux_count, pat)};
}

const std::vector<Pattern>& r10_patterns() {
  static const std::vector<Pattern> pats = {
      {{{0}}, {1}},
      {{{0}}, {2}},
      {{{0, 1}}, {1}},
      {{{0, 2}}, {2}},
      {{{0}, {2}}, {1, 2}},
      {{{0}, {1}}, {2, 1}},
      {{{0, 1}, {2}}, {1, 2}},
      {{{0, 2}, {1}}, {2, 1}},
      {{{0}, {2}, {1}}, {1, 2, 1}},
      {{{0}, {1}, {2}}, {2, 1, 2}},
  };
  return pats;
}

ResolvedCards resolve_cards(const AuxCards& cards, int x_size, int s1_size,
                            int s2_size, bool full) {
  ResolvedCards r;
  r.v0 = cards.v0 > 0 ? cards.v0 : (full ? x_size + 5 : x_size + 1);
  r.v1 = cards.v1 > 0 ? cards.v1 : x_size;
  r.v2 = cards.v2 > 0 ? cards.v2 : x_size;
  const int s12 = s1_size * s2_size;
  r.u = cards.u > 0 ? cards.u : (full ? s12 + 2 : s12);
  return r;
}

}  // namespace bcbound
