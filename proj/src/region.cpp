#include "bcbound/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bcbound/search.hpp"

namespace bcbound {

Direction make_direction(std::vector<double> raw) {
  double sum = 0.0;
  for (double v : raw) {
    if (!(v >= 0.0)) throw std::invalid_argument("Direction: negative weight");
    sum += v;
  }
  if (sum <= 0.0) throw std::invalid_argument("Direction: zero vector");
  for (double& v : raw) v /= sum;
  return Direction{std::move(raw)};
}

namespace {

void push_unique(std::vector<Direction>& out, Direction d) {
  for (const auto& e : out) {
    double dist = 0.0;
    for (std::size_t i = 0; i < d.lambda.size(); ++i)
      dist += std::abs(e.lambda[i] - d.lambda[i]);
    if (dist < 1e-12) return;
  }
  out.push_back(std::move(d));
}

// The five constraint groups of the R^10 coordinates and their receiver
// sides: common {r1,r2}, R0+R1 {r3,r6}, R0+R2 {r4,r5}, and the four sum
// coordinates {r7..r10}.
const std::vector<std::vector<int>>& r10_groups() {
  static const std::vector<std::vector<int>> groups = {
      {0, 1}, {2, 5}, {3, 4}, {6, 7, 8, 9}};
  return groups;
}

}  // namespace

std::vector<Direction> sample_directions(int dim, int n, std::uint64_t seed) {
  if (n < 0 || dim < 1) throw std::invalid_argument("sample_directions: bad args");
  std::vector<Direction> out;
  if (dim <= 3) {
    for (int mask = 1; mask < (1 << dim); ++mask) {
      std::vector<double> l(dim, 0.0);
      for (int i = 0; i < dim; ++i)
        if (mask & (1 << i)) l[i] = 1.0;
      push_unique(out, make_direction(std::move(l)));
    }
  } else if (dim == 10) {
    for (int i = 0; i < 10; ++i) {
      std::vector<double> l(10, 0.0);
      l[i] = 1.0;
      push_unique(out, make_direction(std::move(l)));
    }
    // group-weighted patterns: per group pick nothing, one side, or the
    // whole group with equal weights
    const auto& groups = r10_groups();
    std::vector<std::vector<std::vector<int>>> options;
    for (const auto& g : groups) {
      std::vector<std::vector<int>> opt;
      opt.push_back({});  // skip
      for (int c : g) opt.push_back({c});
      opt.push_back(g);
      options.push_back(std::move(opt));
    }
    std::vector<std::size_t> pick(groups.size(), 0);
    for (;;) {
      std::vector<double> l(10, 0.0);
      bool any = false;
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& sel = options[gi][pick[gi]];
        for (int c : sel) l[c] += 1.0 / sel.size();
        any = any || !sel.empty();
      }
      if (any) push_unique(out, make_direction(std::move(l)));
      int gi = static_cast<int>(groups.size()) - 1;
      while (gi >= 0 && ++pick[gi] == options[gi].size()) pick[gi--] = 0;
      if (gi < 0) break;
    }
  } else {
    throw std::invalid_argument("sample_directions: unsupported dim");
  }
  Rng rng(derive_seed(seed, 0xd19));
  for (int k = 0; k < n; ++k)
    push_unique(out, make_direction(dirichlet_flat(rng, dim)));
  return out;
}

RegionApprox scale(const RegionApprox& r, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("scale: kappa <= 0");
  RegionApprox out = r;
  out.kappa = r.kappa * kappa;
  return out;
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::CertifiedHolds: return "CertifiedHolds";
    case VerdictStatus::EvidenceHolds: return "EvidenceHolds";
    case VerdictStatus::EvidenceViolated: return "EvidenceViolated";
    case VerdictStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict contains_point(const RegionApprox& r, const std::vector<double>& pt,
                       double tol) {
  if (static_cast<int>(pt.size()) != r.dim)
    throw std::invalid_argument("contains_point: dim mismatch");
  Verdict v;
  // certified path: some stored witness slice contains pt / kappa
  std::vector<double> unscaled(pt);
  for (double& x : unscaled) x /= r.kappa;
  for (const auto& e : r.entries) {
    if (e.witness_region.empty()) continue;
    const Polytope poly(r.dim, e.witness_region);
    if (poly.contains(unscaled, tol)) {
      v.status = VerdictStatus::CertifiedHolds;
      v.margin = poly.min_slack(unscaled);
      v.witness = e.witness;
      return v;
    }
  }
  double worst = -1e300;
  const RegionEntry* worst_entry = nullptr;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < r.dim; ++k) dot += r.entries[i].direction.lambda[k] * pt[k];
    const double gap = dot - r.scaled_h(i);
    if (gap > worst) {
      worst = gap;
      worst_entry = &r.entries[i];
    }
  }
  if (worst_entry && worst > tol) {
    v.status = VerdictStatus::EvidenceViolated;
    v.margin = worst;
    v.direction = worst_entry->direction;
    v.trace["h"] = worst_entry->h;
    v.trace["kappa"] = r.kappa;
    return v;
  }
  v.status = VerdictStatus::Inconclusive;
  v.margin = worst;
  return v;
}

Verdict region_subset(const RegionApprox& a, const RegionApprox& b,
                      double kappa, double tol) {
  if (a.dim != b.dim) throw std::invalid_argument("region_subset: dim mismatch");
  if (a.entries.size() != b.entries.size())
    throw std::invalid_argument("region_subset: direction banks differ");
  Verdict v;
  double worst = -1e300;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    double dist = 0.0;
    for (int k = 0; k < a.dim; ++k)
      dist += std::abs(a.entries[i].direction.lambda[k] -
                       b.entries[i].direction.lambda[k]);
    if (dist > 1e-9)
      throw std::invalid_argument("region_subset: direction banks differ");
    const double gap = a.scaled_h(i) - kappa * b.scaled_h(i);
    if (gap > worst) {
      worst = gap;
      worst_i = i;
    }
  }
  v.margin = worst;
  v.trace["directions"] = a.entries.size();
  if (worst <= tol) {
    v.status = VerdictStatus::EvidenceHolds;
    return v;
  }
  // re-verify the violation against A's stored witness region: the witness
  // slice is achievable, so its own support certifies the left side
  const auto& ea = a.entries[worst_i];
  double h_cert = ea.h;
  if (!ea.witness_region.empty()) {
    const Polytope poly(a.dim, ea.witness_region);
    std::vector<double> lam = ea.direction.lambda;
    h_cert = poly.support(lam);
  }
  const double cert_gap = a.kappa * h_cert - kappa * b.scaled_h(worst_i);
  if (cert_gap > tol) {
    v.status = VerdictStatus::EvidenceViolated;
    v.margin = cert_gap;
    v.direction = ea.direction;
    v.witness = ea.witness;
  } else {
    v.status = VerdictStatus::Inconclusive;
  }
  return v;
}

double round_sig(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::strtod(buf, nullptr);
}

namespace {

Json ineqs_to_json(const std::vector<LinearInequality>& v) {
  Json out = Json::array();
  for (const auto& iq : v) {
    Json normal = Json::array();
    for (double x : iq.normal) normal.push_back(round_sig(x));
    out.push_back(Json{{"normal", normal}, {"bound", round_sig(iq.bound)}});
  }
  return out;
}

std::vector<LinearInequality> ineqs_from_json(const Json& j) {
  std::vector<LinearInequality> out;
  for (const auto& e : j) {
    LinearInequality iq;
    for (const auto& x : e.at("normal")) iq.normal.push_back(x.get<double>());
    iq.bound = e.at("bound").get<double>();
    out.push_back(std::move(iq));
  }
  return out;
}

}  // namespace

Json region_to_json(const RegionApprox& r) {
  Json j;
  j["dim"] = r.dim;
  j["kappa"] = round_sig(r.kappa);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json lam = Json::array();
    for (double v : e.direction.lambda) lam.push_back(round_sig(v));
    Json ent;
    ent["lambda"] = lam;
    ent["h"] = round_sig(e.h);
    ent["witness"] = e.witness;
    ent["witness_region"] = ineqs_to_json(e.witness_region);
    entries.push_back(std::move(ent));
  }
  j["entries"] = std::move(entries);
  if (!r.meta.is_null()) j["meta"] = r.meta;
  return j;
}

RegionApprox region_from_json(const Json& j) {
  RegionApprox r;
  r.dim = j.at("dim").get<int>();
  r.kappa = j.at("kappa").get<double>();
  for (const auto& ent : j.at("entries")) {
    RegionEntry e;
    std::vector<double> lam;
    for (const auto& v : ent.at("lambda")) lam.push_back(v.get<double>());
    e.direction = Direction{std::move(lam)};
    e.h = ent.at("h").get<double>();
    if (ent.contains("witness")) e.witness = ent.at("witness");
    if (ent.contains("witness_region"))
      e.witness_region = ineqs_from_json(ent.at("witness_region"));
    r.entries.push_back(std::move(e));
  }
  if (j.contains("meta")) r.meta = j.at("meta");
  return r;
}

std::string region_to_csv(const RegionApprox& r) {
  std::string out;
  for (int i = 1; i <= r.dim; ++i) {
    out += "lambda_" + std::to_string(i) + ",";
  }
  out += "h\n";
  char buf[40];
  for (const auto& e : r.entries) {
    for (double v : e.direction.lambda) {
      std::snprintf(buf, sizeof buf, "%.10g,", v);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%.10g\n", r.kappa * e.h);
    out += buf;
  }
  return out;
}

}  // namespace bcbound
