#include "dpi/interpbook.hpp"

#include <algorithm>
#include <sstream>

namespace dpi {

using nlohmann::json;

json InterpolationProfile::to_json() const {
  return {{"dim_U", dim_u}, {"n", n}, {"k", k}, {"q", q}, {"r", r},
          {"plane_dim", plane_dim ? json(*plane_dim) : json("none")}};
}

InterpolationProfile profile(int dim_u, int n, int k) {
  if (k < 0 || n <= k || dim_u < 0)
    throw BadDimensions("profile: need n > k >= 0 and dim_U >= 0, got n=" + std::to_string(n) +
                        " k=" + std::to_string(k) + " dim_U=" + std::to_string(dim_u));
  const int c = n - k;
  InterpolationProfile p{dim_u, n, k, dim_u / c, dim_u % c, std::nullopt};
  if (p.r > 0) p.plane_dim = c - p.r;
  return p;
}

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  auto add = [&](std::string label, int d, int blown_up, int aut) {
    const int dim = (d + 1) * (d + 1) - 1 + 2 * blown_up - aut;
    rows.push_back({std::move(label), d, blown_up, aut, profile(dim, d, 2)});
  };
  for (int d = 3; d <= 7; ++d) add(std::to_string(d), d, 9 - d, 8);
  add("8, type 0", 8, 0, 6);
  add("8, type 1", 8, 1, 8);
  add("9", 9, 0, 8);
  return rows;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    out << std::left;
    out.width(11);
    out << a;
    out.width(11);
    out << b;
    out.width(8);
    out << c << d << '\n';
  };
  line("degree", "dimension", "points", "plane");
  for (const auto& r : rows)
    line(r.label, std::to_string(r.profile.dim_u), std::to_string(r.profile.q),
         r.profile.plane_dim ? std::to_string(*r.profile.plane_dim) : "none");
  return out.str();
}

json table1_json(const std::vector<Table1Row>& rows) {
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"degree", r.label},
                 {"dimension", r.profile.dim_u},
                 {"points", r.profile.q},
                 {"plane_dim", r.profile.plane_dim ? json(*r.profile.plane_dim) : json("none")},
                 {"automorphisms", r.automorphisms},
                 {"blown_up", r.blown_up}});
  return a;
}

bool is_admissible(const AdmissibleSeq& lambda, int n, int k, int dim_u) {
  long sum = 0;
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0 || lambda[i] > n - k) return false;
    if (i > 0 && lambda[i] > lambda[i - 1]) return false;
    sum += lambda[i];
  }
  return sum <= dim_u;
}

AdmissibleSeq interpolation_sequence(const InterpolationProfile& p) {
  AdmissibleSeq s(static_cast<size_t>(p.q), p.n - p.k);
  if (p.r > 0) s.push_back(p.r);
  return s;
}

PipelineReport ci_interpolation(int k, int d, int n, uint64_t seed, const Field& f) {
  if (d < 1 || n < 1) throw std::invalid_argument("ci_interpolation: need d, n >= 1");
  const int forms = static_cast<int>(binomial(d + n, n));
  if (k < 1 || k >= forms) throw std::invalid_argument("ci_interpolation: need 1 <= k < C(d+n, n)");
  const size_t count = static_cast<size_t>(forms - k);
  PipelineReport rep("ci_interpolation", seed, f);
  Rng rng(sub_seed(seed, 0));
  std::vector<BaseCondition> conds;
  std::vector<ProjPoint> pts;
  while (pts.size() < count) {
    const ProjPoint p = random_point(n, f, rng);
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
    pts.push_back(p);
    conds.push_back({p, 1});
  }
  const LinearSystem sys = build_system(n, d, conds, f);
  rep.stage("system_dim", static_cast<int>(sys.dim()) == k,
            {{"dim", sys.dim()}, {"expected", k}, {"points", count}, {"degree", d}, {"ambient", n}});
  bool vanish = true;
  for (const auto& g : sys.basis())
    for (const auto& p : pts) vanish = vanish && g.evaluate(p.coords()).is_zero();
  rep.stage("vanishing", vanish);
  const int ci_dim = k * (forms - k);
  rep.stage("ci_dimension", true, {{"value", ci_dim}, {"formula", "k * (C(d+n, n) - k)"}});
  // cubic surfaces and quartic del Pezzo surfaces are complete intersections
  int surface_degree = 0;
  if (n - k == 2) {
    surface_degree = 1;
    for (int i = 0; i < k; ++i) surface_degree *= d;
  }
  if (surface_degree == n && (surface_degree == 3 || surface_degree == 4)) {
    const auto rows = table1();
    const auto& row = rows[static_cast<size_t>(surface_degree - 3)];
    rep.stage("table1_row", row.profile.dim_u == ci_dim && row.profile.q == static_cast<int>(count),
              {{"degree", surface_degree}, {"dimension", row.profile.dim_u}, {"points", row.profile.q}});
  }
  return rep;
}

int phi_dimension_audit() {
  const int triad = 3 * 2;
  const int base_points = 10;
  const int phi = triad + 2 * base_points;
  const int hilb = 2 * 13;
  if (phi != hilb) throw std::logic_error("phi_dimension_audit: counts disagree");
  return phi;
}

}  // namespace dpi
