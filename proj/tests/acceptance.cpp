// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dpi/interpbook.hpp"
#include "dpi/pipelines.hpp"

using namespace dpi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure only; later ones rarely add information.
void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

bool stage_ok(const PipelineReport& r, const std::string& name) {
  const Stage* s = r.find(name);
  return s != nullptr && s->pass;
}

std::string first_failure(const PipelineReport& r) {
  for (const auto& s : r.stages())
    if (!s.pass) return s.name + " " + s.detail.dump();
  return r.stages().empty() ? "no stages" : "";
}

Outcome table1_reproduction() {
  Outcome o;
  std::ifstream in(std::string(DPI_TEST_DATA) + "/table1.txt");
  std::stringstream fixture;
  fixture << in.rdbuf();
  const auto rows = table1();
  require(o, table1_text(rows) == fixture.str(), "text differs from fixture");
  const int dims[] = {19, 26, 35, 46, 59, 74, 74, 91};
  const int points[] = {19, 13, 11, 11, 11, 12, 12, 13};
  const int planes[] = {-1, -1, 1, 2, 1, 4, 4, -1};
  require(o, rows.size() == 8, "row count");
  for (size_t i = 0; i < rows.size() && i < 8; ++i) {
    const auto& p = rows[i].profile;
    require(o, p.dim_u == dims[i] && p.q == points[i] && p.plane_dim.value_or(-1) == planes[i],
            "row " + rows[i].label);
  }
  if (o.pass) o.detail = "8 rows";
  return o;
}

Outcome four_veroneses() {
  Outcome o;
  double worst = 0;
  const Field f = Field::prime(65537);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t0 = Clock::now();
    const Veronese9Result r = veronese9_count(seed, f);
    worst = std::max(worst, seconds_since(t0));
    require(o, r.report.pass(), "seed " + std::to_string(seed) + ": " + first_failure(r.report));
    require(o, r.count == 4, "seed " + std::to_string(seed) + ": count " + std::to_string(r.count));
    for (int i = 0; i < 4; ++i) {
      const Stage* s = r.report.find("surface_" + std::to_string(i));
      require(o, s && s->detail.value("on_surface", 0) == 9, "seed " + std::to_string(seed) + ": points off surface");
    }
    require(o, stage_ok(r.report, "pairwise_distinct"), "seed " + std::to_string(seed) + ": surfaces coincide");
  }
  const Field f2 = standard_extension(2, 8);
  int ordinary = 0;
  for (uint64_t seed = 1; ordinary < 3 && seed <= 20; ++seed) {
    const auto t0 = Clock::now();
    const Veronese9Result r = veronese9_count(seed, f2);
    worst = std::max(worst, seconds_since(t0));
    if (!r.report.notes().value("ordinary", false)) continue;
    ++ordinary;
    require(o, r.report.pass() && r.count == 2, "char 2 seed " + std::to_string(seed) + ": count " +
                                                    std::to_string(r.count));
  }
  require(o, ordinary == 3, "too few ordinary cubics in characteristic 2");
  require(o, worst < 30, "slowest trial " + std::to_string(worst) + " s");
  if (o.pass) o.detail = "20 seeds count 4, 3 seeds over F_256 count 2, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome association(int aux, int seeds, double budget) {
  Outcome o;
  double worst = 0;
  const Field f = Field::prime(65537);
  const std::vector<std::string> required{"quartic_pencil",   "residual_triad",       "singular_triad_h0",
                                          "sextics_triple",   "symcube",              "association_witness",
                                          "final_fit",        "points_on_surface"};
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto t0 = Clock::now();
    const AssociationResult r = association_forward(static_cast<uint64_t>(seed), f, aux);
    worst = std::max(worst, seconds_since(t0));
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    require(o, r.report.pass(), tag + first_failure(r.report));
    for (const auto& name : required) require(o, stage_ok(r.report, name), tag + "missing " + name);
    if (aux > 0) {
      const Stage* s = r.report.find("aux_subsystem");
      require(o, s && s->detail.value("dim", 0) == 10 - aux, tag + "subsystem dimension");
    }
  }
  require(o, worst < budget, "slowest trial " + std::to_string(worst) + " s");
  if (o.pass) o.detail = std::to_string(seeds) + " seeds, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome degenerate_triad() {
  Outcome o;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const DegenerateTriadResult r = degenerate_triad_config(seed, Field::prime(65537));
    require(o, r.report.pass() && r.quintics.dim() == 2 && stage_ok(r.report, "m_divisible"),
            "seed " + std::to_string(seed) + ": " + first_failure(r.report));
  }
  if (o.pass) o.detail = "10 seeds";
  return o;
}

Outcome quintic_forward() {
  Outcome o;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const PipelineReport r = quintic_dp_forward(seed, Field::prime(65537));
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    require(o, r.pass(), tag + first_failure(r));
    require(o, r.find("ideal_slice") && r.find("ideal_slice")->detail["dim"] == 3, tag + "ideal slice");
    require(o, r.find("ambient_quadrics") && r.find("ambient_quadrics")->detail["dim"] == 4, tag + "ambient");
    require(o, r.find("on_scroll_pencil") && r.find("on_scroll_pencil")->detail["dim"] == 1, tag + "pencil");
    require(o, stage_ok(r, "plane_restriction_zero"), tag + "plane restriction");
  }
  if (o.pass) o.detail = "10 seeds";
  return o;
}

Outcome ci_interp() {
  Outcome o;
  for (auto [k, d, n] : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 3, 3}, {2, 2, 4}})
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const PipelineReport r = ci_interpolation(k, d, n, seed);
      require(o, r.pass(), "(" + std::to_string(k) + "," + std::to_string(d) + "," + std::to_string(n) + "): " +
                               first_failure(r));
    }
  const Field f = Field::prime(65537);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(sub_seed(seed, 77));
    std::vector<BaseCondition> conds;
    for (int i = 0; i < 12; ++i) conds.push_back({random_point(3, f, rng), 1});
    require(o, build_system(3, 2, conds, f).dim() == 0, "negative control");
  }
  if (o.pass) o.detail = "3 cases x 5 seeds, negative control h0 = 0";
  return o;
}

Outcome oracle() {
  Outcome o;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const PipelineReport r = oracle_pencil_trial(seed);
    require(o, r.pass(), "seed " + std::to_string(seed) + ": " + first_failure(r));
  }
  if (o.pass) o.detail = "20 split pencils over F_101";
  return o;
}

Outcome properties() {
  Outcome o;
  const int rc = std::system(DPI_PROPERTY_BINARY " --minimal > /dev/null 2>&1");
  require(o, rc == 0, "property_tests exit status " + std::to_string(rc));
  if (o.pass) o.detail = "property_tests";
  return o;
}

Outcome bookkeeping() {
  Outcome o;
  require(o, triad_count_lower_bound() == 630, "630");
  require(o, phi_dimension_audit() == 26, "26");
  if (o.pass) o.detail = "630 and 26";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"del Pezzo table reproduction", table1_reproduction},
      {"four 2-Veronese surfaces", four_veroneses},
      {"degree 9 pipeline", [] { return association(0, 20, 60); }},
      {"degree 8 and 7 pipelines",
       [] {
         Outcome a = association(1, 10, 60), b = association(2, 10, 60);
         if (!a.pass) return a;
         if (!b.pass) return b;
         return Outcome{true, "degree 8: " + a.detail + "; degree 7: " + b.detail};
       }},
      {"degenerate triad", degenerate_triad},
      {"quintic forward", quintic_forward},
      {"complete intersections", ci_interp},
      {"oracle equivalence", oracle},
      {"property suites", properties},
      {"lower-bound bookkeeping", bookkeeping},
  };
  bool all = true;
  const auto start = Clock::now();
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ", " << static_cast<int>(seconds_since(t0) * 1000) << " ms)" << std::endl;
  }
  std::cout << (all ? "all criteria pass" : "some criteria FAIL") << " in "
            << static_cast<int>(seconds_since(start)) << " s" << std::endl;
  return all ? 0 : 1;
}
