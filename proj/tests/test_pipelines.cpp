#include "doctest.h"
#include "dpi/pipelines.hpp"

using namespace dpi;

namespace {

std::string failed_stages(const PipelineReport& r) {
  std::string s;
  for (const auto& st : r.stages())
    if (!st.pass) s += st.name + " " + st.detail.dump() + "; ";
  return s;
}

}  // namespace

TEST_SUITE("pipelines") {
  TEST_CASE("rnc through 6 points of P^3") {
    const Field f = Field::prime(65537);
    Rng rng(11);
    const PointConfig cfg = random_config(3, 6, f, rng);
    const RncResult r = rnc_through(cfg);
    CHECK(r.report.pass());
    CHECK(r.map.degree() == 3);
    for (size_t i = 0; i < cfg.size(); ++i) CHECK(r.map(r.params[i]) == cfg[i]);
  }

  TEST_CASE("rnc through 5 points of P^2 is the conic") {
    const Field f = Field::prime(101);
    Rng rng(3);
    const PointConfig cfg = random_config(2, 5, f, rng);
    const RncResult r = rnc_through(cfg);
    const LinearSystem conic = build_system(2, 2, {{cfg[0], 1}, {cfg[1], 1}, {cfg[2], 1}, {cfg[3], 1}, {cfg[4], 1}}, f);
    REQUIRE(conic.dim() == 1);
    for (int i = 0; i < 10; ++i) CHECK(conic[0].evaluate(r.map(random_point(1, f, rng)).coords()).is_zero());
  }

  TEST_CASE("rnc rejects the unit point as last point") {
    const Field f = Field::prime(101);
    PointConfig cfg(f, 2);
    for (const auto& v : std::vector<std::vector<int64_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, 1, 1}}) {
      Vec x;
      for (auto c : v) x.push_back(f.from_int(c));
      cfg.push_back(ProjPoint(x));
    }
    CHECK_THROWS_AS(rnc_through(cfg), DegenerateConfiguration);
  }

  TEST_CASE("quintic del Pezzo forward") {
    const PipelineReport r = quintic_dp_forward(1, Field::prime(65537));
    INFO(failed_stages(r));
    CHECK(r.pass());
    CHECK(r.find("on_scroll_pencil")->detail["dim"] == 1);
  }

  TEST_CASE("sextic del Pezzo forward") {
    const PipelineReport r = sextic_dp_forward(2, Field::prime(65537));
    INFO(failed_stages(r));
    CHECK(r.pass());
  }

  TEST_CASE("sextic del Pezzo rejects collinear points") {
    const Field f = Field::prime(101);
    Rng rng(5);
    // a quartic through three points of x + y + z = 0
    PointConfig pts(f, 2);
    pts.push_back(ProjPoint(Vec{f.one(), -f.one(), f.zero()}));
    pts.push_back(ProjPoint(Vec{f.one(), f.zero(), -f.one()}));
    pts.push_back(ProjPoint(Vec{f.zero(), f.one(), -f.one()}));
    while (pts.size() < 14) pts.push_back(random_point(2, f, rng));
    std::vector<BaseCondition> conds;
    for (const auto& p : pts.points()) conds.push_back({p, 1});
    const LinearSystem q = build_system(2, 4, conds, f);
    REQUIRE(q.dim() >= 1);
    CHECK_THROWS_AS(sextic_dp_from(q[0], {pts[0], pts[1], pts[2]}, rng), GeneralityFailure);
  }

  TEST_CASE("p1 x p1 forward") {
    const PipelineReport r = p1p1_dp_forward(3, Field::prime(65537));
    INFO(failed_stages(r));
    CHECK(r.pass());
  }

  TEST_CASE("p1 x p1 smoothness") {
    const Field f = Field::prime(101);
    // a squared (1,1) factor makes the curve singular along it
    BiForm l(f, 1, 1, 2);
    l.at(0, 0) = f.one();
    l.at(1, 1) = -f.one();
    BiForm m(f, 0, 1, 2);
    m.at(0, 0) = f.one();
    m.at(0, 1) = f.from_int(3);
    BiForm n(f, 1, 0, 2);
    n.at(0, 0) = f.one();
    n.at(1, 0) = f.from_int(7);
    CHECK_FALSE(is_smooth_p1p1(l * l * m * n));
    Rng rng(9);
    int smooth = 0;
    for (int i = 0; i < 5; ++i) {
      BiForm c(f, 2, 3, 2);
      for (int a = 0; a <= 2; ++a)
        for (size_t j = 0; j < 4; ++j) c.at(a, j) = f.random(rng);
      smooth += is_smooth_p1p1(c);
    }
    CHECK(smooth >= 3);
  }

  TEST_CASE("veronese surfaces through 9 points, odd characteristic") {
    const Veronese9Result r = veronese9_count(4, Field::prime(65537));
    INFO(failed_stages(r.report));
    CHECK(r.report.pass());
    CHECK(r.count == 4);
  }

  TEST_CASE("veronese surfaces through 9 points, characteristic 2") {
    const Veronese9Result r = veronese9_count(5, standard_extension(2, 8));
    INFO(failed_stages(r.report));
    CHECK(r.report.pass());
    CHECK(r.count == 2);
  }

  TEST_CASE("association forward") {
    const Field f = Field::prime(65537);
    for (int aux = 0; aux <= 2; ++aux) {
      CAPTURE(aux);
      const AssociationResult r = association_forward(10 + static_cast<uint64_t>(aux), f, aux);
      INFO(failed_stages(r.report));
      CHECK(r.report.pass());
      CHECK(r.surface.has_value());
    }
  }

  TEST_CASE("association literal route does not fit") {
    const Field f = Field::prime(65537);
    const AssociationResult fwd = association_forward(20, f, 0);
    REQUIRE(fwd.report.pass());
    const AssociationResult lit = association_literal(fwd.input, 21, 0);
    const Stage* s = lit.report.find("final_fit");
    REQUIRE(s != nullptr);
    CHECK_FALSE(s->pass);
    CHECK(lit.report.find("singular_triad_h0")->pass);
  }

  TEST_CASE("degenerate triad") {
    const DegenerateTriadResult r = degenerate_triad_config(6, Field::prime(65537));
    INFO(failed_stages(r.report));
    CHECK(r.report.pass());
    CHECK(r.quintics.dim() == 2);
  }

  TEST_CASE("triad count bookkeeping") {
    CHECK(triad_count_lower_bound() == 630);
    CHECK(triad_count_report().pass());
  }

  TEST_CASE("pencil residual agrees with exhaustive scan") {
    for (uint64_t seed = 1; seed <= 2; ++seed) {
      const PipelineReport r = oracle_pencil_trial(seed);
      INFO(failed_stages(r));
      CHECK(r.pass());
    }
  }

  TEST_CASE("reports are deterministic") {
    const Field f = Field::prime(65537);
    CHECK(quintic_dp_forward(7, f).to_json().dump() == quintic_dp_forward(7, f).to_json().dump());
    const auto j = quintic_dp_forward(7, f).to_json();
    CHECK(j["schema"] == "dpi-report-v1");
    CHECK(j["construction"] == "quintic_dp_forward");
  }
}
