#include "doctest.h"
#include "dpi/maps.hpp"

using namespace dpi;

namespace {
ProjPoint pt(const Field& f, std::vector<int64_t> c) {
  Vec v;
  for (auto x : c) v.push_back(f.from_int(x));
  return ProjPoint(v);
}

Triad standard_triad(const Field& f) {
  std::array<ProjPoint, 3> p{pt(f, {0, 0, 1}), pt(f, {0, 1, 0}), pt(f, {1, 0, 0})};
  return Triad{f, f, p, "1+1+1"};
}

Triad galois_triad(const Field& k, int degree, Rng& rng) {
  const Field l = build_extension(k.characteristic(), degree, rng);
  for (;;) {
    const ProjPoint p = random_point(2, l, rng);
    std::array<ProjPoint, 3> o{p, p.frobenius(), p.frobenius().frobenius()};
    if (collinear(o[0], o[1], o[2])) continue;
    std::sort(o.begin(), o.end());
    return Triad{k, l, o, orbit_pattern(k, o)};
  }
}
}  // namespace

TEST_SUITE("maps") {

TEST_CASE("veronese maps") {
  const Field f = Field::prime(101);
  const RationalMap v22 = veronese(f, 2, 2);
  CHECK(v22(pt(f, {1, 0, 0})) == pt(f, {1, 0, 0, 0, 0, 0}));
  CHECK(v22(pt(f, {0, 1, 1})) == pt(f, {0, 0, 0, 1, 1, 1}));
  CHECK(veronese(f, 2, 3).target() == 9);
  const RationalMap rnc = veronese(f, 1, 4);
  CHECK(rnc.target() == 4);
}

TEST_CASE("veronese is injective on samples") {
  const Field f = Field::prime(65537);
  Rng rng(3);
  const RationalMap v = veronese(f, 2, 2);
  std::vector<ProjPoint> src, img;
  for (int i = 0; i < 40; ++i) {
    const ProjPoint p = random_point(2, f, rng);
    const ProjPoint q = v(p);
    for (size_t j = 0; j < src.size(); ++j) CHECK((src[j] == p) == (img[j] == q));
    src.push_back(p);
    img.push_back(q);
  }
}

TEST_CASE("standard Cremona") {
  const Field f = Field::prime(101);
  const Triad t = standard_triad(f);
  const RationalMap a = cremona_from_triad(t);
  // the conic basis is (yz : xz : xy) up to a change of coordinates on the target
  const HomForm x = HomForm::variable(f, 3, 0), y = HomForm::variable(f, 3, 1), z = HomForm::variable(f, 3, 2);
  const RationalMap std_cremona(f, 2, {y * z, x * z, x * y});
  CHECK(std_cremona(pt(f, {2, 3, 5})) == pt(f, {15, 10, 6}));
  PointConfig src(f, 2);
  for (int64_t i = 1; i <= 8; ++i) src.push_back(pt(f, {1, i + 1, i * i + 3}));
  CHECK(fit_projectivity(a(src), std_cremona(src)).has_value());
  CHECK_THROWS_AS(a(pt(f, {1, 0, 0})), IndeterminatePoint);
  const Triad ex = exceptional_triad(t, a);
  std::vector<ProjPoint> got(ex.points.begin(), ex.points.end()), want(t.points.begin(), t.points.end());
  CHECK(got == want);

  const Triad line{f, f, {pt(f, {1, 0, 0}), pt(f, {0, 1, 0}), pt(f, {1, 1, 0})}, "1+1+1"};
  CHECK_THROWS_AS(cremona_from_triad(line), CollinearTriad);
}

TEST_CASE("Galois-irreducible triad over a cubic extension") {
  Rng rng(5);
  const Field k = Field::prime(101);
  const Triad t = galois_triad(k, 3, rng);
  CHECK(t.orbit == "3");
  const RationalMap a = cremona_from_triad(t);
  CHECK(a.field() == k);
  const Embedding e = t.embedding();
  for (const auto& g : a.forms())
    for (const auto& p : t.points) CHECK(g.lift(e).evaluate(p.coords()).is_zero());
  const Triad ex = exceptional_triad(t, a);
  CHECK(ex.orbit == "3");
  CHECK(cremona_involution_check(t, 20, rng));
}

TEST_CASE("Cremona involution on random triads") {
  const Field k = Field::prime(65537);
  Rng rng(11);
  for (int i = 0; i < 3; ++i) {
    std::array<ProjPoint, 3> p{random_point(2, k, rng), random_point(2, k, rng), random_point(2, k, rng)};
    std::sort(p.begin(), p.end());
    CHECK(cremona_involution_check(Triad{k, k, p, "1+1+1"}, 20, rng));
  }
}

TEST_CASE("cube certificate") {
  const Field f = Field::prime(65537);
  Rng rng(7);
  const Triad s = standard_triad(f);
  const LinearSystem w = build_system(2, 6, s.conditions(3), f);
  CHECK(w.dim() == 10);
  CHECK(symcube_certificate(w, s));

  std::vector<HomForm> b = w.basis();
  Vec c;
  for (int i = 0; i < 28; ++i) c.push_back(f.random(rng));
  b[3] = HomForm(f, 3, 6, c);
  CHECK_FALSE(symcube_certificate(LinearSystem(f, 2, 6, b), s));

  const Triad g = galois_triad(Field::prime(101), 3, rng);
  CHECK(symcube_certificate(build_system(2, 6, g.conditions(3), g.base), g));
}

TEST_CASE("product parametrisations") {
  const Field f = Field::prime(101);
  CHECK(segre_p1p2(f).size() == 6);
  CHECK(p1p1_22(f).size() == 9);
  const ProjPoint p = apply_biforms(segre_p1p2(f), {f.from_int(1), f.from_int(2)}, {f.from_int(3), f.from_int(4), f.from_int(5)});
  CHECK(p == pt(f, {3, 4, 5, 6, 8, 10}));
}

}
