#include "doctest.h"
#include "dpi/cubic.hpp"

using namespace dpi;

namespace {

PlaneCubic random_cubic(const Field& f, Rng& rng) {
  for (;;) {
    PointConfig c(f, 2);
    while (c.size() < 9) c.push_back(random_point(2, f, rng));
    try {
      return cubic_through(c);
    } catch (const NotUnique&) {
    } catch (const Singular&) {
    }
  }
}

std::vector<ProjPoint> rational_points(const HomForm& f) {
  const Field& k = f.field();
  std::vector<ProjPoint> out;
  const uint64_t q = static_cast<uint64_t>(*k.order());
  for (uint64_t a = 0; a < q; ++a)
    for (uint64_t b = 0; b < q; ++b) {
      const Vec v{k.from_index(a), k.from_index(b), k.one()};
      if (f.evaluate(v).is_zero()) out.emplace_back(v);
    }
  for (uint64_t a = 0; a < q; ++a) {
    const Vec v{k.from_index(a), k.one(), k.zero()};
    if (f.evaluate(v).is_zero()) out.emplace_back(v);
  }
  if (f.evaluate({k.one(), k.zero(), k.zero()}).is_zero()) out.emplace_back(Vec{k.one(), k.zero(), k.zero()});
  return out;
}

HomForm fermat(const Field& k) {
  HomForm f(k, 3, 3);
  f.set_coeff({3, 0, 0}, k.one());
  f.set_coeff({0, 3, 0}, k.one());
  f.set_coeff({0, 0, 3}, k.one());
  return f;
}

}  // namespace

TEST_SUITE("cubic") {

TEST_CASE("cubic through nine points") {
  const Field f = Field::prime(65537);
  Rng rng(1);
  const PointConfig c = random_config(2, 9, f, rng);
  const PlaneCubic e = cubic_through(c);
  for (const auto& p : c.points()) CHECK(e.contains(e.base_point(p)));
  CHECK(is_flex(e.equation(), e.flex()));
  CHECK(e.field().degree() <= kFlexDegreeCap);

  PointConfig bad(f, 2);
  for (int i = 0; i < 4; ++i) bad.push_back(ProjPoint(Vec{f.one(), f.from_int(i + 2), f.zero()}));
  for (int i = 0; i < 5; ++i) bad.push_back(random_point(2, f, rng));
  CHECK_THROWS_AS(cubic_through(bad), Error);  // the cubic contains the line z = 0
}

TEST_CASE("Fermat cubic") {
  const Field f11 = Field::prime(11);
  const auto pts = rational_points(fermat(f11));
  CHECK(pts.size() == 12);
  PointConfig c(f11, 2, std::vector<ProjPoint>(pts.begin(), pts.begin() + 9));
  CHECK(cubic_through(c).base_equation() == fermat(f11));

  // over F_7 the nine rational points are the flexes, all on xyz = 0
  const Field f7 = Field::prime(7);
  const auto p7 = rational_points(fermat(f7));
  REQUIRE(p7.size() == 9);
  CHECK_THROWS_AS(cubic_through(PointConfig(f7, 2, p7)), NotUnique);
  for (const auto& p : p7) CHECK(is_flex(fermat(f7), p));
}

TEST_CASE("smoothness") {
  const Field f = Field::prime(101);
  const HomForm x = HomForm::variable(f, 3, 0), y = HomForm::variable(f, 3, 1), z = HomForm::variable(f, 3, 2);
  CHECK(is_smooth(fermat(f)));
  CHECK_FALSE(is_smooth(y * y * z - x * x * x - x * x * z));  // nodal
  CHECK_FALSE(is_smooth(y * y * z - x * x * x));              // cuspidal
  CHECK_FALSE(is_smooth(x * y * z));
  CHECK_THROWS_AS(PlaneCubic(y * y * z - x * x * x), Singular);
  const Field f2 = Field::prime(2);
  const HomForm x2 = HomForm::variable(f2, 3, 0), y2 = HomForm::variable(f2, 3, 1), z2 = HomForm::variable(f2, 3, 2);
  CHECK(is_smooth(y2 * y2 * z2 + x2 * y2 * z2 + x2 * x2 * x2 + z2 * z2 * z2));
}

TEST_CASE("group axioms") {
  Rng rng(2);
  const PlaneCubic e = random_cubic(Field::prime(65537), rng);
  const ProjPoint o = e.flex();
  for (int i = 0; i < 20; ++i) {
    const ProjPoint p = e.random_point(rng), q = e.random_point(rng), r = e.random_point(rng);
    CHECK(e.add(p, o) == p);
    CHECK(e.add(p, e.neg(p)) == o);
    CHECK(e.add(p, q) == e.add(q, p));
    CHECK(e.add(e.add(p, q), r) == e.add(p, e.add(q, r)));
    CHECK(e.mul(p, 3) == e.add(p, e.add(p, p)));
    CHECK(e.mul(p, -2) == e.neg(e.add(p, p)));
  }
  CHECK(e.mul(o, 5) == o);
  CHECK(e.third(o, o) == o);
}

TEST_CASE("flex machinery in characteristic 2") {
  Rng rng(3);
  const Field k = standard_extension(2, 6);
  const PlaneCubic e = random_cubic(k, rng);
  CHECK(is_flex(e.equation(), e.flex()));
  for (int i = 0; i < 5; ++i) {
    const ProjPoint p = e.random_point(rng), q = e.random_point(rng), r = e.random_point(rng);
    CHECK(e.add(e.add(p, q), r) == e.add(p, e.add(q, r)));
    CHECK(e.add(p, e.neg(p)) == e.flex());
  }
}

TEST_CASE("two-torsion counts") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const PlaneCubic e = random_cubic(Field::prime(65537), rng);
    const auto t = two_torsion(e);
    CHECK(t.size() == 4);
    const PlaneCubic el = e.extend(t.front().field());
    for (const auto& p : t) CHECK(el.add(p, p) == el.flex());
  }
  const Field k = standard_extension(2, 6);
  for (int i = 0; i < 20; ++i) {
    const PlaneCubic e = random_cubic(k, rng);
    const bool ordinary = !e.weierstrass().a1.is_zero();
    const auto t = two_torsion(e);
    CHECK(t.size() == (ordinary ? 2u : 1u));
  }
}

TEST_CASE("square roots of classes") {
  Rng rng(5);
  const PlaneCubic e = random_cubic(Field::prime(65537), rng);
  const ProjPoint p = e.random_point(rng);
  const DivisorClass m{3, p};
  const DivisorClass l = scale(e, m, 2);
  CHECK(l.degree == 6);
  const auto roots = sqrt_classes(e, l);
  REQUIRE(roots.size() == 4);
  const PlaneCubic el = e.extend(roots.front().rep.field());
  const DivisorClass ml{3, p.lift(Embedding(e.field(), el.field()))};
  CHECK(std::find(roots.begin(), roots.end(), ml) != roots.end());
  const auto tors = two_torsion(el);
  for (const auto& a : roots) {
    CHECK(add(el, a, a) == DivisorClass{6, l.rep.lift(Embedding(e.field(), el.field()))});
    for (const auto& b : roots) {
      const ProjPoint d = el.sub(a.rep, b.rep);
      CHECK(std::find(tors.begin(), tors.end(), d) != tors.end());
    }
  }
  CHECK(sqrt_classes(e, DivisorClass{6, e.flex()}).size() == 4);
}

TEST_CASE("sections of divisor classes") {
  Rng rng(6);
  const PlaneCubic e = random_cubic(Field::prime(65537), rng);
  const Field& k = e.field();

  // |3 O| is cut by lines, so the induced map is a projectivity on the curve
  const ClassSections s3 = sections_of_class(e, DivisorClass{3, e.flex()}, rng);
  CHECK(s3.basis.size() == 3);
  PointConfig src(k, 2), img(k, 2);
  while (src.size() < 12) {
    const ProjPoint p = e.random_point(rng);
    try {
      img.push_back(map_by(s3, p));
      src.push_back(p);
    } catch (const IndeterminatePoint&) {
    }
  }
  CHECK(fit_projectivity(src, img).has_value());

  // a general degree-3 class maps the curve to a plane cubic
  const ClassSections sm = sections_of_class(e, DivisorClass{3, e.random_point(rng)}, rng);
  Matrix ev(k, 0, 10);
  for (int i = 0; i < 14; ++i) {
    const ProjPoint q = map_by(sm, e.random_point(rng));
    ev.append_row(veronese(k, 2, 3)(q).coords());
  }
  CHECK(rank(ev) == 9);

  // independent of the auxiliary divisor up to a projectivity
  const DivisorClass l{6, e.random_point(rng)};
  const ClassSections a = sections_of_class(e, l, rng), b = sections_of_class(e, l, rng);
  CHECK(a.basis.size() == 6);
  CHECK(a.aux != b.aux);
  PointConfig ia(k, 5), ib(k, 5);
  for (int i = 0; i < 9; ++i) {
    const ProjPoint p = e.random_point(rng);
    ia.push_back(map_by(a, p));
    ib.push_back(map_by(b, p));
  }
  CHECK(fit_projectivity(ia, ib).has_value());
}

}
