#include "doctest.h"
#include "dpi/poly.hpp"

using namespace dpi;

namespace {
UniPoly poly(const Field& f, std::vector<int64_t> c) {
  Vec v;
  for (auto x : c) v.push_back(f.from_int(x));
  return UniPoly(f, v);
}

UniPoly product(const std::vector<std::pair<UniPoly, int>>& fs, const Field& f) {
  UniPoly r = UniPoly::constant(f.one());
  for (const auto& [g, m] : fs)
    for (int i = 0; i < m; ++i) r *= g;
  return r;
}
}  // namespace

TEST_SUITE("poly") {

TEST_CASE("monomial order") {
  const auto q = monomials(3, 2);
  const std::vector<Exponents> expect{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  CHECK(q == expect);
  for (int d = 0; d <= 6; ++d) {
    const auto ms = monomials(4, d);
    CHECK(ms.size() == binomial(d + 3, 3));
    for (size_t i = 0; i < ms.size(); ++i) CHECK(monomial_rank(ms[i]) == i);
  }
}

TEST_CASE("resultants") {
  const Field f = Field::prime(101);
  // y - x and y - 2x
  const BiPoly a{poly(f, {0, -1}), poly(f, {1})};
  const BiPoly b{poly(f, {0, -2}), poly(f, {1})};
  const UniPoly r = resultant_y(a, b);
  CHECK(r.deg() == 1);
  CHECK(r.coeff(0).is_zero());
  CHECK(resultant_y(a, a).is_zero());

  // two random plane quartics: resultant of degree 16
  Rng rng(8);
  HomForm q1(f, 3, 4), q2(f, 3, 4);
  Vec c1, c2;
  for (int i = 0; i < 15; ++i) {
    c1.push_back(f.random(rng));
    c2.push_back(f.random(rng));
  }
  const UniPoly res = resultant_y(dehomogenize(HomForm(f, 3, 4, c1)), dehomogenize(HomForm(f, 3, 4, c2)));
  CHECK(res.deg() == 16);
}

TEST_CASE("resultant over a tiny field falls back to polynomial elimination") {
  const Field f = Field::prime(3);
  Rng rng(4);
  Vec c1, c2;
  for (int i = 0; i < 10; ++i) {
    c1.push_back(f.random(rng));
    c2.push_back(f.random(rng));
  }
  const BiPoly a = dehomogenize(HomForm(f, 3, 3, c1)), b = dehomogenize(HomForm(f, 3, 3, c2));
  const UniPoly r = resultant_y(a, b);
  for (uint64_t i = 0; i < 3; ++i) {
    const Fe x0 = f.from_index(i);
    CHECK(r.eval(x0) == resultant(specialize_x(a, x0), specialize_x(b, x0)));
  }
  // sign convention
  const int m = deg_y(a), n = deg_y(b);
  CHECK(resultant_y(b, a) == ((m * n) % 2 ? -r : r));
}

TEST_CASE("factorisation") {
  const Field f2 = Field::prime(2);
  const auto a = factor(poly(f2, {1, 1, 1}));
  REQUIRE(a.size() == 1);
  CHECK(a[0].second == 1);
  CHECK(a[0].first.deg() == 2);

  const Field f7 = Field::prime(7);
  const auto b = factor(poly(f7, {-1, 0, 1}));
  REQUIRE(b.size() == 2);
  CHECK(b[0].first == poly(f7, {1, 1}));
  CHECK(b[1].first == poly(f7, {6, 1}));

  const Field f101 = Field::prime(101);
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Vec c;
    for (int i = 0; i < 6; ++i) c.push_back(f101.random(rng));
    c.push_back(f101.one());
    const UniPoly g(f101, c);
    const auto fs = factor(g, rng);
    CHECK(product(fs, f101) == g);
    int total = 0;
    for (const auto& [h, m] : fs) {
      CHECK(is_irreducible(h));
      total += h.deg() * m;
    }
    CHECK(total == 6);
  }
}

TEST_CASE("factorisation with repeated and p-th power factors") {
  const Field f3 = Field::prime(3);
  // (x+1)^3 (x^2+1)^2 x
  UniPoly g = poly(f3, {1, 1});
  g = g * g * g * poly(f3, {1, 0, 1}) * poly(f3, {1, 0, 1}) * poly(f3, {0, 1});
  const auto fs = factor(g);
  CHECK(product(fs, f3) == g);
  CHECK(fs.size() == 3);

  Rng rng(2);
  const Field f16 = build_extension(2, 4, rng);
  UniPoly h = UniPoly(f16, Vec{f16.gen(), f16.one()});
  h = h * h * UniPoly(f16, Vec{f16.one(), f16.gen(), f16.one()});
  CHECK(product(factor(h), f16) == h.monic());
}

TEST_CASE("roots and square roots") {
  Rng rng(6);
  const Field e = build_extension(65537, 2, rng);
  const Fe a = e.random(rng), b = e.random(rng);
  const UniPoly g = UniPoly(e, Vec{-a, e.one()}) * UniPoly(e, Vec{-b, e.one()}) * UniPoly(e, Vec{e.one(), e.zero(), e.zero(), e.one()}) ;
  const auto rs = roots(g);
  CHECK(std::find(rs.begin(), rs.end(), a) != rs.end());
  CHECK(std::find(rs.begin(), rs.end(), b) != rs.end());
  for (const auto& r : rs) CHECK(g.eval(r).is_zero());

  const Fe s = e.random(rng);
  const auto t = sqrt(s * s);
  REQUIRE(t);
  CHECK(*t * *t == s * s);
  const Field f8 = build_extension(2, 3, rng);
  const Fe u = f8.random(rng);
  CHECK(*sqrt(u) * *sqrt(u) == u);
}

TEST_CASE("embeddings are ring homomorphisms") {
  Rng rng(12);
  const Field f4 = build_extension(5, 2, rng);
  const Field f8 = build_extension(5, 4, rng);
  const Embedding e(f4, f8);
  CHECK(e.relative_degree() == 2);
  for (int i = 0; i < 50; ++i) {
    const Fe a = f4.random(rng), b = f4.random(rng);
    CHECK(e(a + b) == e(a) + e(b));
    CHECK(e(a * b) == e(a) * e(b));
    CHECK(*e.contract(e(a)) == a);
    const Fe y = f8.random(rng);
    const Vec c = e.coords(y);
    CHECK(e(c[0]) + e(c[1]) * f8.gen() == y);
  }
  const Embedding p(Field::prime(5), f8);
  CHECK(p(Field::prime(5).from_int(3)) == f8.from_int(3));
  CHECK_FALSE(p.contract(f8.gen()).has_value());
}

TEST_CASE("form operations") {
  const Field f = Field::prime(101);
  const HomForm x = HomForm::variable(f, 3, 0), y = HomForm::variable(f, 3, 1), z = HomForm::variable(f, 3, 2);
  CHECK((x * y * z).evaluate({f.one(), f.one(), f.one()}) == f.one());
  CHECK((x * x).partial(0) == x * f.from_int(2));

  const HomForm u0 = HomForm::variable(f, 2, 0), u1 = HomForm::variable(f, 2, 1);
  CHECK((u0 * u1).compose({x * x, y * y}) == x * x * y * y);

  const HomForm g = x * x + y * z;
  CHECK(*(g * (x - z)).divide(x - z) == g);
  CHECK_FALSE((g * x + y * y * y).divide(x).has_value());

  const BiPoly bp = dehomogenize(x * y * y + z * z * z);
  CHECK(deg_y(bp) == 2);
  CHECK(bp[2] == UniPoly::x(f));
}

TEST_CASE("Euler relation") {
  Rng rng(31);
  for (uint64_t p : {2ULL, 3ULL, 101ULL}) {
    const Field f = Field::prime(p);
    for (int d = 1; d <= 6; ++d) {
      Vec c;
      for (size_t i = 0; i < binomial(d + 2, 2); ++i) c.push_back(f.random(rng));
      const HomForm F(f, 3, d, c);
      HomForm lhs(f, 3, d);
      for (int i = 0; i < 3; ++i) lhs = lhs + HomForm::variable(f, 3, i) * F.partial(i);
      CHECK(lhs == F * f.from_int(d));
    }
  }
}

TEST_CASE("biforms") {
  const Field f = Field::prime(101);
  Rng rng(3);
  BiForm a(f, 1, 0), b(f, 1, 2, 3);
  for (int i = 0; i <= 1; ++i) a.at(i, 0) = f.random(rng);
  for (int i = 0; i <= 1; ++i)
    for (size_t j = 0; j < 6; ++j) b.at(i, j) = f.random(rng);
  BiForm a3(f, 1, 0, 3);
  a3.at(0, 0) = a.at(0, 0);
  a3.at(1, 0) = a.at(1, 0);
  const BiForm prod = a3 * b;
  CHECK(prod.a() == 2);
  CHECK(*prod.divide(a3) == b);
  const Vec s{f.from_int(3), f.from_int(7)}, t{f.from_int(2), f.from_int(5), f.from_int(11)};
  CHECK(prod.evaluate(s, t) == a3.evaluate(s, t) * b.evaluate(s, t));
}

}
