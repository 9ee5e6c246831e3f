// Seeded property suites: field axioms, rank-nullity, association,
// the cubic group law, Cremona involution and the Euler relation.

#include "doctest.h"
#include "dpi/cubic.hpp"
#include "dpi/gale.hpp"

using namespace dpi;

namespace {

std::vector<Field> field_specs() {
  return {Field::prime(2),
          Field::prime(101),
          Field::prime(65537),
          standard_extension(2, 8),
          standard_extension(101, 3),
          standard_extension(65537, 2),
          Field::rationals()};
}

PlaneCubic random_cubic(const Field& f, Rng& rng) {
  for (;;) {
    try {
      return cubic_through(random_config(2, 9, f, rng));
    } catch (const NotUnique&) {
    } catch (const Singular&) {
    }
  }
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("field axioms") {
    for (const Field& f : field_specs()) {
      CAPTURE(f.describe());
      Rng rng(sub_seed(1, f.characteristic() * 64 + static_cast<uint64_t>(f.degree())));
      int failures = 0;
      for (int i = 0; i < 1000; ++i) {
        const Fe a = f.random(rng), b = f.random(rng), c = f.random(rng);
        failures += a + b != b + a;
        failures += a * b != b * a;
        failures += (a + b) + c != a + (b + c);
        failures += (a * b) * c != a * (b * c);
        failures += a * (b + c) != a * b + a * c;
        failures += a - a != f.zero();
        if (!a.is_zero()) failures += a.inv() * a != f.one();
      }
      CHECK(failures == 0);
    }
  }

  TEST_CASE("embeddings are ring homomorphisms") {
    Rng rng(2);
    for (auto [p, k] : std::vector<std::pair<uint64_t, int>>{{2, 4}, {101, 3}, {65537, 2}}) {
      const Field sub = Field::prime(p), sup = standard_extension(p, k);
      const Embedding e(sub, sup);
      for (int i = 0; i < 1000; ++i) {
        const Fe a = sub.random(rng), b = sub.random(rng);
        REQUIRE(e(a + b) == e(a) + e(b));
        REQUIRE(e(a * b) == e(a) * e(b));
      }
    }
    const Field f4 = standard_extension(2, 2), f16 = standard_extension(2, 4);
    const Embedding e(f4, f16);
    for (int i = 0; i < 200; ++i) {
      const Fe a = f4.random(rng), b = f4.random(rng);
      REQUIRE(e(a * b + a) == e(a) * e(b) + e(a));
    }
  }

  TEST_CASE("rank-nullity") {
    for (const Field& f : {Field::prime(2), Field::prime(101), Field::prime(65537), standard_extension(3, 4)}) {
      Rng rng(sub_seed(3, f.characteristic()));
      for (int t = 0; t < 60; ++t) {
        const size_t rows = 1 + uniform_below(rng, 9), cols = 1 + uniform_below(rng, 9);
        const size_t target = uniform_below(rng, std::min(rows, cols) + 1);
        // product of random rows x target and target x cols factors has rank <= target
        Matrix a(f, rows, target), b(f, target, cols);
        for (size_t i = 0; i < rows; ++i)
          for (size_t j = 0; j < target; ++j) a(i, j) = f.random(rng);
        for (size_t i = 0; i < target; ++i)
          for (size_t j = 0; j < cols; ++j) b(i, j) = f.random(rng);
        const Matrix m = target == 0 ? Matrix(f, rows, cols) : a * b;
        const size_t r = rank(m);
        const Matrix k = kernel_basis(m);
        CHECK(r + k.rows() == cols);
        CHECK(r <= target);
        if (k.rows() > 0) CHECK((m * k.transpose()).is_zero());
      }
    }
  }

  TEST_CASE("association involution and PGL invariance") {
    const Field f = Field::prime(65537);
    const std::vector<std::pair<int, int>> shapes{{9, 13}, {3, 10}, {5, 9}, {2, 6}, {8, 12}, {7, 11}};
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      Rng rng(sub_seed(4, seed));
      const auto [n, g] = shapes[seed % shapes.size()];
      CAPTURE(seed);
      const PointConfig c = random_config(n, static_cast<size_t>(g), f, rng);
      const PointConfig b = associate(c);
      CHECK(fit_projectivity(associate(b), c).has_value());
      const Projectivity t = Projectivity::random(f, n, rng);
      CHECK(fit_projectivity(associate(t(c)), b).has_value());
    }
  }

  TEST_CASE("cubic group law") {
    Rng rng(5);
    const PlaneCubic e = random_cubic(Field::prime(65537), rng);
    const ProjPoint o = e.flex();
    for (int i = 0; i < 100; ++i) {
      const ProjPoint p = e.random_point(rng), q = e.random_point(rng), r = e.random_point(rng);
      REQUIRE(e.add(e.add(p, q), r) == e.add(p, e.add(q, r)));
      REQUIRE(e.add(p, q) == e.add(q, p));
      REQUIRE(e.add(p, o) == p);
      REQUIRE(e.add(p, e.neg(p)) == o);
      REQUIRE(e.contains(e.add(p, q)));
    }
    // doubling and tangents, in characteristic 2 as well
    Rng rng2(6);
    const PlaneCubic e2 = random_cubic(standard_extension(2, 6), rng2);
    for (int i = 0; i < 100; ++i) {
      const ProjPoint p = e2.random_point(rng2), q = e2.random_point(rng2), r = e2.random_point(rng2);
      REQUIRE(e2.add(e2.add(p, q), r) == e2.add(p, e2.add(q, r)));
      REQUIRE(e2.add(p, p) == e2.mul(p, 2));
    }
  }

  TEST_CASE("Cremona involution") {
    const Field k = Field::prime(65537);
    Rng rng(7);
    for (int i = 0; i < 5; ++i) {
      std::array<ProjPoint, 3> p{random_point(2, k, rng), random_point(2, k, rng), random_point(2, k, rng)};
      if (collinear(p[0], p[1], p[2])) continue;
      std::sort(p.begin(), p.end());
      CHECK(cremona_involution_check(Triad{k, k, p, "1+1+1"}, 20, rng));
    }
  }

  TEST_CASE("Euler relation") {
    for (const Field& f : {Field::prime(2), Field::prime(3), Field::prime(65537), standard_extension(5, 2)}) {
      Rng rng(sub_seed(8, f.characteristic()));
      for (int t = 0; t < 30; ++t) {
        const int n = 2 + static_cast<int>(uniform_below(rng, 3));
        const int d = static_cast<int>(uniform_below(rng, 7));
        HomForm g(f, n, d);
        for (const auto& e : monomials(n, d)) g.set_coeff(e, f.random(rng));
        HomForm lhs(f, n, d);
        if (d > 0)
          for (int i = 0; i < n; ++i) lhs = lhs + HomForm::variable(f, n, i) * g.partial(i);
        CHECK(lhs == g * f.from_int(d));
      }
    }
  }
}
