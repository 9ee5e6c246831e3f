#include "doctest.h"
#include "dpi/fields.hpp"

using namespace dpi;

TEST_SUITE("fields") {

TEST_CASE("inverse in F_7") {
  const Field f = Field::prime(7);
  CHECK(f.from_int(3).inv() == f.from_int(5));
  CHECK(f.from_int(-1) == f.from_int(6));
  CHECK_THROWS_AS(f.zero().inv(), DivisionByZero);
}

TEST_CASE("frobenius fixes the prime field") {
  const Field f = Field::prime(101);
  for (int i = 0; i < 101; ++i) CHECK(f.from_int(i).frobenius() == f.from_int(i));
  Rng rng(3);
  const Field e = build_extension(101, 3, rng);
  CHECK(e.from_int(42).frobenius() == e.from_int(42));
  CHECK(e.gen().frobenius() != e.gen());
  CHECK(e.gen().frobenius().frobenius().frobenius() == e.gen());
}

TEST_CASE("F_4 product t(t+1) = 1") {
  const Field f4 = Field::extension(2, {1, 1, 1});
  const Fe t = f4.gen();
  CHECK(t * (t + f4.one()) == f4.one());
}

TEST_CASE("mixing fields throws") {
  const Field a = Field::prime(7), b = Field::prime(11);
  CHECK_THROWS_AS(a.one() + b.one(), FieldMismatch);
}

TEST_CASE("build_extension") {
  Rng rng(1);
  const Field f7 = build_extension(7, 1, rng);
  CHECK(f7.kind() == FieldKind::prime);
  CHECK(f7.modulus().empty());

  const Field f4 = build_extension(2, 2, rng);
  CHECK(f4.modulus() == std::vector<uint64_t>{1, 1, 1});

  // irreducible cubic over F_101: no roots, and gcd with t^101 - t is trivial
  const Field e = build_extension(101, 3, rng);
  const auto& m = e.modulus();
  REQUIRE(m.size() == 4);
  const Field fp = Field::prime(101);
  for (int x = 0; x < 101; ++x) {
    Fe v = fp.zero();
    for (size_t i = m.size(); i-- > 0;) v = v * fp.from_int(x) + fp.from_int(static_cast<int64_t>(m[i]));
    CHECK_FALSE(v.is_zero());
  }

  Rng r1(99), r2(99);
  CHECK(build_extension(65537, 4, r1) == build_extension(65537, 4, r2));
}

TEST_CASE("reducible modulus is rejected") {
  CHECK_THROWS_AS(Field::extension(7, {6, 0, 1}), std::invalid_argument);  // t^2 - 1
  CHECK_THROWS_AS(Field::prime(12), std::invalid_argument);
}

TEST_CASE("json round trip") {
  Rng rng(5);
  for (const Field& f : {Field::prime(65537), build_extension(3, 5, rng), Field::rationals()}) {
    const Field g = Field::from_json(f.to_json());
    CHECK(f == g);
    const Fe x = f.random(rng);
    CHECK(Fe::from_json(g, x.to_json()) == x);
  }
  CHECK(Field::rationals().to_json()["char"] == 0);
}

TEST_CASE("rationals") {
  const Field q = Field::rationals();
  const Fe a = q.from_rational(Rational(1, 3));
  CHECK(a + a + a == q.one());
  CHECK(a.inv() == q.from_int(3));
  CHECK(Field::prime(7).from_rational(Rational(1, 3)) == Field::prime(7).from_int(5));
}

TEST_CASE("from_index enumerates distinct elements") {
  const Field f9 = Field::extension(3, {1, 0, 1});  // t^2 + 1
  std::vector<Fe> seen;
  for (uint64_t i = 0; i < 9; ++i) {
    const Fe x = f9.from_index(i);
    for (const auto& y : seen) CHECK(x != y);
    seen.push_back(x);
  }
}

TEST_CASE("uniform_below is reproducible") {
  Rng a(11), b(11);
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = uniform_below(a, 65537);
    CHECK(x < 65537);
    CHECK(x == uniform_below(b, 65537));
  }
  CHECK(sub_seed(1, 0) != sub_seed(1, 1));
}

}
