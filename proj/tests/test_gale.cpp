#include "doctest.h"
#include "dpi/gale.hpp"

using namespace dpi;

TEST_SUITE("gale") {

TEST_CASE("output dimensions") {
  const Field f = Field::prime(65537);
  Rng rng(13);
  const PointConfig a = associate(random_config(9, 13, f, rng));
  CHECK(a.ambient() == 2);
  CHECK(a.size() == 13);
  const PointConfig b = associate(random_config(5, 9, f, rng));
  CHECK(b.ambient() == 2);
  const PointConfig c = associate(random_config(3, 10, f, rng));
  CHECK(c.ambient() == 5);
  CHECK_THROWS_AS(associate(random_config(3, 5, f, rng)), BadLength);
}

TEST_CASE("association is an involution up to projectivity") {
  const Field f = Field::prime(65537);
  Rng rng(21);
  const PointConfig c = random_config(9, 13, f, rng);
  CHECK(fit_projectivity(associate(associate(c)), c).has_value());
}

TEST_CASE("rescaled representatives give the same output") {
  const Field f = Field::prime(65537);
  Rng rng(5);
  const PointConfig c = random_config(4, 9, f, rng);
  // the canonical representatives are scale-free, so rescaling is invisible
  PointConfig d(f, 4);
  for (const auto& p : c.points()) {
    Vec v = p.coords();
    const Fe s = f.from_int(1 + static_cast<int64_t>(uniform_below(rng, 1000)));
    for (auto& x : v) x *= s;
    d.push_back(ProjPoint(v));
  }
  CHECK(associate(c) == associate(d));
}

TEST_CASE("association witness") {
  const Field f = Field::prime(65537);
  Rng rng(6);
  const PointConfig a = random_config(9, 13, f, rng);
  const PointConfig b = associate(a);
  const auto w = verify_association(a, b);
  REQUIRE(w);
  for (const auto& d : *w) CHECK_FALSE(d.is_zero());

  PointConfig broken(f, 2);
  for (size_t i = 0; i < b.size(); ++i) broken.push_back(i == 4 ? random_point(2, f, rng) : b[i]);
  CHECK_FALSE(verify_association(a, broken).has_value());
}

}
