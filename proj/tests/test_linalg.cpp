#include "doctest.h"
#include "dpi/linalg.hpp"
#include "dpi/poly.hpp"

using namespace dpi;

TEST_SUITE("linalg") {

TEST_CASE("rref of identity and zero") {
  const Field f = Field::prime(7);
  const Matrix id = Matrix::identity(f, 3);
  const Rref r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.form == id);
  const Matrix z(f, 2, 3);
  CHECK(rref(z).rank == 0);
  CHECK(rref(z).form == z);
}

TEST_CASE("dependent rows over F_7") {
  const Field f = Field::prime(7);
  CHECK(rank(Matrix::from_ints(f, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel of [1,1,1] over F_5") {
  const Field f = Field::prime(5);
  const Matrix m = Matrix::from_ints(f, {{1, 1, 1}});
  const Matrix k = kernel_basis(m);
  REQUIRE(k.rows() == 2);
  for (size_t i = 0; i < k.rows(); ++i) CHECK((k(i, 0) + k(i, 1) + k(i, 2)).is_zero());
  CHECK(rank(k) == 2);
}

TEST_CASE("full rank square matrix has trivial kernel") {
  const Field f = Field::prime(101);
  CHECK(kernel_basis(Matrix::from_ints(f, {{1, 2}, {3, 4}})).rows() == 0);
}

TEST_CASE("quartics through 13 random points form a pencil") {
  const Field f = Field::prime(65537);
  Rng rng(2024);
  const auto ms = monomials(3, 4);
  Matrix m(f, 0, ms.size());
  for (int i = 0; i < 13; ++i) {
    const Vec p{f.random(rng), f.random(rng), f.random(rng)};
    Vec row;
    for (const auto& e : ms) row.push_back(HomForm::monomial(f.one(), e).evaluate(p));
    m.append_row(row);
  }
  CHECK(kernel_basis(m).rows() == 2);
}

TEST_CASE("solve and det") {
  const Field f = Field::prime(101);
  const Vec b{f.from_int(3), f.from_int(4), f.from_int(5)};
  CHECK(*solve(Matrix::identity(f, 3), b) == b);

  const Fe a = f.from_int(2), bb = f.from_int(9), c = f.from_int(17), d = f.from_int(33);
  const Matrix m = Matrix::from_rows(f, {{a, bb}, {c, d}});
  CHECK(det(m) == a * d - bb * c);

  const Matrix s = Matrix::from_ints(f, {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}});
  CHECK(det(s).is_zero());
  CHECK_FALSE(inverse(s).has_value());
  CHECK_FALSE(solve(Matrix::from_ints(f, {{1, 1}, {1, 1}}), {f.one(), f.zero()}).has_value());
}

TEST_CASE("rational elimination") {
  const Field q = Field::rationals();
  Matrix m(q, 3, 3);
  const int64_t v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = q.from_rational(Rational(v[i][j], j + 1));
  // det scales by 1/(1*2*3) relative to the tridiagonal integer matrix (det 4)
  CHECK(det(m) == q.from_rational(Rational(4, 6)));
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(m * *inv == Matrix::identity(q, 3));
  CHECK(rref(rref(m).form).form == rref(m).form);
}

TEST_CASE("subspace comparison") {
  const Field f = Field::prime(13);
  const Matrix a = Matrix::from_ints(f, {{1, 0, 1}, {0, 1, 1}});
  const Matrix b = Matrix::from_ints(f, {{1, 1, 2}, {1, 12, 0}});
  CHECK(subspace_equal(a, b));
  CHECK_FALSE(subspace_equal(a, Matrix::from_ints(f, {{1, 0, 0}, {0, 1, 0}})));
  CHECK(row_space_contains(a, {f.from_int(2), f.from_int(3), f.from_int(5)}));
}

}
