#pragma once

// Univariate polynomials over a Field (arithmetic, gcd, resultants,
// factorisation and roots over finite fields), field embeddings, and
// homogeneous / bihomogeneous forms.
//
// Monomial order for HomForm coefficient vectors ("grlex-v1"): all monomials
// of one degree d, lexicographically descending in the exponent vector, so in
// three variables the quadrics are x^2, xy, xz, y^2, yz, z^2.

#include <utility>
#include <vector>

#include "dpi/linalg.hpp"

namespace dpi {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Field f) : field_(std::move(f)) {}
  /// Ascending coefficients; trailing zeros are dropped.
  UniPoly(Field f, Vec coeffs);
  static UniPoly constant(const Fe& c);
  /// c * x^k
  static UniPoly monomial(const Fe& c, int k);
  static UniPoly x(const Field& f);

  const Field& field() const { return field_; }
  /// -1 for the zero polynomial.
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Fe coeff(int i) const { return i >= 0 && i <= deg() ? c_[i] : field_.zero(); }
  const Vec& coeffs() const { return c_; }
  Fe lead() const { return is_zero() ? field_.zero() : c_.back(); }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Fe& c) const;
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  Fe eval(const Fe& x) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  /// f(inner(x)).
  UniPoly compose(const UniPoly& inner) const;

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  void trim();
  Field field_ = Field::rationals();
  Vec c_;
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
UniPoly operator/(const UniPoly& a, const UniPoly& b);  // exact or truncating quotient
UniPoly operator%(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly powmod(const UniPoly& base, const BigInt& e, const UniPoly& mod);
/// Lagrange interpolation through (xs[i], ys[i]); xs distinct.
UniPoly interpolate(const Vec& xs, const Vec& ys);
/// Sylvester determinant of f (degree m rows first) and g.
Fe resultant(const UniPoly& f, const UniPoly& g);

/// Irreducible factors with multiplicity over a finite field; factors are
/// monic, sorted by (degree, coefficients). The leading coefficient is dropped.
std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f, Rng& rng);
std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f);
bool is_irreducible(const UniPoly& f);
/// Distinct roots lying in f's own field, sorted.
std::vector<Fe> roots(const UniPoly& f);
std::vector<Fe> roots(const UniPoly& f, Rng& rng);
/// Square root in a finite field, if one exists.
std::optional<Fe> sqrt(const Fe& a);

/// A polynomial in y whose coefficients are polynomials in x: entry j is the
/// coefficient of y^j.
using BiPoly = std::vector<UniPoly>;

int deg_y(const BiPoly& f);
int deg_x(const BiPoly& f);
/// Res_y(f, g) as a polynomial in x, using the Sylvester determinant with f's
/// rows first, so resultant_y(g, f) = (-1)^{deg f * deg g} resultant_y(f, g).
UniPoly resultant_y(const BiPoly& f, const BiPoly& g);
/// f(x0, y) as a univariate polynomial in y.
UniPoly specialize_x(const BiPoly& f, const Fe& x0);

/// The field homomorphism sub -> sup sending t to the smallest root of sub's
/// modulus in sup. Both fields finite of one characteristic with
/// degree(sub) dividing degree(sup).
class Embedding {
 public:
  Embedding(Field sub, Field sup);
  /// The embedding sending the generator of sub to theta, a root of its modulus.
  Embedding(Field sub, Field sup, Fe theta);
  static Embedding identity(const Field& f) { return Embedding(f, f); }
  /// outer o this.
  Embedding then(const Embedding& outer) const;

  const Field& sub() const { return sub_; }
  const Field& sup() const { return sup_; }
  int relative_degree() const { return m_; }

  Fe operator()(const Fe& x) const;
  Vec operator()(const Vec& v) const;
  /// Coordinates of y over sub in the basis 1, t, ..., t^{m-1} of sup.
  Vec coords(const Fe& y) const;
  /// y as an element of sub, or nullopt if y is not in the image.
  std::optional<Fe> contract(const Fe& y) const;

 private:
  Field sub_, sup_;
  int m_ = 1;
  Fe theta_;
  Matrix basis_inv_;  // F_p coordinates of sup -> coordinates in theta^j t^i

  void init();
};

/// Field of degree lcm(deg a, deg b) over F_p, or an existing one of them
/// when it already has that degree.
Field common_extension(const Field& a, const Field& b, Rng& rng);

using Exponents = std::vector<int>;

size_t binomial(int n, int k);
/// All exponent vectors of total degree d in nvars variables, in grlex-v1 order.
std::vector<Exponents> monomials(int nvars, int d);
/// Index of e in monomials(e.size(), |e|).
size_t monomial_rank(const Exponents& e);

class HomForm {
 public:
  HomForm() = default;
  HomForm(Field f, int nvars, int degree);  // zero form
  HomForm(Field f, int nvars, int degree, Vec coeffs);
  static HomForm monomial(const Fe& c, const Exponents& e);
  static HomForm variable(const Field& f, int nvars, int i);
  /// Linear form sum l[i] x_i.
  static HomForm linear(const Vec& l);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Vec& coeffs() const { return c_; }
  Fe coeff(const Exponents& e) const { return c_[monomial_rank(e)]; }
  void set_coeff(const Exponents& e, const Fe& v) { c_[monomial_rank(e)] = v; }
  bool is_zero() const;

  HomForm operator+(const HomForm& o) const;
  HomForm operator-(const HomForm& o) const;
  HomForm operator-() const;
  HomForm operator*(const HomForm& o) const;
  HomForm operator*(const Fe& c) const;
  bool operator==(const HomForm& o) const;
  bool operator!=(const HomForm& o) const { return !(*this == o); }
  HomForm pow(int k) const;

  Fe evaluate(const Vec& pt) const;
  HomForm partial(int var) const;
  /// Hasse derivative D^alpha: sum_beta c_beta prod C(beta_i, alpha_i) x^(beta - alpha).
  HomForm hasse(const Exponents& alpha) const;
  /// F(maps[0], ..., maps[n]) for maps of a common degree on a common space.
  HomForm compose(const std::vector<HomForm>& maps) const;
  /// Substitute x = A y, i.e. F(A y) with A square acting on column vectors.
  HomForm transform(const Matrix& a) const;
  HomForm lift(const Embedding& e) const;
  /// Exact division by a nonzero form; nullopt if g does not divide.
  std::optional<HomForm> divide(const HomForm& g) const;

  nlohmann::json to_json() const;
  static HomForm from_json(const Field& f, const nlohmann::json& j);

 private:
  Field field_ = Field::rationals();
  int nvars_ = 0, degree_ = 0;
  Vec c_;
};

/// A ternary form with x as the polynomial variable of the coefficients, y
/// as the main variable and z set to 1.
BiPoly dehomogenize(const HomForm& f);

/// A bihomogeneous form of bidegree (a, b) on P^1 x P^1 (coordinates
/// (s:t), (u:v)), or of bidegree (a, b) on P^1 x P^2 when the second factor
/// has three variables. Stored as a ternary-indexed table: coefficient of
/// s^(a-i) t^i times the i-th monomial of degree b in the second factor.
class BiForm {
 public:
  BiForm() = default;
  BiForm(Field f, int a, int b, int second_vars = 2);

  const Field& field() const { return field_; }
  int a() const { return a_; }
  int b() const { return b_; }
  int second_vars() const { return nv_; }
  size_t size() const { return c_.size(); }
  Fe& at(int i, size_t j) { return c_[i * nm_ + j]; }
  const Fe& at(int i, size_t j) const { return c_[i * nm_ + j]; }
  bool is_zero() const;

  Fe evaluate(const Vec& first, const Vec& second) const;
  BiForm operator*(const BiForm& o) const;
  BiForm operator*(const Fe& c) const;
  BiForm operator+(const BiForm& o) const;
  BiForm operator-(const BiForm& o) const;
  bool operator==(const BiForm& o) const { return a_ == o.a_ && b_ == o.b_ && nv_ == o.nv_ && c_ == o.c_; }
  /// Derivative in one of the variables; var in [0, 2 + second_vars).
  BiForm partial(int var) const;
  /// Exact division by a form of bidegree (k, 0); nullopt if g does not
  /// divide. Throws std::invalid_argument if g involves the second factor.
  std::optional<BiForm> divide(const BiForm& g) const;

 private:
  Field field_ = Field::rationals();
  int a_ = 0, b_ = 0, nv_ = 2;
  size_t nm_ = 1;
  Vec c_;
};

}  // namespace dpi
