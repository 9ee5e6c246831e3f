#pragma once

// Linear systems of hypersurfaces with fat-point base conditions, and the
// base locus of a pencil of plane quartics.

#include <array>
#include <string>
#include <vector>

#include "dpi/poly.hpp"
#include "dpi/projgeom.hpp"

namespace dpi {

class DegenerateBaseLocus : public Error {
 public:
  using Error::Error;
};

class GeneralityFailure : public Error {
 public:
  using Error::Error;
};

struct BaseCondition {
  ProjPoint point;
  int multiplicity = 1;
};

/// Rows expressing "F vanishes to order >= m at p" on the coefficient vector of
/// a degree-d form in n+1 variables, over p's field: in the chart where p's
/// first nonzero coordinate is 1, every Hasse derivative in the remaining
/// variables of order <= m-1 vanishes. There are C(m-1+n, n) rows.
Matrix condition_rows(int n, int d, const ProjPoint& p, int m);

/// True iff every Hasse derivative of order <= m-1 vanishes at p.
bool vanishes_to_order(const HomForm& f, const ProjPoint& p, int m);

class LinearSystem {
 public:
  LinearSystem(Field f, int n, int d, std::vector<HomForm> basis);
  /// All forms of degree d.
  static LinearSystem complete(const Field& f, int n, int d);

  const Field& field() const { return field_; }
  int ambient() const { return n_; }
  int degree() const { return d_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<HomForm>& basis() const { return basis_; }
  const HomForm& operator[](size_t i) const { return basis_[i]; }

  /// Rows are the basis coefficient vectors.
  Matrix matrix() const;
  bool contains(const HomForm& f) const;
  bool operator==(const LinearSystem& o) const;
  /// Members that additionally satisfy the given conditions.
  LinearSystem subsystem(const std::vector<BaseCondition>& conditions) const;

  nlohmann::json to_json() const;

 private:
  Field field_;
  int n_, d_;
  std::vector<HomForm> basis_;
};

/// Degree-d forms on P^n over `base` with the given base conditions. Points
/// over an extension of `base` contribute their conditions coordinatewise
/// over `base` (restriction of scalars), so the basis stays base-rational.
LinearSystem build_system(int n, int d, const std::vector<BaseCondition>& conditions, const Field& base);

/// Three points over a splitting field, stable as a set under the Frobenius
/// of splitting/base.
struct Triad {
  Field base;
  Field split;
  std::array<ProjPoint, 3> points;
  std::string orbit;  // "1+1+1", "1+2" or "3"

  Embedding embedding() const { return Embedding(base, split); }
  /// Determinant over the splitting field is nonzero.
  bool noncollinear() const { return !collinear(points[0], points[1], points[2]); }
  std::vector<BaseCondition> conditions(int multiplicity) const;
  nlohmann::json to_json() const;
};

/// Orbit pattern of a Galois-stable triple of points of P^2 over `split`.
std::string orbit_pattern(const Field& base, const std::array<ProjPoint, 3>& pts);

struct ResidualBaseLocus {
  Triad residual;
  int resultant_degree = 0;  // 16 for a reduced base locus of two quartics
  int coordinate_attempts = 0;
};

/// The three base points of a pencil of plane quartics beyond 13 known ones.
/// Projects along a random coordinate direction, divides the 13 known roots
/// out of the degree-16 resultant and splits the residual cubic.
/// Throws DegenerateBaseLocus on a common factor, a known point that is not
/// a base point, or a non-reduced residual.
ResidualBaseLocus pencil_residual_points(const LinearSystem& pencil, const PointConfig& known, Rng& rng);

/// Every point of P^2(F_p) where all forms of the system vanish, sorted.
/// Exhaustive scan over p^2 + p + 1 points; prime fields only.
std::vector<ProjPoint> bruteforce_base_points(const LinearSystem& sys);

}  // namespace dpi
