#pragma once

// Rational maps between projective spaces: Veronese maps, Cremona
// transformations centred at a triad, and product parametrisations.

#include <vector>

#include "dpi/linsys.hpp"

namespace dpi {

class IndeterminatePoint : public Error {
 public:
  using Error::Error;
};

class CollinearTriad : public Error {
 public:
  CollinearTriad() : Error("triad is collinear") {}
};

/// P^n --> P^m given by m+1 forms of a common degree.
class RationalMap {
 public:
  RationalMap(Field f, int n, std::vector<HomForm> forms);

  const Field& field() const { return field_; }
  int source() const { return n_; }
  int target() const { return static_cast<int>(forms_.size()) - 1; }
  int degree() const { return forms_.front().degree(); }
  const std::vector<HomForm>& forms() const { return forms_; }

  /// Points over an extension of field() are accepted; the forms are lifted.
  /// Throws IndeterminatePoint when every form vanishes at p.
  ProjPoint operator()(const ProjPoint& p) const;
  PointConfig operator()(const PointConfig& c) const;
  /// (this o inner)(p) = this(inner(p)).
  RationalMap compose(const RationalMap& inner) const;
  RationalMap lift(const Embedding& e) const;

 private:
  Field field_;
  int n_;
  std::vector<HomForm> forms_;
};

/// All degree-d monomials on P^n in grlex-v1 order.
RationalMap veronese(const Field& f, int n, int d);

/// The map given by a basis of a linear system.
RationalMap map_of(const LinearSystem& sys);

/// Conics through a noncollinear triad (a base-rational basis of dimension 3).
RationalMap cremona_from_triad(const Triad& t);

/// Images under alpha of the three lines joining pairs of t: each line is
/// contracted, so alpha at the sum of the two canonical representatives gives
/// the exceptional point. The result is Galois-stable over t.base.
Triad exceptional_triad(const Triad& t, const RationalMap& alpha);

/// Checks that the Cremona at the exceptional triad composed with alpha is a
/// projectivity, on `samples` random points off the contracted lines.
bool cremona_involution_check(const Triad& t, int samples, Rng& rng);

/// True iff W equals the span of the cubic monomials in a basis of the
/// conics through t.
bool symcube_certificate(const LinearSystem& w, const Triad& t);

/// Segre P^1 x P^2 -> P^5: (s:t) x (x:y:z) -> (sx:sy:sz:tx:ty:tz).
std::vector<BiForm> segre_p1p2(const Field& f);
/// P^1 x P^1 -> P^8 by all forms of bidegree (2,2).
std::vector<BiForm> p1p1_22(const Field& f);
/// Image of a point of a product under a list of biforms.
ProjPoint apply_biforms(const std::vector<BiForm>& forms, const Vec& first, const Vec& second);

}  // namespace dpi
