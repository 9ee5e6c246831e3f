#pragma once

// Smooth plane cubics as elliptic curves. The group law is the chord-tangent
// law with a flex O as identity: P + Q = O * (P * Q), where P * Q is the third
// intersection of the line PQ with the curve.
//
// A curve is defined over a base field and carries a working field containing
// the flex. Points handed to the group law must live in the working field;
// extend() moves the whole curve to a larger field along a fixed chain of
// embeddings, and base_point() brings base-field points along the same chain.

#include <array>
#include <optional>
#include <vector>

#include "dpi/linsys.hpp"
#include "dpi/maps.hpp"

namespace dpi {

class NotUnique : public Error {
 public:
  using Error::Error;
};

class Singular : public Error {
 public:
  using Error::Error;
};

class OffCurve : public Error {
 public:
  using Error::Error;
};

class AuxiliaryCollision : public Error {
 public:
  using Error::Error;
};

/// Flexes are searched over extensions of degree at most this over the base.
inline constexpr int kFlexDegreeCap = 12;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, tied to the plane model by
/// (X : Y : Z) = A (u x : v y : 1), with the flex at A (0 : 1 : 0).
struct Weierstrass {
  Fe a1, a2, a3, a4, a6;
  Matrix a;
  Fe u, v;

  Fe b2() const;
  Fe b4() const;
  Fe b6() const;
  Fe b8() const;
  /// Affine (x, y) of a curve point; nullopt at the flex.
  std::optional<std::array<Fe, 2>> affine(const ProjPoint& p) const;
  ProjPoint plane(const Fe& x, const Fe& y) const;
  /// The two y with (x, y) on the curve, over the field of x (possibly none).
  std::vector<Fe> ys(const Fe& x) const;
};

class PlaneCubic {
 public:
  /// Checks smoothness, then finds a flex of least degree over the base
  /// field. Throws Singular, or GeneralityFailure if no flex is found within
  /// kFlexDegreeCap.
  explicit PlaneCubic(HomForm f);

  const Field& base_field() const { return base_.field(); }
  const Field& field() const { return f_.field(); }
  /// The defining form over the base field and over the working field.
  const HomForm& base_equation() const { return base_; }
  const HomForm& equation() const { return f_; }
  const ProjPoint& flex() const { return o_; }
  /// Base field to working field.
  const Embedding& from_base() const { return from_base_; }

  /// The same curve over a field containing field().
  PlaneCubic extend(const Field& larger) const;
  /// A point over the base field, in the working field.
  ProjPoint base_point(const ProjPoint& p) const { return p.lift(from_base_); }

  bool contains(const ProjPoint& p) const;
  /// Third intersection of the line PQ (the tangent when P == Q).
  ProjPoint third(const ProjPoint& p, const ProjPoint& q) const;
  ProjPoint add(const ProjPoint& p, const ProjPoint& q) const;
  ProjPoint neg(const ProjPoint& p) const;
  ProjPoint sub(const ProjPoint& p, const ProjPoint& q) const { return add(p, neg(q)); }
  ProjPoint mul(const ProjPoint& p, int64_t k) const;
  /// Sum of a list of points in the group (the flex for an empty list).
  ProjPoint sum(const std::vector<ProjPoint>& pts) const;

  /// A random point over field(): a random vertical line is intersected with
  /// the curve until it has a rational root. Never returns the flex.
  ProjPoint random_point(Rng& rng) const;

  const Weierstrass& weierstrass() const { return w_; }

 private:
  PlaneCubic() = default;
  void check(const ProjPoint& p) const;
  void build_weierstrass();

  HomForm base_, f_;
  Embedding from_base_{Field::rationals(), Field::rationals()};
  ProjPoint o_;
  Weierstrass w_;
};

/// The unique cubic through 9 points. Throws NotUnique if the cubics through
/// them do not form a 1-dimensional space, Singular if that cubic is singular.
PlaneCubic cubic_through(const PointConfig& cfg);

/// No common zero of F and its partials over the algebraic closure, for a
/// plane curve of any degree. Exact: the line z = 0 is checked by univariate
/// gcds, the chart z = 1 by common_zero_affine.
bool is_smooth(const HomForm& f);

/// True iff the polynomials (x in the coefficients, y main) have a common
/// zero in the affine plane over the algebraic closure. Every common zero
/// has its x among the roots of the gcd of the resultants with ps[0]; each
/// such root is then checked by a gcd in y over its residue field.
bool common_zero_affine(const std::vector<BiPoly>& ps);

/// True iff p is a smooth point of the curve whose tangent meets it only at p.
bool is_flex(const HomForm& f, const ProjPoint& p);

/// Class of (degree - 1) O + rep.
struct DivisorClass {
  int degree = 0;
  ProjPoint rep;

  bool operator==(const DivisorClass& o) const { return degree == o.degree && rep == o.rep; }
  bool operator<(const DivisorClass& o) const {
    return degree != o.degree ? degree < o.degree : rep < o.rep;
  }
  nlohmann::json to_json() const;
};

DivisorClass class_of(const PlaneCubic& e, const std::vector<ProjPoint>& effective);
DivisorClass add(const PlaneCubic& e, const DivisorClass& a, const DivisorClass& b);
DivisorClass scale(const PlaneCubic& e, const DivisorClass& a, int k);

/// Every t with 2t = O, over the least extension of e.field() containing them,
/// sorted; the flex itself is included.
std::vector<ProjPoint> two_torsion(const PlaneCubic& e);

/// Every class M with 2M = L, over the least extension of e.field() where
/// they are all defined, sorted. L must have even degree and live on e.field().
std::vector<DivisorClass> sqrt_classes(const PlaneCubic& e, const DivisorClass& l);

struct ClassSections {
  std::vector<HomForm> basis;    // cubics, reduced modulo the curve equation
  std::vector<ProjPoint> aux;    // the auxiliary divisor R
};

/// Plane cubics through an effective R of degree 9 - M.degree with class
/// 9 O - M, modulo F. Restricted to the curve they span H^0(M). M.degree must
/// be 3 or 6 and M.rep must live on e.field(). Retries R on AuxiliaryCollision
/// up to 32 times.
ClassSections sections_of_class(const PlaneCubic& e, const DivisorClass& m, Rng& rng);

/// Image of a curve point under a section basis; throws IndeterminatePoint on
/// the auxiliary divisor.
ProjPoint map_by(const ClassSections& s, const ProjPoint& p);

}  // namespace dpi
