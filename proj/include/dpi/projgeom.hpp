#pragma once

// Projective points, ordered point configurations and projectivities.

#include <optional>
#include <vector>

#include "dpi/linalg.hpp"
#include "dpi/poly.hpp"

namespace dpi {

class ResampleExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

/// Point of P^n with canonical coordinates: the first nonzero coordinate is 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  /// Throws DegenerateConfiguration if every coordinate is zero.
  explicit ProjPoint(Vec coords);

  const Field& field() const { return x_.at(0).field(); }
  int ambient() const { return static_cast<int>(x_.size()) - 1; }
  const Vec& coords() const { return x_; }
  const Fe& operator[](size_t i) const { return x_[i]; }
  /// Index of the first nonzero coordinate.
  size_t chart() const;

  bool operator==(const ProjPoint& o) const { return x_ == o.x_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const;

  ProjPoint lift(const Embedding& e) const { return ProjPoint(e(x_)); }
  /// Coordinates contracted to e.sub(), if the point is defined there.
  std::optional<ProjPoint> contract(const Embedding& e) const;
  /// Coordinatewise Frobenius.
  ProjPoint frobenius() const;

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  Vec x_;
};

ProjPoint random_point(int n, const Field& f, Rng& rng);

/// Ordered list of points in one P^n over one field.
class PointConfig {
 public:
  PointConfig(Field f, int ambient) : field_(std::move(f)), n_(ambient) {}
  PointConfig(Field f, int ambient, std::vector<ProjPoint> pts);

  const Field& field() const { return field_; }
  int ambient() const { return n_; }
  size_t size() const { return pts_.size(); }
  const std::vector<ProjPoint>& points() const { return pts_; }
  const ProjPoint& operator[](size_t i) const { return pts_[i]; }
  void push_back(ProjPoint p);
  /// Points [from, to).
  PointConfig slice(size_t from, size_t to) const;
  PointConfig lift(const Embedding& e) const;

  /// size() x (n+1) matrix of canonical coordinates.
  Matrix matrix() const;

  bool operator==(const PointConfig& o) const { return n_ == o.n_ && pts_ == o.pts_; }

  nlohmann::json to_json() const;
  static PointConfig from_json(const nlohmann::json& j);

 private:
  Field field_;
  int n_;
  std::vector<ProjPoint> pts_;
};

/// True iff every subset of at most n+1 points is linearly independent.
/// All maximal subsets are checked when there are at most 20000 of them;
/// beyond that a fixed-seed sample of 20000 subsets is checked.
bool in_general_position(const PointConfig& cfg);

/// Samples `count` points of P^n until in_general_position holds; throws
/// ResampleExhausted after 32 attempts.
PointConfig random_config(int n, size_t count, const Field& f, Rng& rng);

/// Determinant of the 3x3 matrix of three points of P^2.
Fe det3(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);
bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

/// An invertible matrix up to scale acting on column vectors.
class Projectivity {
 public:
  /// Throws DegenerateConfiguration if m is singular.
  explicit Projectivity(Matrix m);
  static Projectivity identity(const Field& f, int n) { return Projectivity(Matrix::identity(f, n + 1)); }
  static Projectivity random(const Field& f, int n, Rng& rng);

  const Matrix& matrix() const { return m_; }
  int ambient() const { return static_cast<int>(m_.rows()) - 1; }

  ProjPoint operator()(const ProjPoint& p) const;
  PointConfig operator()(const PointConfig& c) const;
  Projectivity inverse() const;
  /// (this o o)(p) = this(o(p)).
  Projectivity operator*(const Projectivity& o) const { return Projectivity(m_ * o.m_); }
  /// Scaled so the first nonzero entry is 1.
  Matrix normalized() const;
  bool operator==(const Projectivity& o) const { return normalized() == o.normalized(); }

 private:
  Matrix m_;
};

/// The projectivity determined by the first n+2 points of src and dst
/// (each a projective frame), provided it maps every src[i] to dst[i].
std::optional<Projectivity> fit_projectivity(const PointConfig& src, const PointConfig& dst);

}  // namespace dpi
