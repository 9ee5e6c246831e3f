#pragma once

// Exact scalar arithmetic: prime fields F_p, extensions F_p[t]/(m(t)), and Q.
//
// A Field is a cheap shared handle to immutable field data; an Fe (field
// element) carries its field and a canonical representation, so equality is
// representation equality. Extension elements are stored in the power basis
// 1, t, ..., t^{k-1} of the defining modulus.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "json.hpp"

namespace dpi {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::mpq_rational;
using Rng = std::mt19937_64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
};

/// Uniform integer in [0, n) drawn by rejection from the raw 64-bit stream.
/// Unlike std::uniform_int_distribution the result is identical across
/// standard library implementations.
uint64_t uniform_below(Rng& rng, uint64_t n);

/// Derives an independent child seed (splitmix64 finaliser).
uint64_t sub_seed(uint64_t seed, uint64_t stream);

bool is_prime(uint64_t n);

enum class FieldKind { prime, extension, rational };

class Fe;

namespace detail {
struct FieldImpl;
}

class Field {
 public:
  static Field prime(uint64_t p);
  /// F_p[t]/(modulus); `modulus` is ascending and monic of degree >= 2.
  /// Throws std::invalid_argument unless the modulus is irreducible.
  static Field extension(uint64_t p, std::vector<uint64_t> modulus);
  static Field rationals();

  FieldKind kind() const;
  uint64_t characteristic() const;
  /// Degree over the prime field (1 for prime fields and Q).
  int degree() const;
  /// Ascending monic modulus; empty unless kind() == extension.
  const std::vector<uint64_t>& modulus() const;
  bool is_finite() const { return kind() != FieldKind::rational; }
  /// Number of elements; nullopt for Q.
  std::optional<BigInt> order() const;

  Fe zero() const;
  Fe one() const;
  Fe from_int(int64_t v) const;
  Fe from_rational(const Rational& q) const;
  /// Power-basis coordinates (each reduced mod p); shorter inputs are padded.
  Fe from_coeffs(std::span<const uint64_t> coeffs) const;
  /// The class of t; 1 for prime fields and Q.
  Fe gen() const;
  Fe random(Rng& rng) const;
  /// Enumerates a finite field: index in [0, q) maps to base-p digits as
  /// power-basis coordinates. For Q, returns the integer `index`.
  Fe from_index(uint64_t index) const;

  Field prime_subfield() const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string describe() const;
  nlohmann::json to_json() const;
  static Field from_json(const nlohmann::json& j);

  const detail::FieldImpl* impl() const { return impl_.get(); }

 private:
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::FieldImpl> impl_;
  friend class Fe;
};

using ExtCoeffs = boost::container::small_vector<uint64_t, 4>;

class Fe {
 public:
  Fe() = default;  // detached zero; only useful as a placeholder

  const Field& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Fe operator+(const Fe& o) const;
  Fe operator-(const Fe& o) const;
  Fe operator*(const Fe& o) const;
  Fe operator/(const Fe& o) const;
  Fe operator-() const;
  Fe& operator+=(const Fe& o) { return *this = *this + o; }
  Fe& operator-=(const Fe& o) { return *this = *this - o; }
  Fe& operator*=(const Fe& o) { return *this = *this * o; }
  Fe& operator/=(const Fe& o) { return *this = *this / o; }

  bool operator==(const Fe& o) const;
  bool operator!=(const Fe& o) const { return !(*this == o); }
  /// Total order on representations (for canonical sorting only).
  bool operator<(const Fe& o) const;

  Fe inv() const;
  Fe pow(uint64_t e) const;
  Fe pow(const BigInt& e) const;
  /// x -> x^p; the identity on the prime subfield and on Q.
  Fe frobenius() const;
  Fe scale_int(int64_t k) const { return *this * field_.from_int(k); }

  /// Power-basis coordinates over the prime field (length degree()).
  /// For Q throws std::logic_error.
  std::vector<uint64_t> coeffs() const;
  const Rational& rational() const;
  /// Value of a prime-field element.
  uint64_t residue() const;
  /// True when the element lies in the prime subfield.
  bool in_prime_subfield() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static Fe from_json(const Field& f, const nlohmann::json& j);

 private:
  friend class Field;
  Field field_{nullptr};
  std::variant<uint64_t, ExtCoeffs, Rational> v_;
  void check_same(const Fe& o) const;
};

/// Builds F_{p^k} with a seeded random monic irreducible modulus of degree k
/// (the prime field itself when k == 1). Throws dpi::Error after the retry cap.
Field build_extension(uint64_t p, int k, Rng& rng);

/// A fixed choice of F_{p^k}: the same modulus on every call, so fields built
/// by independent computations compare equal.
Field standard_extension(uint64_t p, int k);

void to_json(nlohmann::json& j, const Field& f);

}  // namespace dpi
