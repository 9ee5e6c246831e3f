#include "dpi/fields.hpp"

#include <sstream>

#include "zp.hpp"

namespace dpi {

namespace detail {
struct FieldImpl {
  FieldKind kind;
  uint64_t p = 0;
  int k = 1;
  std::vector<uint64_t> modulus;  // ascending, monic, size k+1 (extension only)
};
}  // namespace detail

using detail::FieldImpl;

uint64_t uniform_below(Rng& rng, uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below(0)");
  const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

uint64_t sub_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin bases for 64-bit inputs
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = zp::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = zp::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Field

Field Field::prime(uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  auto impl = std::make_shared<FieldImpl>();
  impl->kind = FieldKind::prime;
  impl->p = p;
  return Field(std::move(impl));
}

Field Field::extension(uint64_t p, std::vector<uint64_t> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  for (auto& c : modulus) c %= p;
  zp::trim(modulus);
  if (modulus.size() < 3 || modulus.back() != 1)
    throw std::invalid_argument("extension modulus must be monic of degree >= 2");
  if (!zp::irreducible(modulus, p)) throw std::invalid_argument("extension modulus is reducible");
  auto impl = std::make_shared<FieldImpl>();
  impl->kind = FieldKind::extension;
  impl->p = p;
  impl->k = static_cast<int>(modulus.size()) - 1;
  impl->modulus = std::move(modulus);
  return Field(std::move(impl));
}

Field Field::rationals() {
  auto impl = std::make_shared<FieldImpl>();
  impl->kind = FieldKind::rational;
  return Field(std::move(impl));
}

FieldKind Field::kind() const { return impl_->kind; }
uint64_t Field::characteristic() const { return impl_->p; }
int Field::degree() const { return impl_->k; }
const std::vector<uint64_t>& Field::modulus() const { return impl_->modulus; }

std::optional<BigInt> Field::order() const {
  if (kind() == FieldKind::rational) return std::nullopt;
  return boost::multiprecision::pow(BigInt(impl_->p), static_cast<unsigned>(impl_->k));
}

bool Field::operator==(const Field& o) const {
  if (impl_ == o.impl_) return true;
  if (!impl_ || !o.impl_) return false;
  return impl_->kind == o.impl_->kind && impl_->p == o.impl_->p && impl_->modulus == o.impl_->modulus;
}

Fe Field::zero() const {
  Fe r;
  r.field_ = *this;
  switch (kind()) {
    case FieldKind::prime:
      r.v_ = uint64_t{0};
      break;
    case FieldKind::extension:
      r.v_ = ExtCoeffs(impl_->k, 0);
      break;
    case FieldKind::rational:
      r.v_ = Rational(0);
      break;
  }
  return r;
}

Fe Field::one() const { return from_int(1); }

Fe Field::from_int(int64_t v) const {
  Fe r = zero();
  if (kind() == FieldKind::rational) {
    r.v_ = Rational(v);
    return r;
  }
  const uint64_t p = impl_->p;
  const uint64_t mag = v < 0 ? 0 - static_cast<uint64_t>(v) : static_cast<uint64_t>(v);
  uint64_t m = mag % p;
  if (v < 0) m = zp::neg(m, p);
  if (kind() == FieldKind::prime) {
    r.v_ = m;
  } else {
    std::get<ExtCoeffs>(r.v_)[0] = m;
  }
  return r;
}

Fe Field::from_rational(const Rational& q) const {
  if (kind() == FieldKind::rational) {
    Fe r = zero();
    r.v_ = q;
    return r;
  }
  using boost::multiprecision::mpz_int;
  const mpz_int p(impl_->p);
  mpz_int n = boost::multiprecision::numerator(q) % p;
  if (n < 0) n += p;
  mpz_int d = boost::multiprecision::denominator(q) % p;
  if (d == 0) throw DivisionByZero();
  std::vector<uint64_t> cn{n.convert_to<uint64_t>()}, cd{d.convert_to<uint64_t>()};
  return from_coeffs(cn) / from_coeffs(cd);
}

Fe Field::from_coeffs(std::span<const uint64_t> coeffs) const {
  Fe r = zero();
  switch (kind()) {
    case FieldKind::prime:
      r.v_ = coeffs.empty() ? uint64_t{0} : coeffs[0] % impl_->p;
      break;
    case FieldKind::extension: {
      auto& c = std::get<ExtCoeffs>(r.v_);
      if (static_cast<int>(coeffs.size()) > impl_->k) throw std::invalid_argument("too many coefficients");
      for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i] % impl_->p;
      break;
    }
    case FieldKind::rational:
      r.v_ = Rational(coeffs.empty() ? 0 : static_cast<unsigned long long>(coeffs[0]));
      break;
  }
  return r;
}

Fe Field::gen() const {
  if (kind() != FieldKind::extension) return one();
  Fe r = zero();
  std::get<ExtCoeffs>(r.v_)[1] = 1;
  return r;
}

Fe Field::random(Rng& rng) const {
  Fe r = zero();
  switch (kind()) {
    case FieldKind::prime:
      r.v_ = uniform_below(rng, impl_->p);
      break;
    case FieldKind::extension:
      for (auto& c : std::get<ExtCoeffs>(r.v_)) c = uniform_below(rng, impl_->p);
      break;
    case FieldKind::rational: {
      // small-height rationals keep exact arithmetic cheap
      const int64_t num = static_cast<int64_t>(uniform_below(rng, 2001)) - 1000;
      const int64_t den = static_cast<int64_t>(uniform_below(rng, 100)) + 1;
      r.v_ = Rational(num, den);
      break;
    }
  }
  return r;
}

Fe Field::from_index(uint64_t index) const {
  if (kind() == FieldKind::rational) return from_int(static_cast<int64_t>(index));
  std::vector<uint64_t> digits(impl_->k, 0);
  for (int i = 0; i < impl_->k && index; ++i) {
    digits[i] = index % impl_->p;
    index /= impl_->p;
  }
  return from_coeffs(digits);
}

Field Field::prime_subfield() const {
  if (kind() == FieldKind::extension) return Field::prime(impl_->p);
  return *this;
}

std::string Field::describe() const {
  switch (kind()) {
    case FieldKind::prime:
      return "F_" + std::to_string(impl_->p);
    case FieldKind::extension:
      return "F_" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k);
    case FieldKind::rational:
      return "Q";
  }
  return "?";
}

nlohmann::json Field::to_json() const {
  nlohmann::json j;
  j["char"] = kind() == FieldKind::rational ? 0 : impl_->p;
  j["deg"] = impl_->k;
  j["modulus"] = kind() == FieldKind::extension ? impl_->modulus : std::vector<uint64_t>{};
  return j;
}

Field Field::from_json(const nlohmann::json& j) {
  const uint64_t p = j.at("char").get<uint64_t>();
  if (p == 0) return rationals();
  const int k = j.value("deg", 1);
  if (k == 1) return prime(p);
  auto modulus = j.at("modulus").get<std::vector<uint64_t>>();
  if (static_cast<int>(modulus.size()) != k + 1) throw std::invalid_argument("modulus length does not match deg");
  return extension(p, std::move(modulus));
}

void to_json(nlohmann::json& j, const Field& f) { j = f.to_json(); }

// ---------------------------------------------------------------- Fe

void Fe::check_same(const Fe& o) const {
  if (field_.impl_ != o.field_.impl_ && !(field_ == o.field_)) throw FieldMismatch();
}

bool Fe::is_zero() const {
  if (!field_.impl_) return true;
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_) == 0;
    case 1:
      for (auto c : std::get<1>(v_))
        if (c) return false;
      return true;
    default:
      return std::get<2>(v_) == 0;
  }
}

bool Fe::is_one() const { return field_.impl_ && *this == field_.one(); }

Fe Fe::operator+(const Fe& o) const {
  check_same(o);
  Fe r = *this;
  const uint64_t p = field_.impl_->p;
  switch (v_.index()) {
    case 0:
      r.v_ = zp::add(std::get<0>(v_), std::get<0>(o.v_), p);
      break;
    case 1: {
      auto& c = std::get<1>(r.v_);
      const auto& d = std::get<1>(o.v_);
      for (size_t i = 0; i < c.size(); ++i) c[i] = zp::add(c[i], d[i], p);
      break;
    }
    default:
      std::get<2>(r.v_) += std::get<2>(o.v_);
  }
  return r;
}

Fe Fe::operator-(const Fe& o) const {
  check_same(o);
  Fe r = *this;
  const uint64_t p = field_.impl_->p;
  switch (v_.index()) {
    case 0:
      r.v_ = zp::sub(std::get<0>(v_), std::get<0>(o.v_), p);
      break;
    case 1: {
      auto& c = std::get<1>(r.v_);
      const auto& d = std::get<1>(o.v_);
      for (size_t i = 0; i < c.size(); ++i) c[i] = zp::sub(c[i], d[i], p);
      break;
    }
    default:
      std::get<2>(r.v_) -= std::get<2>(o.v_);
  }
  return r;
}

Fe Fe::operator-() const { return field_.zero() - *this; }

Fe Fe::operator*(const Fe& o) const {
  check_same(o);
  const FieldImpl& f = *field_.impl_;
  Fe r;
  r.field_ = field_;
  switch (v_.index()) {
    case 0:
      r.v_ = zp::mul(std::get<0>(v_), std::get<0>(o.v_), f.p);
      break;
    case 1: {
      const auto& a = std::get<1>(v_);
      const auto& b = std::get<1>(o.v_);
      const int k = f.k;
      const uint64_t p = f.p;
      std::vector<zp::u128> acc(2 * k - 1, 0);
      // accumulate with periodic reduction to stay inside 128 bits
      const bool small = p < (uint64_t(1) << 32);
      for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j) {
          if (small) {
            acc[i + j] += static_cast<zp::u128>(a[i]) * b[j];
          } else {
            acc[i + j] = (acc[i + j] + static_cast<zp::u128>(zp::mul(a[i], b[j], p))) % p;
          }
        }
      }
      std::vector<uint64_t> prod(2 * k - 1);
      for (int i = 0; i < 2 * k - 1; ++i) prod[i] = static_cast<uint64_t>(acc[i] % p);
      for (int i = 2 * k - 2; i >= k; --i) {
        const uint64_t c = prod[i];
        if (c == 0) continue;
        for (int j = 0; j < k; ++j) prod[i - k + j] = zp::sub(prod[i - k + j], zp::mul(c, f.modulus[j], p), p);
        prod[i] = 0;
      }
      r.v_ = ExtCoeffs(prod.begin(), prod.begin() + k);
      break;
    }
    default:
      r.v_ = std::get<2>(v_) * std::get<2>(o.v_);
  }
  return r;
}

Fe Fe::inv() const {
  if (is_zero()) throw DivisionByZero();
  const FieldImpl& f = *field_.impl_;
  Fe r;
  r.field_ = field_;
  switch (v_.index()) {
    case 0:
      r.v_ = zp::inv(std::get<0>(v_), f.p);
      break;
    case 1: {
      zp::Poly a(std::get<1>(v_).begin(), std::get<1>(v_).end());
      zp::trim(a);
      zp::Poly s = zp::invmod(a, f.modulus, f.p);
      ExtCoeffs c(f.k, 0);
      for (size_t i = 0; i < s.size(); ++i) c[i] = s[i];
      r.v_ = std::move(c);
      break;
    }
    default:
      r.v_ = Rational(1) / std::get<2>(v_);
  }
  return r;
}

Fe Fe::operator/(const Fe& o) const {
  check_same(o);
  return *this * o.inv();
}

bool Fe::operator==(const Fe& o) const {
  if (!field_.impl_ || !o.field_.impl_) return is_zero() && o.is_zero();
  check_same(o);
  return v_ == o.v_;
}

bool Fe::operator<(const Fe& o) const {
  check_same(o);
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_) < std::get<0>(o.v_);
    case 1: {
      const auto& a = std::get<1>(v_);
      const auto& b = std::get<1>(o.v_);
      // compare from the highest coordinate down so the prime subfield sorts first
      for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    }
    default:
      return std::get<2>(v_) < std::get<2>(o.v_);
  }
}

Fe Fe::pow(uint64_t e) const {
  Fe r = field_.one();
  Fe b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Fe Fe::pow(const BigInt& e) const {
  if (e < 0) return inv().pow(BigInt(-e));
  Fe r = field_.one();
  const size_t bits = e == 0 ? 0 : boost::multiprecision::msb(e) + 1;
  for (size_t i = bits; i-- > 0;) {
    r *= r;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r *= *this;
  }
  return r;
}

Fe Fe::frobenius() const {
  if (v_.index() != 1) return *this;
  return pow(field_.impl_->p);
}

std::vector<uint64_t> Fe::coeffs() const {
  switch (v_.index()) {
    case 0:
      return {std::get<0>(v_)};
    case 1:
      return {std::get<1>(v_).begin(), std::get<1>(v_).end()};
    default:
      throw std::logic_error("rational elements have no power-basis coordinates");
  }
}

const Rational& Fe::rational() const { return std::get<2>(v_); }

uint64_t Fe::residue() const {
  if (v_.index() == 0) return std::get<0>(v_);
  if (v_.index() == 1) {
    if (!in_prime_subfield()) throw std::logic_error("element is not in the prime subfield");
    return std::get<1>(v_)[0];
  }
  throw std::logic_error("rational element has no residue");
}

bool Fe::in_prime_subfield() const {
  if (v_.index() != 1) return true;
  const auto& c = std::get<1>(v_);
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i]) return false;
  return true;
}

std::string Fe::to_string() const {
  std::ostringstream os;
  switch (v_.index()) {
    case 0:
      os << std::get<0>(v_);
      break;
    case 1: {
      const auto& c = std::get<1>(v_);
      os << "[";
      for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << "]";
      break;
    }
    default:
      os << std::get<2>(v_);
  }
  return os.str();
}

nlohmann::json Fe::to_json() const {
  switch (v_.index()) {
    case 0:
      return std::get<0>(v_);
    case 1:
      return coeffs();
    default:
      return std::get<2>(v_).str();
  }
}

Fe Fe::from_json(const Field& f, const nlohmann::json& j) {
  switch (f.kind()) {
    case FieldKind::prime: {
      const uint64_t v = j.get<uint64_t>();
      std::vector<uint64_t> c{v};
      return f.from_coeffs(c);
    }
    case FieldKind::extension: {
      const auto c = j.get<std::vector<uint64_t>>();
      return f.from_coeffs(c);
    }
    case FieldKind::rational:
      if (j.is_number_integer()) return f.from_int(j.get<int64_t>());
      return f.from_rational(Rational(j.get<std::string>()));
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- extensions

Field build_extension(uint64_t p, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("extension degree must be positive");
  if (k == 1) return Field::prime(p);
  constexpr int kRetryCap = 100000;
  for (int attempt = 0; attempt < kRetryCap; ++attempt) {
    std::vector<uint64_t> m(k + 1);
    for (int i = 0; i < k; ++i) m[i] = uniform_below(rng, p);
    m[k] = 1;
    if (m[0] == 0) continue;
    if (zp::irreducible(m, p)) return Field::extension(p, std::move(m));
  }
  throw Error("build_extension: no irreducible modulus found within the retry cap");
}

Field standard_extension(uint64_t p, int k) {
  Rng rng(sub_seed(0x5eed'0000'0000'e47dULL ^ p, static_cast<uint64_t>(k)));
  return build_extension(p, k, rng);
}

}  // namespace dpi
