#include <algorithm>
#include <numeric>
#include <sstream>

#include "dpi/poly.hpp"

namespace dpi {

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(Field f, Vec coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Fe& c) { return UniPoly(c.field(), Vec{c}); }

UniPoly UniPoly::monomial(const Fe& c, int k) {
  Vec v(k + 1, c.field().zero());
  v[k] = c;
  return UniPoly(c.field(), std::move(v));
}

UniPoly UniPoly::x(const Field& f) { return monomial(f.one(), 1); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  Vec r(std::max(c_.size(), o.c_.size()), field_.zero());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  Vec r(std::max(c_.size(), o.c_.size()), field_.zero());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-() const { return UniPoly(field_) - *this; }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  Vec r(c_.size() + o.c_.size() - 1, field_.zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const Fe& c) const {
  Vec r = c_;
  for (auto& x : r) x *= c;
  return UniPoly(field_, std::move(r));
}

Fe UniPoly::eval(const Fe& x) const {
  Fe r = field_.zero();
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(field_);
  Vec r(c_.size() - 1, field_.zero());
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i].scale_int(static_cast<int64_t>(i));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly r(field_);
  for (size_t i = c_.size(); i-- > 0;) r = r * inner + constant(c_[i]);
  return r;
}

nlohmann::json UniPoly::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : c_) j.push_back(c.to_json());
  return j;
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].to_string();
    if (i > 0) os << "*x^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DivisionByZero();
  const Field& f = a.field();
  if (a.deg() < b.deg()) return {UniPoly(f), a};
  Vec r = a.coeffs();
  const int db = b.deg();
  Vec q(a.deg() - db + 1, f.zero());
  const Fe li = b.lead().inv();
  const Vec& bc = b.coeffs();
  for (int i = a.deg(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    const Fe c = r[i] * li;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * bc[j];
  }
  r.resize(db > 0 ? db : 0, f.zero());
  return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly powmod(const UniPoly& base, const BigInt& e, const UniPoly& mod) {
  UniPoly r = UniPoly::constant(base.field().one()) % mod;
  UniPoly b = base % mod;
  if (e == 0) return r;
  const size_t bits = boost::multiprecision::msb(e) + 1;
  for (size_t i = bits; i-- > 0;) {
    r = (r * r) % mod;
    if (boost::multiprecision::bit_test(e, static_cast<unsigned>(i))) r = (r * b) % mod;
  }
  return r;
}

UniPoly interpolate(const Vec& xs, const Vec& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sample lists");
  const Field& f = xs[0].field();
  // Newton divided differences
  const size_t n = xs.size();
  Vec c = ys;
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - k]);
  UniPoly r = UniPoly::constant(c[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    r = r * UniPoly(f, Vec{-xs[i], f.one()}) + UniPoly::constant(c[i]);
  }
  return r;
}

namespace {

Matrix sylvester(const UniPoly& f, int m, const UniPoly& g, int n) {
  const Field& fld = f.field();
  Matrix s(fld, m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(i, i + k) = f.coeff(m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s(n + i, i + k) = g.coeff(n - k);
  return s;
}

}  // namespace

Fe resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() || g.is_zero()) return f.field().zero();
  return det(sylvester(f, f.deg(), g, g.deg()));
}

// ---------------------------------------------------------------- factoring

namespace {

BigInt field_order(const Field& f) {
  auto q = f.order();
  if (!q) throw std::invalid_argument("factorisation requires a finite field");
  return *q;
}

// x^(1/p) for a finite field element: x^(q/p).
Fe pth_root(const Fe& x) {
  const BigInt q = field_order(x.field());
  return x.pow(BigInt(q / x.field().characteristic()));
}

// f' == 0, so f(x) = g(x^p); returns g^(1/p) coefficientwise.
UniPoly pth_root(const UniPoly& f) {
  const uint64_t p = f.field().characteristic();
  Vec r;
  for (int i = 0; i <= f.deg(); i += static_cast<int>(p)) r.push_back(pth_root(f.coeff(i)));
  return UniPoly(f.field(), std::move(r));
}

void squarefree(const UniPoly& f, int mult, std::vector<std::pair<UniPoly, int>>& out) {
  if (f.deg() < 1) return;
  const uint64_t p = f.field().characteristic();
  const UniPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  UniPoly c = gcd(f, d);
  UniPoly w = f / c;
  int i = 1;
  while (w.deg() > 0) {
    UniPoly y = gcd(w, c);
    UniPoly z = w / y;
    if (z.deg() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.deg() > 0) squarefree(pth_root(c), mult * static_cast<int>(p), out);
}

// Returns (g, d) where g is the product of all degree-d irreducible factors.
std::vector<std::pair<UniPoly, int>> distinct_degree(UniPoly f) {
  std::vector<std::pair<UniPoly, int>> out;
  const Field& fld = f.field();
  const BigInt q = field_order(fld);
  const UniPoly x = UniPoly::x(fld);
  UniPoly h = x % f;
  int d = 0;
  while (f.deg() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, q, f);
    UniPoly g = gcd(f, h - x);
    if (g.deg() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.deg() > 0) out.emplace_back(f.monic(), f.deg());
  return out;
}

UniPoly random_poly(const Field& f, int below_deg, Rng& rng) {
  Vec c(below_deg);
  for (auto& x : c) x = f.random(rng);
  return UniPoly(f, std::move(c));
}

void equal_degree(const UniPoly& f, int d, Rng& rng, std::vector<UniPoly>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const Field& fld = f.field();
  const BigInt q = field_order(fld);
  const uint64_t p = fld.characteristic();
  for (;;) {
    UniPoly a = random_poly(fld, f.deg(), rng);
    if (a.deg() < 1) continue;
    UniPoly b;
    if (p == 2) {
      // absolute trace to F_2 of a in F_q[x]/(f) restricted to a degree-d factor
      const int kd = fld.degree() * d;
      UniPoly t = a % f;
      UniPoly s = t;
      for (int i = 1; i < kd; ++i) {
        t = (t * t) % f;
        s = s + t;
      }
      b = s;
    } else {
      const BigInt e = (boost::multiprecision::pow(q, static_cast<unsigned>(d)) - 1) / 2;
      b = powmod(a, e, f) - UniPoly::constant(fld.one());
    }
    UniPoly g = gcd(f, b);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

bool poly_less(const UniPoly& a, const UniPoly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

constexpr uint64_t kDefaultFactorSeed = 0x5eed'f00d'cafe'0001ULL;

}  // namespace

std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f, Rng& rng) {
  if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  field_order(f.field());
  std::vector<std::pair<UniPoly, int>> sq;
  squarefree(f.monic(), 1, sq);
  std::vector<std::pair<UniPoly, int>> out;
  for (const auto& [g, m] : sq) {
    for (const auto& [h, d] : distinct_degree(g)) {
      std::vector<UniPoly> parts;
      equal_degree(h, d, rng, parts);
      for (auto& part : parts) out.emplace_back(std::move(part), m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<std::pair<UniPoly, int>> factor(const UniPoly& f) {
  Rng rng(kDefaultFactorSeed);
  return factor(f, rng);
}

bool is_irreducible(const UniPoly& f) {
  if (f.deg() < 1) return false;
  std::vector<std::pair<UniPoly, int>> sq;
  squarefree(f.monic(), 1, sq);
  if (sq.size() != 1 || sq[0].second != 1) return false;
  const auto dd = distinct_degree(sq[0].first);
  return dd.size() == 1 && dd[0].second == f.deg();
}

std::vector<Fe> roots(const UniPoly& f, Rng& rng) {
  if (f.is_zero()) throw std::invalid_argument("roots: zero polynomial");
  if (f.deg() < 1) return {};
  const Field& fld = f.field();
  const BigInt q = field_order(fld);
  const UniPoly g0 = f.monic();
  const UniPoly x = UniPoly::x(fld);
  const UniPoly g = gcd(g0, powmod(x, q, g0) - x);
  std::vector<Fe> out;
  if (g.deg() < 1) return out;
  std::vector<UniPoly> lin;
  equal_degree(g, 1, rng, lin);
  for (const auto& l : lin) out.push_back(-l.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fe> roots(const UniPoly& f) {
  Rng rng(kDefaultFactorSeed);
  return roots(f, rng);
}

std::optional<Fe> sqrt(const Fe& a) {
  const Field& f = a.field();
  if (a.is_zero()) return a;
  if (f.characteristic() == 2) return a.pow(BigInt(field_order(f) / 2));
  auto r = roots(UniPoly(f, Vec{-a, f.zero(), f.one()}));
  if (r.empty()) return std::nullopt;
  return r.front();
}

// ---------------------------------------------------------------- bivariate

int deg_y(const BiPoly& f) {
  for (int j = static_cast<int>(f.size()) - 1; j >= 0; --j)
    if (!f[j].is_zero()) return j;
  return -1;
}

int deg_x(const BiPoly& f) {
  int d = -1;
  for (const auto& c : f) d = std::max(d, c.deg());
  return d;
}

UniPoly specialize_x(const BiPoly& f, const Fe& x0) {
  Vec c;
  for (const auto& a : f) c.push_back(a.eval(x0));
  return UniPoly(x0.field(), std::move(c));
}

namespace {

// Fraction-free determinant over F[x] (Bareiss with exact division).
UniPoly det_poly(std::vector<std::vector<UniPoly>> a, const Field& f) {
  const size_t n = a.size();
  UniPoly prev = UniPoly::constant(f.one());
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return UniPoly(f);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = UniPoly(f);
    }
    prev = a[k][k];
  }
  UniPoly d = n == 0 ? UniPoly::constant(f.one()) : a[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace

UniPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  const int m = deg_y(f), n = deg_y(g);
  if (m < 0 || n < 0) throw std::invalid_argument("resultant_y: zero input");
  const Field& fld = f[m].field();
  const int bound = n * std::max(deg_x(f), 0) + m * std::max(deg_x(g), 0);
  const auto order = fld.order();
  if (!order || *order > static_cast<unsigned>(bound)) {
    Vec xs, ys;
    for (int i = 0; i <= bound; ++i) {
      const Fe x0 = fld.from_index(static_cast<uint64_t>(i));
      xs.push_back(x0);
      ys.push_back(det(sylvester(specialize_x(f, x0), m, specialize_x(g, x0), n)));
    }
    return interpolate(xs, ys);
  }
  std::vector<std::vector<UniPoly>> s(m + n, std::vector<UniPoly>(m + n, UniPoly(fld)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = f[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = g[n - k];
  return det_poly(std::move(s), fld);
}

}  // namespace dpi
