#include "zp.hpp"

#include <stdexcept>

namespace dpi::zp {

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  // extended Euclid on signed 128-bit values
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("zp::inv of a non-unit");
  if (t < 0) t += p;
  return static_cast<u64>(t);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j], p), p);
  }
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, u64 p, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("zp::divmod by zero polynomial");
  r = a;
  trim(r);
  const int db = deg(b);
  if (deg(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  const u64 lead_inv = inv(b.back(), p);
  for (int i = deg(r); i >= db; --i) {
    const u64 c = mul(r[i], lead_inv, p);
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = sub(r[i - db + j], mul(c, b[j], p), p);
  }
  trim(r);
  trim(q);
}

Poly rem(Poly a, const Poly& b, u64 p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 li = inv(a.back(), p);
    for (auto& c : a) c = mul(c, li, p);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) { return rem(mul(a, b, p), m, p); }

Poly powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1 % p};
  trim(r);
  base = rem(base, m, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, p);
    e >>= 1;
    if (e) base = mulmod(base, base, m, p);
  }
  return r;
}

Poly invmod(const Poly& a, const Poly& m, u64 p) {
  Poly r0 = m, r1 = rem(a, m, p);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, q, r);
    Poly qs = mul(q, s1, p);
    Poly s(std::max(s0.size(), qs.size()), 0);
    for (size_t i = 0; i < s.size(); ++i) {
      const u64 x = i < s0.size() ? s0[i] : 0;
      const u64 y = i < qs.size() ? qs[i] : 0;
      s[i] = sub(x, y, p);
    }
    trim(s);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (deg(r0) != 0) return {};
  const u64 li = inv(r0[0], p);
  for (auto& c : s0) c = mul(c, li, p);
  trim(s0);
  return s0;
}

namespace {
Poly x_minus(const Poly& h, u64 p) {  // h - x
  Poly r = h;
  if (r.size() < 2) r.resize(2, 0);
  r[1] = sub(r[1], 1, p);
  trim(r);
  return r;
}
}  // namespace

bool irreducible(const Poly& f, u64 p) {
  const int n = deg(f);
  if (n < 1) return false;
  if (n == 1) return true;
  // h_i = x^{p^i} mod f
  std::vector<Poly> h(n + 1);
  h[0] = rem(Poly{0, 1}, f, p);
  for (int i = 1; i <= n; ++i) h[i] = powmod(h[i - 1], p, f, p);
  if (!x_minus(h[n], p).empty()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    bool prime_r = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) prime_r = false;
    if (!prime_r) continue;
    if (deg(gcd(f, x_minus(h[n / r], p), p)) != 0) return false;
  }
  return true;
}

}  // namespace dpi::zp
