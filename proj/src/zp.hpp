#pragma once

// Word-level arithmetic mod p and dense F_p[t] polynomials. Internal to the
// fields module: extension-field multiplication, inversion and modulus
// irreducibility testing are built on these.

#include <cstdint>
#include <vector>

namespace dpi::zp {

using u64 = uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // ascending, no trailing zeros (zero poly = {})

inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }
inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);

void trim(Poly& f);
int deg(const Poly& f);
Poly mul(const Poly& a, const Poly& b, u64 p);
/// Remainder of a by a nonzero b.
Poly rem(Poly a, const Poly& b, u64 p);
void divmod(const Poly& a, const Poly& b, u64 p, Poly& q, Poly& r);
Poly gcd(Poly a, Poly b, u64 p);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p);
Poly powmod(Poly base, u64 e, const Poly& m, u64 p);
/// Inverse of a modulo m (gcd must be 1); returns {} if not invertible.
Poly invmod(const Poly& a, const Poly& m, u64 p);
/// Rabin's test for a monic polynomial of degree >= 1.
bool irreducible(const Poly& f, u64 p);

}  // namespace dpi::zp
