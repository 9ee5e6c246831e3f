#include "dpi/gale.hpp"

namespace dpi {

PointConfig associate(const PointConfig& cfg) {
  const int r = cfg.ambient();
  const int gamma = static_cast<int>(cfg.size());
  const int s = gamma - r - 2;
  if (s < 1) throw BadLength("associate: need at least r + 3 points, got " + std::to_string(gamma));
  const Matrix k = kernel_basis(cfg.matrix().transpose());
  if (static_cast<int>(k.rows()) != s + 1) throw DegenerateConfiguration("associate: coordinate matrix is rank deficient");
  PointConfig out(cfg.field(), s);
  for (int i = 0; i < gamma; ++i) {
    const Vec c = k.col(i);
    bool zero = true;
    for (const auto& x : c) zero = zero && x.is_zero();
    if (zero) throw DegenerateConfiguration("associate: point " + std::to_string(i) + " maps to zero");
    out.push_back(ProjPoint(c));
  }
  return out;
}

std::optional<Vec> verify_association(const PointConfig& a, const PointConfig& b) {
  const int r = a.ambient(), s = b.ambient();
  const size_t gamma = a.size();
  if (b.size() != gamma || static_cast<int>(gamma) != r + s + 2)
    throw BadLength("verify_association: expected r + s + 2 points on each side");
  const Field& f = a.field();
  // one equation per entry (i, j) of the (r+1) x (s+1) matrix sum_k d_k a_k b_k^T
  Matrix eq(f, (r + 1) * (s + 1), gamma);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= s; ++j)
      for (size_t k = 0; k < gamma; ++k) eq(i * (s + 1) + j, k) = a[k][i] * b[k][j];
  const Matrix ker = kernel_basis(eq);
  if (ker.rows() == 0) return std::nullopt;
  auto all_nonzero = [](const Vec& v) {
    for (const auto& x : v)
      if (x.is_zero()) return false;
    return true;
  };
  if (ker.rows() == 1) {
    const Vec v = ker.row(0);
    return all_nonzero(v) ? std::optional<Vec>(v) : std::nullopt;
  }
  // a coordinate vanishing on the whole kernel rules out a witness
  for (size_t k = 0; k < gamma; ++k) {
    bool zero = true;
    for (size_t i = 0; i < ker.rows(); ++i) zero = zero && ker(i, k).is_zero();
    if (zero) return std::nullopt;
  }
  // otherwise a fixed-seed random combination avoids every hyperplane d_k = 0
  // with high probability over a large field
  Rng rng(0xa550c1a7ULL);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v(gamma, f.zero());
    for (size_t i = 0; i < ker.rows(); ++i) {
      const Fe c = f.random(rng);
      for (size_t k = 0; k < gamma; ++k) v[k] += c * ker(i, k);
    }
    if (all_nonzero(v)) return v;
  }
  return std::nullopt;
}

}  // namespace dpi
