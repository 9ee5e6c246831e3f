#include "dpi/linsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "zp.hpp"

namespace dpi {

Matrix condition_rows(int n, int d, const ProjPoint& p, int m) {
  if (p.ambient() != n) throw std::invalid_argument("condition_rows: point dimension mismatch");
  const Field& f = p.field();
  const size_t c = p.chart();
  const auto betas = monomials(n + 1, d);
  // powers of the coordinates
  std::vector<Vec> pw(n + 1);
  for (int i = 0; i <= n; ++i) {
    pw[i].push_back(f.one());
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * p[i]);
  }
  Matrix rows(f, 0, betas.size());
  for (int order = 0; order < m; ++order) {
    for (const auto& a : monomials(n + 1, order)) {
      if (a[c] != 0) continue;
      Vec row(betas.size(), f.zero());
      for (size_t k = 0; k < betas.size(); ++k) {
        const auto& b = betas[k];
        int64_t coef = 1;
        Fe v = f.one();
        bool ok = true;
        for (int i = 0; i <= n && ok; ++i) {
          if (b[i] < a[i]) {
            ok = false;
            break;
          }
          coef *= static_cast<int64_t>(binomial(b[i], a[i]));
          v *= pw[i][b[i] - a[i]];
        }
        if (ok) row[k] = v.scale_int(coef);
      }
      rows.append_row(row);
    }
  }
  return rows;
}

bool vanishes_to_order(const HomForm& f, const ProjPoint& p, int m) {
  for (int order = 0; order < m; ++order)
    for (const auto& a : monomials(f.nvars(), order))
      if (!f.hasse(a).evaluate(p.coords()).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- LinearSystem

LinearSystem::LinearSystem(Field f, int n, int d, std::vector<HomForm> basis)
    : field_(std::move(f)), n_(n), d_(d), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.nvars() != n + 1 || b.degree() != d || b.field() != field_)
      throw std::invalid_argument("LinearSystem: basis form of the wrong shape");
}

LinearSystem LinearSystem::complete(const Field& f, int n, int d) {
  std::vector<HomForm> b;
  for (const auto& e : monomials(n + 1, d)) b.push_back(HomForm::monomial(f.one(), e));
  return LinearSystem(f, n, d, std::move(b));
}

Matrix LinearSystem::matrix() const {
  Matrix m(field_, 0, binomial(d_ + n_, n_));
  for (const auto& b : basis_) m.append_row(b.coeffs());
  return m;
}

bool LinearSystem::contains(const HomForm& f) const { return row_space_contains(matrix(), f.coeffs()); }

bool LinearSystem::operator==(const LinearSystem& o) const {
  return n_ == o.n_ && d_ == o.d_ && subspace_equal(matrix(), o.matrix());
}

namespace {

// Conditions restricted to `base`: rows over base annihilating exactly the
// base-rational forms satisfying them.
Matrix base_rows(int n, int d, const std::vector<BaseCondition>& conditions, const Field& base) {
  Matrix out(base, 0, binomial(d + n, n));
  std::vector<std::pair<Field, Embedding>> cache;
  for (const auto& c : conditions) {
    const Matrix rows = condition_rows(n, d, c.point, c.multiplicity);
    const Field& pf = c.point.field();
    if (pf == base) {
      out = out.vstack(rows);
      continue;
    }
    const Embedding* emb = nullptr;
    for (const auto& [fld, e] : cache)
      if (fld == pf) emb = &e;
    if (!emb) {
      cache.emplace_back(pf, Embedding(base, pf));
      emb = &cache.back().second;
    }
    const int k = emb->relative_degree();
    for (size_t r = 0; r < rows.rows(); ++r) {
      std::vector<Vec> parts(k, Vec(rows.cols(), base.zero()));
      for (size_t j = 0; j < rows.cols(); ++j) {
        const Vec co = emb->coords(rows(r, j));
        for (int i = 0; i < k; ++i) parts[i][j] = co[i];
      }
      for (auto& p : parts) out.append_row(p);
    }
  }
  return out;
}

}  // namespace

LinearSystem LinearSystem::subsystem(const std::vector<BaseCondition>& conditions) const {
  if (basis_.empty()) return *this;
  const Matrix c = base_rows(n_, d_, conditions, field_);
  const Matrix b = matrix();
  // combinations lambda with c * (b^T lambda) = 0
  const Matrix k = kernel_basis(c * b.transpose());
  std::vector<HomForm> nb;
  const Matrix rows = row_basis(k * b);
  for (size_t i = 0; i < rows.rows(); ++i) nb.emplace_back(field_, n_ + 1, d_, rows.row(i));
  return LinearSystem(field_, n_, d_, std::move(nb));
}

nlohmann::json LinearSystem::to_json() const {
  nlohmann::json j;
  j["n"] = n_;
  j["d"] = d_;
  j["order"] = "grlex-v1";
  nlohmann::json b = nlohmann::json::array();
  for (const auto& f : basis_) b.push_back(f.to_json()["coeffs"]);
  j["basis"] = std::move(b);
  return j;
}

LinearSystem build_system(int n, int d, const std::vector<BaseCondition>& conditions, const Field& base) {
  for (const auto& c : conditions) {
    if (c.multiplicity < 1) throw std::invalid_argument("build_system: multiplicity must be positive");
    if (c.point.field().characteristic() != base.characteristic()) throw FieldMismatch();
  }
  const Matrix rows = base_rows(n, d, conditions, base);
  const Matrix k = rows.rows() ? kernel_basis(rows) : Matrix::identity(base, binomial(d + n, n));
  std::vector<HomForm> basis;
  for (size_t i = 0; i < k.rows(); ++i) basis.emplace_back(base, n + 1, d, k.row(i));
  return LinearSystem(base, n, d, std::move(basis));
}

// ---------------------------------------------------------------- triads

std::vector<BaseCondition> Triad::conditions(int multiplicity) const {
  std::vector<BaseCondition> c;
  for (const auto& p : points) c.push_back({p, multiplicity});
  return c;
}

nlohmann::json Triad::to_json() const {
  nlohmann::json j;
  j["base_field"] = base.to_json();
  j["splitting_field"] = split.to_json();
  j["orbit"] = orbit;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : points) pts.push_back(p.to_json());
  j["points"] = std::move(pts);
  return j;
}

namespace {
ProjPoint relative_frobenius(const ProjPoint& p, int times) {
  ProjPoint q = p;
  for (int i = 0; i < times; ++i) q = q.frobenius();
  return q;
}
}  // namespace

std::string orbit_pattern(const Field& base, const std::array<ProjPoint, 3>& pts) {
  const int k = base.degree();
  std::vector<int> sizes;
  std::vector<bool> done(3, false);
  for (int i = 0; i < 3; ++i) {
    if (done[i]) continue;
    int size = 0;
    ProjPoint q = pts[i];
    do {
      bool found = false;
      for (int j = 0; j < 3; ++j)
        if (!done[j] && pts[j] == q) {
          done[j] = true;
          found = true;
        }
      if (!found) throw DegenerateBaseLocus("point set is not Galois-stable");
      ++size;
      q = relative_frobenius(q, k);
    } while (q != pts[i]);
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  if (sizes == std::vector<int>{1, 1, 1}) return "1+1+1";
  if (sizes == std::vector<int>{1, 2}) return "1+2";
  if (sizes == std::vector<int>{3}) return "3";
  throw DegenerateBaseLocus("unexpected orbit structure");
}

namespace {

UniPoly linear_factor(const Fe& root) { return UniPoly(root.field(), Vec{-root, root.field().one()}); }

}  // namespace

ResidualBaseLocus pencil_residual_points(const LinearSystem& pencil, const PointConfig& known, Rng& rng) {
  if (pencil.dim() != 2 || pencil.ambient() != 2 || pencil.degree() != 4)
    throw std::invalid_argument("pencil_residual_points: a pencil of plane quartics is required");
  if (known.size() != 13 || known.ambient() != 2) throw std::invalid_argument("pencil_residual_points: 13 known points");
  const Field& k = pencil.field();
  for (const auto& p : known.points())
    for (const auto& f : pencil.basis())
      if (!f.evaluate(p.coords()).is_zero()) throw DegenerateBaseLocus("a known point is not a base point");

  constexpr int kAttempts = 16;
  for (int attempt = 1; attempt <= kAttempts; ++attempt) {
    const Projectivity m = Projectivity::random(k, 2, rng);
    const Projectivity minv = m.inverse();
    const HomForm g1 = pencil[0].transform(m.matrix());
    const HomForm g2 = pencil[1].transform(m.matrix());
    if (g1.coeff({0, 4, 0}).is_zero()) continue;
    // known points in the new coordinates, affine x = X/Z
    Vec xs;
    bool ok = true;
    for (const auto& p : known.points()) {
      const ProjPoint q = minv(p);
      if (q[2].is_zero()) {
        ok = false;
        break;
      }
      const Fe x = q[0] / q[2];
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) {
        ok = false;
        break;
      }
      xs.push_back(x);
    }
    if (!ok) continue;

    const BiPoly b1 = dehomogenize(g1), b2 = dehomogenize(g2);
    const UniPoly res = resultant_y(b1, b2);
    if (res.is_zero()) throw DegenerateBaseLocus("pencil generators share a common factor");
    if (res.deg() != 16) continue;  // a base point on the line at infinity
    UniPoly known_poly = UniPoly::constant(k.one());
    for (const auto& x : xs) known_poly *= linear_factor(x);
    const auto [residual, rem] = divmod(res, known_poly);
    if (!rem.is_zero()) throw DegenerateBaseLocus("resultant does not vanish at a known base point");
    if (residual.deg() != 3) throw DegenerateBaseLocus("residual factor has degree " + std::to_string(residual.deg()));
    if (gcd(residual, residual.derivative()).deg() > 0 || gcd(residual, known_poly).deg() > 0) continue;

    int split_degree = 1;
    for (const auto& [g, mult] : factor(residual, rng)) split_degree = std::lcm(split_degree, g.deg());
    const Field l = split_degree == 1 ? k : build_extension(k.characteristic(), k.degree() * split_degree, rng);
    const Embedding emb(k, l);
    UniPoly res_l(l);
    {
      Vec c;
      for (const auto& x : residual.coeffs()) c.push_back(emb(x));
      res_l = UniPoly(l, c);
    }
    const auto rts = roots(res_l, rng);
    if (rts.size() != 3) throw DegenerateBaseLocus("residual cubic did not split");
    Matrix ml(l, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ml(i, j) = emb(m.matrix()(i, j));
    std::array<ProjPoint, 3> pts;
    bool good = true;
    for (int i = 0; i < 3 && good; ++i) {
      BiPoly c1, c2;
      for (const auto& u : b1) {
        Vec c;
        for (const auto& x : u.coeffs()) c.push_back(emb(x));
        c1.emplace_back(l, c);
      }
      for (const auto& u : b2) {
        Vec c;
        for (const auto& x : u.coeffs()) c.push_back(emb(x));
        c2.emplace_back(l, c);
      }
      const UniPoly gy = gcd(specialize_x(c1, rts[i]), specialize_x(c2, rts[i]));
      if (gy.deg() != 1) {
        good = false;
        break;
      }
      const Fe y = -gy.coeff(0);
      pts[i] = ProjPoint(ml * Vec{rts[i], y, l.one()});
    }
    if (!good) continue;
    std::sort(pts.begin(), pts.end());
    const std::string pattern = orbit_pattern(k, pts);
    return {Triad{k, l, pts, pattern}, res.deg(), attempt};
  }
  throw DegenerateBaseLocus("no admissible coordinate change found (non-reduced base locus)");
}

std::vector<ProjPoint> bruteforce_base_points(const LinearSystem& sys) {
  const Field& f = sys.field();
  if (f.kind() != FieldKind::prime) throw std::invalid_argument("bruteforce_base_points: prime field required");
  if (sys.ambient() != 2) throw std::invalid_argument("bruteforce_base_points: plane systems only");
  const uint64_t p = f.characteristic();
  const auto ms = monomials(3, sys.degree());
  std::vector<std::vector<uint64_t>> coef;
  for (const auto& b : sys.basis()) {
    std::vector<uint64_t> c;
    for (const auto& x : b.coeffs()) c.push_back(x.residue());
    coef.push_back(std::move(c));
  }
  const int d = sys.degree();
  auto vanish = [&](uint64_t x, uint64_t y, uint64_t z) {
    std::vector<uint64_t> px(d + 1), py(d + 1), pz(d + 1);
    px[0] = py[0] = pz[0] = 1 % p;
    for (int i = 1; i <= d; ++i) {
      px[i] = zp::mul(px[i - 1], x, p);
      py[i] = zp::mul(py[i - 1], y, p);
      pz[i] = zp::mul(pz[i - 1], z, p);
    }
    for (const auto& c : coef) {
      uint64_t s = 0;
      for (size_t i = 0; i < ms.size(); ++i) {
        if (!c[i]) continue;
        s = zp::add(s, zp::mul(c[i], zp::mul(px[ms[i][0]], zp::mul(py[ms[i][1]], pz[ms[i][2]], p), p), p), p);
      }
      if (s) return false;
    }
    return true;
  };
  std::vector<ProjPoint> out;
  auto emit = [&](uint64_t x, uint64_t y, uint64_t z) {
    out.emplace_back(Vec{f.from_coeffs(std::vector<uint64_t>{x}), f.from_coeffs(std::vector<uint64_t>{y}),
                         f.from_coeffs(std::vector<uint64_t>{z})});
  };
  if (vanish(0, 0, 1)) emit(0, 0, 1);
  for (uint64_t z = 0; z < p; ++z)
    if (vanish(0, 1, z)) emit(0, 1, z);
  for (uint64_t y = 0; y < p; ++y)
    for (uint64_t z = 0; z < p; ++z)
      if (vanish(1, y, z)) emit(1, y, z);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dpi
