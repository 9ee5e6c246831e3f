#include "dpi/maps.hpp"

#include <algorithm>

namespace dpi {

RationalMap::RationalMap(Field f, int n, std::vector<HomForm> forms)
    : field_(std::move(f)), n_(n), forms_(std::move(forms)) {
  if (forms_.empty()) throw std::invalid_argument("RationalMap: no forms");
  for (const auto& g : forms_)
    if (g.nvars() != n + 1 || g.degree() != forms_[0].degree() || g.field() != field_)
      throw std::invalid_argument("RationalMap: forms differ in shape");
}

ProjPoint RationalMap::operator()(const ProjPoint& p) const {
  if (p.ambient() != n_) throw std::invalid_argument("RationalMap: point dimension mismatch");
  if (p.field() != field_) return lift(Embedding(field_, p.field()))(p);
  Vec v;
  bool zero = true;
  for (const auto& g : forms_) {
    v.push_back(g.evaluate(p.coords()));
    zero = zero && v.back().is_zero();
  }
  if (zero) throw IndeterminatePoint("every form vanishes at " + p.to_string());
  return ProjPoint(std::move(v));
}

PointConfig RationalMap::operator()(const PointConfig& c) const {
  if (c.field() != field_) return lift(Embedding(field_, c.field()))(c);
  PointConfig r(c.field(), target());
  for (const auto& p : c.points()) r.push_back((*this)(p));
  return r;
}

RationalMap RationalMap::compose(const RationalMap& inner) const {
  if (inner.target() != n_) throw std::invalid_argument("RationalMap::compose: dimension mismatch");
  std::vector<HomForm> out;
  for (const auto& g : forms_) out.push_back(g.compose(inner.forms_));
  return RationalMap(field_, inner.n_, std::move(out));
}

RationalMap RationalMap::lift(const Embedding& e) const {
  std::vector<HomForm> out;
  for (const auto& g : forms_) out.push_back(g.lift(e));
  return RationalMap(e.sup(), n_, std::move(out));
}

RationalMap veronese(const Field& f, int n, int d) {
  std::vector<HomForm> forms;
  for (const auto& e : monomials(n + 1, d)) forms.push_back(HomForm::monomial(f.one(), e));
  return RationalMap(f, n, std::move(forms));
}

RationalMap map_of(const LinearSystem& sys) {
  if (sys.dim() == 0) throw std::invalid_argument("map_of: empty system");
  return RationalMap(sys.field(), sys.ambient(), sys.basis());
}

RationalMap cremona_from_triad(const Triad& t) {
  if (!t.noncollinear()) throw CollinearTriad();
  const LinearSystem conics = build_system(2, 2, t.conditions(1), t.base);
  if (conics.dim() != 3) throw CollinearTriad();
  return map_of(conics);
}

Triad exceptional_triad(const Triad& t, const RationalMap& alpha) {
  if (!t.noncollinear()) throw CollinearTriad();
  const RationalMap a = alpha.lift(t.embedding());
  std::array<ProjPoint, 3> ex;
  for (int k = 0; k < 3; ++k) {
    const ProjPoint& p = t.points[(k + 1) % 3];
    const ProjPoint& q = t.points[(k + 2) % 3];
    Vec s;
    for (int i = 0; i < 3; ++i) s.push_back(p[i] + q[i]);
    ex[k] = a(ProjPoint(s));
  }
  if (collinear(ex[0], ex[1], ex[2])) throw CollinearTriad();
  std::sort(ex.begin(), ex.end());
  return Triad{t.base, t.split, ex, orbit_pattern(t.base, ex)};
}

bool cremona_involution_check(const Triad& t, int samples, Rng& rng) {
  const RationalMap alpha = cremona_from_triad(t);
  const Triad ex = exceptional_triad(t, alpha);
  const RationalMap beta = cremona_from_triad(ex);
  const Field& k = t.base;
  const Embedding e = t.embedding();
  // lines through pairs of t, over the splitting field
  auto on_lines = [&](const ProjPoint& x) {
    const ProjPoint xl = x.lift(e);
    for (int i = 0; i < 3; ++i)
      if (collinear(xl, t.points[(i + 1) % 3], t.points[(i + 2) % 3])) return true;
    return false;
  };
  PointConfig src(k, 2), dst(k, 2);
  int tries = 0;
  while (static_cast<int>(src.size()) < samples) {
    if (++tries > 100 * samples) return false;
    const ProjPoint x = random_point(2, k, rng);
    if (on_lines(x)) continue;
    const ProjPoint y = alpha(x);
    bool bad = false;
    const ProjPoint yl = y.lift(e);
    for (int i = 0; i < 3; ++i)
      if (collinear(yl, ex.points[(i + 1) % 3], ex.points[(i + 2) % 3])) bad = true;
    if (bad) continue;
    src.push_back(x);
    dst.push_back(beta(y));
  }
  // the first four samples must form a frame for the fit
  if (!in_general_position(src.slice(0, 4)) || !in_general_position(dst.slice(0, 4))) return false;
  return fit_projectivity(src, dst).has_value();
}

bool symcube_certificate(const LinearSystem& w, const Triad& t) {
  if (w.ambient() != 2 || w.degree() != 6) return false;
  const LinearSystem conics = build_system(2, 2, t.conditions(1), t.base);
  if (conics.dim() != 3) return false;
  std::vector<HomForm> cubes;
  for (const auto& e : monomials(3, 3)) {
    HomForm m = HomForm::monomial(t.base.one(), Exponents(3, 0));
    for (int i = 0; i < 3; ++i) m = m * conics[i].pow(e[i]);
    cubes.push_back(m);
  }
  return LinearSystem(t.base, 2, 6, cubes) == w;
}

std::vector<BiForm> segre_p1p2(const Field& f) {
  std::vector<BiForm> out;
  for (int i = 0; i <= 1; ++i)
    for (size_t j = 0; j < 3; ++j) {
      BiForm b(f, 1, 1, 3);
      b.at(i, j) = f.one();
      out.push_back(b);
    }
  return out;
}

std::vector<BiForm> p1p1_22(const Field& f) {
  std::vector<BiForm> out;
  for (int i = 0; i <= 2; ++i)
    for (size_t j = 0; j < 3; ++j) {
      BiForm b(f, 2, 2, 2);
      b.at(i, j) = f.one();
      out.push_back(b);
    }
  return out;
}

ProjPoint apply_biforms(const std::vector<BiForm>& forms, const Vec& first, const Vec& second) {
  Vec v;
  bool zero = true;
  for (const auto& b : forms) {
    v.push_back(b.evaluate(first, second));
    zero = zero && v.back().is_zero();
  }
  if (zero) throw IndeterminatePoint("every biform vanishes");
  return ProjPoint(std::move(v));
}

}  // namespace dpi
