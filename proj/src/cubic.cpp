#include "dpi/cubic.hpp"

#include <algorithm>
#include <numeric>

namespace dpi {

namespace {

Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Fe& x) { return x.is_zero(); });
}

Vec gradient(const HomForm& f, const Vec& p) {
  return {f.partial(0).evaluate(p), f.partial(1).evaluate(p), f.partial(2).evaluate(p)};
}

// F(l P + m Q) = c[0] l^3 + c[1] l^2 m + c[2] l m^2 + c[3] m^3.
std::array<Fe, 4> binary_restriction(const HomForm& f, const Vec& p, const Vec& q) {
  const Field& k = f.field();
  std::array<Fe, 4> c{k.zero(), k.zero(), k.zero(), k.zero()};
  const auto mons = monomials(3, 3);
  for (size_t i = 0; i < mons.size(); ++i) {
    const Fe& a = f.coeffs()[i];
    if (a.is_zero()) continue;
    std::array<Fe, 4> t{k.one(), k.zero(), k.zero(), k.zero()};  // indexed by power of m
    int deg = 0;
    for (int v = 0; v < 3; ++v)
      for (int e = 0; e < mons[i][v]; ++e) {
        for (int j = deg + 1; j > 0; --j) t[j] = t[j] * p[v] + t[j - 1] * q[v];
        t[0] = t[0] * p[v];
        ++deg;
      }
    for (int j = 0; j < 4; ++j) c[j] += a * t[j];
  }
  return c;
}

// A point of the line with coordinates l, not proportional to p.
Vec other_point_on_line(const Vec& l, const Vec& p) {
  const Field& k = l[0].field();
  for (int i = 0; i < 3; ++i) {
    Vec e(3, k.zero());
    e[i] = k.one();
    Vec q = cross(l, e);
    if (!is_zero_vec(q) && !is_zero_vec(cross(q, p))) return q;
  }
  throw std::logic_error("other_point_on_line: degenerate line");
}

Vec combine(const Fe& a, const Vec& p, const Fe& b, const Vec& q) {
  return {a * p[0] + b * q[0], a * p[1] + b * q[1], a * p[2] + b * q[2]};
}

Matrix lift_matrix(const Matrix& m, const Embedding& e) {
  Matrix r(e.sup(), m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = e(m(i, j));
  return r;
}

Field extension_over(const Field& k, int m) {
  if (m == 1) return k;
  return standard_extension(k.characteristic(), k.degree() * m);
}

HomForm normalized(const HomForm& f) {
  for (const auto& c : f.coeffs())
    if (!c.is_zero()) return f * c.inv();
  throw Singular("zero form");
}

// The flex quintic: second polar of F at P in the direction (F_y, -F_x, 0),
// which lies on the tangent line at P.
HomForm flex_quintic(const HomForm& f) {
  const HomForm q0 = f.partial(1), q1 = -f.partial(0);
  HomForm g(f.field(), 3, 5);
  for (const auto& a : monomials(3, 2)) {
    if (a[2] != 0) continue;
    g = g + f.hasse(a) * q0.pow(a[0]) * q1.pow(a[1]);
  }
  return g;
}

struct FlexResult {
  Field field;
  ProjPoint point;
};

FlexResult find_flex(const HomForm& f) {
  const Field& k = f.field();
  const Exponents y3{0, 3, 0};
  for (uint64_t attempt = 0; attempt < 16; ++attempt) {
    Rng rng(sub_seed(0xf1e7'0000'0000'0001ULL, attempt));
    const Projectivity a = attempt == 0 ? Projectivity::identity(k, 2) : Projectivity::random(k, 2, rng);
    const HomForm ft = f.transform(a.matrix());
    if (ft.coeff(y3).is_zero()) continue;
    const UniPoly r = resultant_y(dehomogenize(ft), dehomogenize(flex_quintic(ft)));
    if (r.deg() < 1) continue;
    for (const auto& [fac, mult] : factor(r)) {
      (void)mult;
      if (fac.deg() > kFlexDegreeCap) break;
      const Field l = extension_over(k, fac.deg());
      const Embedding e(k, l);
      Vec lc;
      for (const auto& c : fac.coeffs()) lc.push_back(e(c));
      const auto xs = roots(UniPoly(l, lc));
      if (xs.empty()) continue;
      const HomForm fl = ft.lift(e);
      const BiPoly bl = dehomogenize(fl);
      for (const auto& y : roots(specialize_x(bl, xs.front()))) {
        const Vec pt{xs.front(), y, l.one()};
        if (!is_flex(fl, ProjPoint(pt))) continue;
        return {l, ProjPoint(lift_matrix(a.matrix(), e) * pt)};
      }
    }
  }
  throw GeneralityFailure("no flex found over extensions of degree <= " + std::to_string(kFlexDegreeCap));
}

// Common zero of a list of univariate polynomials (zero ones ignored);
// true when their gcd is nonconstant or all of them vanish identically.
bool common_root(const std::vector<UniPoly>& ps) {
  std::optional<UniPoly> g;
  for (const auto& p : ps) {
    if (p.deg() < 0) continue;
    g = g ? gcd(*g, p) : p;
  }
  return !g || g->deg() > 0;
}

// Least m such that every root of h and every y over those roots lies in
// the degree-m extension of w.field().
int halving_degree(const Weierstrass& w, const UniPoly& h) {
  int m = 1;
  for (const auto& [fac, mult] : factor(h)) {
    (void)mult;
    m = std::lcm(m, fac.deg());
  }
  for (;;) {
    const Field l = extension_over(h.field(), m);
    const Embedding e(h.field(), l);
    Vec hc;
    for (const auto& c : h.coeffs()) hc.push_back(e(c));
    Weierstrass wl = w;
    for (Fe* c : {&wl.a1, &wl.a2, &wl.a3, &wl.a4, &wl.a6, &wl.u, &wl.v}) *c = e(*c);
    bool ok = true;
    for (const auto& x : roots(UniPoly(l, hc))) ok = ok && !wl.ys(x).empty();
    if (ok) return m;
    m *= 2;
  }
}

// Points P with 2P = target among the candidates (x roots of h), over the least
// extension of e.field() containing all of them.
std::vector<ProjPoint> halves(const PlaneCubic& e, const UniPoly& h, const ProjPoint& target, bool include_flex) {
  const int m = h.deg() > 0 ? halving_degree(e.weierstrass(), h) : 1;
  const PlaneCubic el = m == 1 ? e : e.extend(extension_over(e.field(), m));
  const Embedding emb(e.field(), el.field());
  const ProjPoint tl = target.lift(emb);
  std::vector<ProjPoint> out;
  if (include_flex) out.push_back(el.flex());
  if (h.deg() > 0) {
    Vec hc;
    for (const auto& c : h.coeffs()) hc.push_back(emb(c));
    for (const auto& x : roots(UniPoly(el.field(), hc)))
      for (const auto& y : el.weierstrass().ys(x)) {
        const ProjPoint p = el.weierstrass().plane(x, y);
        if (el.add(p, p) == tl) out.push_back(p);
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Fe Weierstrass::b2() const { return a1 * a1 + a2.scale_int(4); }
Fe Weierstrass::b4() const { return a4.scale_int(2) + a1 * a3; }
Fe Weierstrass::b6() const { return a3 * a3 + a6.scale_int(4); }
Fe Weierstrass::b8() const {
  return a1 * a1 * a6 + (a2 * a6).scale_int(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}

std::optional<std::array<Fe, 2>> Weierstrass::affine(const ProjPoint& p) const {
  const Vec q = *inverse(a) * p.coords();
  if (q[2].is_zero()) return std::nullopt;
  return std::array<Fe, 2>{q[0] / (u * q[2]), q[1] / (v * q[2])};
}

ProjPoint Weierstrass::plane(const Fe& x, const Fe& y) const {
  return ProjPoint(a * Vec{u * x, v * y, x.field().one()});
}

std::vector<Fe> Weierstrass::ys(const Fe& x) const {
  const Field& k = x.field();
  const UniPoly q(k, {-(x * x * x + a2 * x * x + a4 * x + a6), a1 * x + a3, k.one()});
  return roots(q);
}

bool is_flex(const HomForm& f, const ProjPoint& p) {
  const Vec& x = p.coords();
  if (!f.evaluate(x).is_zero()) return false;
  const Vec g = gradient(f, x);
  if (is_zero_vec(g)) return false;
  const Vec q = other_point_on_line(g, x);
  return binary_restriction(f, x, q)[2].is_zero();
}

bool common_zero_affine(const std::vector<BiPoly>& ps) {
  std::vector<BiPoly> live;
  for (const auto& p : ps)
    if (deg_y(p) >= 0) live.push_back(p);
  if (live.size() <= 1) return true;
  const Field& k = live[0][static_cast<size_t>(deg_y(live[0]))].field();
  std::optional<UniPoly> g;
  for (size_t i = 1; i < live.size(); ++i) {
    const UniPoly r = resultant_y(live[0], live[i]);
    if (r.deg() < 0) return true;  // common component
    g = g ? gcd(*g, r) : r;
  }
  if (g->deg() < 1) return false;
  for (const auto& [fac, mult] : factor(*g)) {
    (void)mult;
    const Field l = extension_over(k, fac.deg());
    const Embedding e(k, l);
    Vec lc;
    for (const auto& c : fac.coeffs()) lc.push_back(e(c));
    const Fe x0 = roots(UniPoly(l, lc)).front();
    std::vector<UniPoly> ys;
    for (const auto& p : live) {
      BiPoly pl;
      for (const auto& c : p) {
        Vec cc;
        for (const auto& x : c.coeffs()) cc.push_back(e(x));
        pl.emplace_back(l, cc);
      }
      ys.push_back(specialize_x(pl, x0));
    }
    if (common_root(ys)) return true;
  }
  return false;
}

bool is_smooth(const HomForm& f) {
  if (f.nvars() != 3 || f.degree() < 1) throw std::invalid_argument("is_smooth: not a plane curve");
  const Field& k = f.field();
  const std::array<HomForm, 4> fs{f, f.partial(0), f.partial(1), f.partial(2)};

  // the line z = 0, exactly: the points (1 : y : 0) and (0 : 1 : 0)
  std::vector<UniPoly> at_inf;
  bool corner = true;
  for (const auto& g : fs) {
    if (g.is_zero()) continue;
    const int e = g.degree();
    Vec c;
    for (int j = 0; j <= e; ++j) c.push_back(g.coeff(Exponents{e - j, j, 0}));
    at_inf.emplace_back(k, c);
    corner = corner && g.coeff(Exponents{0, e, 0}).is_zero();
  }
  if (corner || common_root(at_inf)) return false;

  std::vector<BiPoly> aff;
  for (const auto& g : fs)
    if (!g.is_zero()) aff.push_back(dehomogenize(g));
  return !common_zero_affine(aff);
}

PlaneCubic::PlaneCubic(HomForm f) {
  if (f.nvars() != 3 || f.degree() != 3) throw std::invalid_argument("PlaneCubic: not a plane cubic");
  base_ = normalized(f);
  if (!is_smooth(base_)) throw Singular("the cubic is singular");
  const FlexResult fr = find_flex(base_);
  from_base_ = Embedding(base_.field(), fr.field);
  f_ = base_.lift(from_base_);
  o_ = fr.point;
  build_weierstrass();
}

void PlaneCubic::build_weierstrass() {
  const Field& k = field();
  const Vec l = gradient(f_, o_.coords());
  Matrix a(k, 3, 3);
  const Vec c0 = other_point_on_line(l, o_.coords());
  Vec c2(3, k.zero());
  for (int i = 0; i < 3; ++i)
    if (!l[i].is_zero()) {
      c2[i] = k.one();
      break;
    }
  for (int i = 0; i < 3; ++i) {
    a(i, 0) = c0[i];
    a(i, 1) = o_[i];
    a(i, 2) = c2[i];
  }
  const HomForm g = f_.transform(a);
  auto co = [&](int x, int y, int z) { return g.coeff(Exponents{x, y, z}); };
  if (!co(0, 3, 0).is_zero() || !co(1, 2, 0).is_zero() || !co(2, 1, 0).is_zero())
    throw std::logic_error("build_weierstrass: the base point is not a flex");
  const Fe c = co(3, 0, 0), ay = co(0, 2, 1);
  if (c.is_zero() || ay.is_zero()) throw Singular("degenerate flex tangent");
  const Fe u = -ay / c, v = u;
  const Fe n = ay * v * v;
  w_.a1 = co(1, 1, 1) * u * v / n;
  w_.a3 = co(0, 1, 2) * v / n;
  w_.a2 = -co(2, 0, 1) * u * u / n;
  w_.a4 = -co(1, 0, 2) * u / n;
  w_.a6 = -co(0, 0, 3) / n;
  w_.a = a;
  w_.u = u;
  w_.v = v;
}

PlaneCubic PlaneCubic::extend(const Field& larger) const {
  if (larger == field()) return *this;
  const Embedding e(field(), larger);
  PlaneCubic r;
  r.base_ = base_;
  r.f_ = f_.lift(e);
  r.from_base_ = from_base_.then(e);
  r.o_ = o_.lift(e);
  r.build_weierstrass();
  return r;
}

bool PlaneCubic::contains(const ProjPoint& p) const {
  return p.field() == field() && f_.evaluate(p.coords()).is_zero();
}

void PlaneCubic::check(const ProjPoint& p) const {
  if (p.field() != field()) throw FieldMismatch();
  if (!f_.evaluate(p.coords()).is_zero()) throw OffCurve(p.to_string() + " is not on the curve");
}

ProjPoint PlaneCubic::third(const ProjPoint& p, const ProjPoint& q) const {
  check(p);
  check(q);
  const Vec& x = p.coords();
  if (p != q) {
    const auto c = binary_restriction(f_, x, q.coords());
    if (c[1].is_zero() && c[2].is_zero()) throw Singular("line contained in the curve");
    return ProjPoint(combine(c[2], x, -c[1], q.coords()));
  }
  const Vec g = gradient(f_, x);
  if (is_zero_vec(g)) throw Singular("singular point " + p.to_string());
  const Vec t = other_point_on_line(g, x);
  const auto c = binary_restriction(f_, x, t);
  if (c[2].is_zero() && c[3].is_zero()) throw Singular("tangent contained in the curve");
  return ProjPoint(combine(c[3], x, -c[2], t));
}

ProjPoint PlaneCubic::add(const ProjPoint& p, const ProjPoint& q) const { return third(o_, third(p, q)); }

ProjPoint PlaneCubic::neg(const ProjPoint& p) const { return third(p, o_); }

ProjPoint PlaneCubic::mul(const ProjPoint& p, int64_t k) const {
  check(p);
  ProjPoint base = k < 0 ? neg(p) : p;
  uint64_t n = k < 0 ? static_cast<uint64_t>(-(k + 1)) + 1 : static_cast<uint64_t>(k);
  ProjPoint acc = o_;
  while (n) {
    if (n & 1) acc = add(acc, base);
    n >>= 1;
    if (n) base = add(base, base);
  }
  return acc;
}

ProjPoint PlaneCubic::sum(const std::vector<ProjPoint>& pts) const {
  ProjPoint acc = o_;
  for (const auto& p : pts) acc = add(acc, p);
  return acc;
}

ProjPoint PlaneCubic::random_point(Rng& rng) const {
  const BiPoly b = dehomogenize(f_);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const Fe x0 = field().random(rng);
    const auto ys = roots(specialize_x(b, x0));
    if (ys.empty()) continue;
    const ProjPoint p(Vec{x0, ys[uniform_below(rng, ys.size())], field().one()});
    if (p != o_) return p;
  }
  throw ResampleExhausted("PlaneCubic::random_point");
}

PlaneCubic cubic_through(const PointConfig& cfg) {
  if (cfg.ambient() != 2 || cfg.size() != 9) throw std::invalid_argument("cubic_through: need 9 points of P^2");
  std::vector<BaseCondition> conds;
  for (const auto& p : cfg.points()) conds.push_back({p, 1});
  const LinearSystem sys = build_system(2, 3, conds, cfg.field());
  if (sys.dim() != 1) throw NotUnique("cubics through the points form a space of dimension " + std::to_string(sys.dim()));
  return PlaneCubic(sys[0]);
}

nlohmann::json DivisorClass::to_json() const { return {{"degree", degree}, {"rep", rep.to_json()}}; }

DivisorClass class_of(const PlaneCubic& e, const std::vector<ProjPoint>& effective) {
  return {static_cast<int>(effective.size()), e.sum(effective)};
}

DivisorClass add(const PlaneCubic& e, const DivisorClass& a, const DivisorClass& b) {
  return {a.degree + b.degree, e.add(a.rep, b.rep)};
}

DivisorClass scale(const PlaneCubic& e, const DivisorClass& a, int k) { return {a.degree * k, e.mul(a.rep, k)}; }

std::vector<ProjPoint> two_torsion(const PlaneCubic& e) {
  const Weierstrass& w = e.weierstrass();
  const Field& k = e.field();
  UniPoly psi(k, {w.b6(), w.b4().scale_int(2), w.b2(), k.from_int(4)});
  return halves(e, psi, e.flex(), true);
}

std::vector<DivisorClass> sqrt_classes(const PlaneCubic& e, const DivisorClass& l) {
  if (l.degree % 2 != 0) throw std::invalid_argument("sqrt_classes: odd degree");
  if (l.rep.field() != e.field()) throw FieldMismatch();
  std::vector<ProjPoint> hs;
  const auto xy = e.weierstrass().affine(l.rep);
  if (!xy) {
    hs = two_torsion(e);
  } else {
    const Weierstrass& w = e.weierstrass();
    const Field& k = e.field();
    const Fe& xq = (*xy)[0];
    const UniPoly num(k, {-w.b8(), -w.b6().scale_int(2), -w.b4(), k.zero(), k.one()});
    const UniPoly den(k, {w.b6(), w.b4().scale_int(2), w.b2(), k.from_int(4)});
    hs = halves(e, num - den * xq, l.rep, false);
  }
  std::vector<DivisorClass> out;
  for (auto& h : hs) out.push_back({l.degree / 2, std::move(h)});
  return out;
}

ClassSections sections_of_class(const PlaneCubic& e, const DivisorClass& m, Rng& rng) {
  if (m.degree != 3 && m.degree != 6) throw std::invalid_argument("sections_of_class: degree must be 3 or 6");
  if (m.rep.field() != e.field()) throw FieldMismatch();
  const int r = 9 - m.degree;
  const Field& k = e.field();
  const HomForm f = normalized(e.equation());
  size_t pivot = 0;
  while (f.coeffs()[pivot].is_zero()) ++pivot;
  for (int attempt = 0; attempt < 32; ++attempt) {
    try {
      std::vector<ProjPoint> aux;
      for (int i = 0; i + 1 < r; ++i) aux.push_back(e.random_point(rng));
      aux.push_back(e.neg(e.add(m.rep, e.sum(aux))));
      for (size_t i = 0; i < aux.size(); ++i)
        for (size_t j = 0; j < i; ++j)
          if (aux[i] == aux[j]) throw AuxiliaryCollision("repeated auxiliary point");
      std::vector<BaseCondition> conds;
      for (const auto& p : aux) conds.push_back({p, 1});
      const LinearSystem sys = build_system(2, 3, conds, k);
      if (static_cast<int>(sys.dim()) != m.degree + 1)
        throw AuxiliaryCollision("auxiliary points impose dependent conditions");
      Matrix red(k, 0, 10);
      for (const auto& g : sys.basis()) {
        Vec c = g.coeffs();
        const Fe s = c[pivot];
        for (size_t j = 0; j < c.size(); ++j) c[j] -= s * f.coeffs()[j];
        red.append_row(c);
      }
      const Rref rr = rref(red);
      if (static_cast<int>(rr.rank) != m.degree) throw AuxiliaryCollision("curve equation not in the system");
      ClassSections out;
      for (size_t i = 0; i < rr.rank; ++i) out.basis.emplace_back(k, 3, 3, rr.form.row(i));
      out.aux = std::move(aux);
      return out;
    } catch (const AuxiliaryCollision&) {
    }
  }
  throw ResampleExhausted("sections_of_class: auxiliary divisor");
}

ProjPoint map_by(const ClassSections& s, const ProjPoint& p) {
  Vec v;
  bool zero = true;
  for (const auto& g : s.basis) {
    v.push_back(g.evaluate(p.coords()));
    zero = zero && v.back().is_zero();
  }
  if (zero) throw IndeterminatePoint(p.to_string() + " is on the auxiliary divisor");
  return ProjPoint(std::move(v));
}

}  // namespace dpi
