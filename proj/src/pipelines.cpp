#include "dpi/pipelines.hpp"

#include <algorithm>

namespace dpi {

namespace {

using nlohmann::json;

template <class Fn>
auto resample(uint64_t seed, const std::string& what, int cap, Fn&& fn) {
  std::string last;
  for (int attempt = 0; attempt < cap; ++attempt) {
    Rng rng(sub_seed(seed, static_cast<uint64_t>(attempt)));
    try {
      return fn(rng, attempt + 1);
    } catch (const GeneralityFailure& e) {
      last = e.what();
    } catch (const DegenerateConfiguration& e) {
      last = e.what();
    } catch (const DegenerateBaseLocus& e) {
      last = e.what();
    } catch (const NotUnique& e) {
      last = e.what();
    } catch (const Singular& e) {
      last = e.what();
    } catch (const CollinearTriad& e) {
      last = e.what();
    } catch (const IndeterminatePoint& e) {
      last = e.what();
    } catch (const AuxiliaryCollision& e) {
      last = e.what();
    } catch (const ResampleExhausted& e) {
      last = e.what();
    }
  }
  throw ResampleExhausted(what + ": no usable sample in " + std::to_string(cap) + " attempts (last: " + last + ")");
}

std::vector<BaseCondition> simple(const std::vector<ProjPoint>& pts) {
  std::vector<BaseCondition> out;
  for (const auto& p : pts) out.push_back({p, 1});
  return out;
}

std::vector<BaseCondition> simple(const PointConfig& c) { return simple(c.points()); }

PointConfig distinct_random_points(int n, size_t count, const Field& f, Rng& rng) {
  PointConfig c(f, n);
  while (c.size() < count) {
    const ProjPoint p = random_point(n, f, rng);
    if (std::find(c.points().begin(), c.points().end(), p) == c.points().end()) c.push_back(p);
  }
  return c;
}

Matrix lift_matrix(const Matrix& m, const Embedding& e) {
  Matrix r(e.sup(), m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = e(m(i, j));
  return r;
}

// m o phi for a projectivity m of the target.
RationalMap after(const Projectivity& m, const RationalMap& phi) {
  std::vector<HomForm> out;
  const Matrix& a = m.matrix();
  for (size_t k = 0; k < a.rows(); ++k) {
    HomForm g(phi.field(), phi.source() + 1, phi.degree());
    for (size_t i = 0; i < a.cols(); ++i) g = g + phi.forms()[i] * a(k, i);
    out.push_back(g);
  }
  return RationalMap(phi.field(), phi.source(), std::move(out));
}

Vec row_of(const ProjPoint& p, int d) { return veronese(p.field(), p.ambient(), d)(p).coords(); }

json points_json(const std::vector<ProjPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(p.to_json());
  return a;
}

// A curve (x in the coefficients, y main) in the chart t = 1, v = 1 of a
// form on P^1 x P^1: x = s, y = u.
BiPoly chart_p1p1(const BiForm& f) {
  const Field& k = f.field();
  BiPoly out(static_cast<size_t>(f.b() + 1), UniPoly(k));
  for (int j = 0; j <= f.b(); ++j) {
    Vec c(static_cast<size_t>(f.a() + 1), k.zero());
    for (int i = 0; i <= f.a(); ++i) c[static_cast<size_t>(f.a() - i)] = f.at(i, static_cast<size_t>(j));
    out[static_cast<size_t>(f.b() - j)] = UniPoly(k, c);
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

bool common_root_uni(const std::vector<UniPoly>& ps) {
  std::optional<UniPoly> g;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g ? gcd(*g, p) : p;
  }
  return !g || g->deg() > 0;
}

}  // namespace

Field FieldSpec::field() const {
  if (!is_prime(characteristic)) throw std::invalid_argument("characteristic must be prime");
  if (ext_degree < 1) throw std::invalid_argument("extension degree must be positive");
  return ext_degree == 1 ? Field::prime(characteristic) : standard_extension(characteristic, ext_degree);
}

PipelineReport::PipelineReport(std::string construction, uint64_t seed, const Field& field, std::string mode)
    : construction_(std::move(construction)), seed_(seed), field_(field.to_json()), mode_(std::move(mode)) {}

bool PipelineReport::pass() const {
  return !stages_.empty() && std::all_of(stages_.begin(), stages_.end(), [](const Stage& s) { return s.pass; });
}

const Stage* PipelineReport::find(const std::string& name) const {
  for (const auto& s : stages_)
    if (s.name == name) return &s;
  return nullptr;
}

Stage& PipelineReport::stage(const std::string& name, bool pass, json detail) {
  stages_.push_back({name, pass, std::move(detail)});
  return stages_.back();
}

void PipelineReport::absorb(const PipelineReport& other, const std::string& prefix) {
  for (const auto& s : other.stages_) stages_.push_back({prefix + s.name, s.pass, s.detail});
}

json PipelineReport::to_json() const {
  json st = json::array();
  for (const auto& s : stages_) st.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
  return {{"schema", "dpi-report-v1"}, {"construction", construction_}, {"seed", seed_}, {"field", field_},
          {"mode", mode_}, {"attempts", attempts_}, {"stages", st}, {"notes", notes_}, {"pass", pass()}};
}

// ---------------------------------------------------------------------------

RncResult rnc_through(const PointConfig& cfg) {
  const int r = cfg.ambient();
  if (r < 1 || static_cast<int>(cfg.size()) != r + 3)
    throw std::invalid_argument("rnc_through: need r + 3 points of P^r");
  const Field& k = cfg.field();
  PointConfig frame(k, r);
  for (int i = 0; i <= r; ++i) {
    Vec v(static_cast<size_t>(r + 1), k.zero());
    v[static_cast<size_t>(i)] = k.one();
    frame.push_back(ProjPoint(v));
  }
  frame.push_back(ProjPoint(Vec(static_cast<size_t>(r + 1), k.one())));
  const auto g = fit_projectivity(cfg.slice(0, static_cast<size_t>(r + 2)), frame);
  if (!g) throw DegenerateConfiguration("rnc_through: the first r + 2 points are not a frame");
  const Vec c = (*g)(cfg[static_cast<size_t>(r + 2)]).coords();
  Vec t;
  for (int i = 0; i <= r; ++i) {
    if (c[static_cast<size_t>(i)].is_zero()) throw DegenerateConfiguration("rnc_through: last point on a coordinate hyperplane");
    t.push_back(-c[static_cast<size_t>(i)].inv());
  }
  for (size_t i = 0; i < t.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (t[i] == t[j]) throw DegenerateConfiguration("rnc_through: last point has repeated coordinates");

  std::vector<HomForm> xs;
  for (int i = 0; i <= r; ++i) {
    HomForm x = HomForm::monomial(k.one(), Exponents{0, 0});
    for (int j = 0; j <= r; ++j)
      if (j != i) x = x * HomForm::linear(Vec{k.one(), -t[static_cast<size_t>(j)]});
    xs.push_back(x);
  }
  RationalMap curve = after(g->inverse(), RationalMap(k, 1, xs));

  std::vector<ProjPoint> params;
  for (int i = 0; i <= r; ++i) params.emplace_back(Vec{t[static_cast<size_t>(i)], k.one()});
  params.emplace_back(Vec{k.one(), k.zero()});
  params.emplace_back(Vec{k.zero(), k.one()});

  PipelineReport rep("rnc", 0, k);
  size_t on = 0;
  for (size_t i = 0; i < cfg.size(); ++i) on += curve(params[i]) == cfg[i];
  rep.stage("points_on_curve", on == cfg.size(), {{"on", on}, {"of", cfg.size()}, {"degree", r}});
  return {std::move(curve), std::move(params), std::move(rep)};
}

// ---------------------------------------------------------------------------

PipelineReport quintic_dp_forward(uint64_t seed, const Field& f) {
  return resample(seed, "quintic_dp_forward", kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep("quintic_dp_forward", seed, f, "forward");
    rep.set_attempts(attempt);
    const auto segre = segre_p1p2(f);
    auto random_first = [&] { return random_point(1, f, rng).coords(); };
    auto random_second = [&] { return random_point(2, f, rng).coords(); };

    std::vector<ProjPoint> sample;
    for (int i = 0; i < 30; ++i) sample.push_back(apply_biforms(segre, random_first(), random_second()));
    const LinearSystem ideal = build_system(5, 2, simple(sample), f);
    rep.stage("ideal_slice", ideal.dim() == 3, {{"dim", ideal.dim()}, {"samples", sample.size()}});
    const size_t h0 = 21 - ideal.dim();
    rep.stage("h0_OX2", h0 == 18 && h0 == 3 * binomial(4, 2), {{"value", h0}, {"bidegree_count", 3 * binomial(4, 2)}});

    const Vec st = random_first();
    std::vector<HomForm> plane;  // the ruling plane {(s0 : t0)} x P^2 as linear forms in (x, y, z)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        Vec l(3, f.zero());
        l[static_cast<size_t>(j)] = st[static_cast<size_t>(i)];
        plane.push_back(HomForm::linear(l));
      }
    const auto quad = monomials(6, 2);
    Matrix cond(f, 6, quad.size());
    for (size_t c = 0; c < quad.size(); ++c) {
      const HomForm r = HomForm::monomial(f.one(), quad[c]).compose(plane);
      for (size_t i = 0; i < 6; ++i) cond(i, c) = r.coeffs()[i];
    }
    std::vector<Vec> first, second;
    std::vector<ProjPoint> pts;
    for (int i = 0; i < 11; ++i) {
      first.push_back(random_first());
      second.push_back(random_second());
      pts.push_back(apply_biforms(segre, first.back(), second.back()));
      cond.append_row(row_of(pts.back(), 2));
    }
    const Matrix amb = kernel_basis(cond);
    rep.stage("ambient_quadrics", amb.rows() == 4, {{"dim", amb.rows()}, {"expected", "21 - 6 - 11 = 4"}});
    const Matrix im = ideal.matrix();
    const bool inside = (cond * im.transpose()).is_zero();
    rep.stage("ideal_inside_ambient", inside);
    const size_t pencil = amb.rows() - ideal.dim();
    rep.stage("on_scroll_pencil", pencil == 1, {{"dim", pencil}, {"expected", "12 - 11 = 1"}});

    std::optional<Vec> q;
    for (size_t i = 0; i < amb.rows() && !q; ++i)
      if (!row_space_contains(im, amb.row(i))) q = amb.row(i);
    if (!q) throw GeneralityFailure("every ambient quadric lies in the ideal");
    const HomForm qf(f, 6, 2, *q);
    rep.stage("plane_restriction_zero", qf.compose(plane).is_zero());
    bool through = true;
    for (const auto& p : pts) through = through && qf.evaluate(p.coords()).is_zero();
    rep.stage("through_points", through, {{"points", pts.size()}});
    rep.stage("not_in_ideal", !row_space_contains(im, *q));

    // Q restricted to the threefold, divided by the equation of the plane
    BiForm qx(f, 2, 2, 3);
    for (size_t c = 0; c < quad.size(); ++c) {
      if ((*q)[c].is_zero()) continue;
      BiForm m(f, 0, 0, 3);
      m.at(0, 0) = (*q)[c];
      for (int v = 0; v < 6; ++v)
        for (int e = 0; e < quad[c][static_cast<size_t>(v)]; ++e) m = m * segre[static_cast<size_t>(v)];
      qx = qx + m;
    }
    BiForm ell(f, 1, 0, 3);
    ell.at(0, 0) = st[1];
    ell.at(1, 0) = -st[0];
    const auto res = qx.divide(ell);
    bool res_ok = res && !res->is_zero();
    if (res_ok)
      for (size_t i = 0; i < pts.size(); ++i) res_ok = res_ok && res->evaluate(first[i], second[i]).is_zero();
    rep.stage("residual_divisor", res_ok, {{"bidegree", {1, 2}}});

    Matrix ev(f, 0, 12);
    for (size_t i = 0; i < pts.size(); ++i) {
      Vec row;
      for (int a = 0; a <= 1; ++a)
        for (size_t j = 0; j < 6; ++j) {
          BiForm b(f, 1, 2, 3);
          b.at(a, j) = f.one();
          row.push_back(b.evaluate(first[i], second[i]));
        }
      ev.append_row(row);
    }
    const Matrix rk = kernel_basis(ev);
    bool proportional = false;
    if (res_ok && rk.rows() == 1) {
      Vec rc;
      for (int a = 0; a <= 1; ++a)
        for (size_t j = 0; j < 6; ++j) rc.push_back(res->at(a, j));
      proportional = rank(Matrix::from_rows(f, {rc, rk.row(0)})) == 1;
    }
    rep.stage("residual_pencil", rk.rows() == 1 && proportional, {{"dim", rk.rows()}, {"expected", "12 - 11 = 1"}});
    return rep;
  });
}

// ---------------------------------------------------------------------------

PipelineReport sextic_dp_from(const HomForm& c, const std::array<ProjPoint, 3>& pts, Rng& rng) {
  const Field& f = c.field();
  if (c.nvars() != 3 || c.degree() != 4) throw std::invalid_argument("sextic_dp_from: need a plane quartic");
  for (const auto& p : pts)
    if (!c.evaluate(p.coords()).is_zero()) throw std::invalid_argument("sextic_dp_from: point not on the quartic");
  if (collinear(pts[0], pts[1], pts[2])) throw GeneralityFailure("the three points are collinear");
  if (!is_smooth(c)) throw GeneralityFailure("the quartic is singular");
  PipelineReport rep("sextic_dp_forward", 0, f, "forward");
  rep.stage("quartic_smooth", true);

  const std::vector<ProjPoint> three(pts.begin(), pts.end());
  const LinearSystem cubics = build_system(2, 3, simple(three), f);
  rep.stage("cubic_system", cubics.dim() == 7, {{"dim", cubics.dim()}});
  const RationalMap phi = map_of(cubics);

  const BiPoly cb = dehomogenize(c);
  std::vector<ProjPoint> on;
  for (int guard = 0; on.size() < 20; ++guard) {
    if (guard > 100000) throw GeneralityFailure("too few rational points on the quartic");
    const Fe x0 = f.random(rng);
    for (const auto& y : roots(specialize_x(cb, x0))) {
      const ProjPoint p(Vec{x0, y, f.one()});
      if (std::find(three.begin(), three.end(), p) == three.end() && std::find(on.begin(), on.end(), p) == on.end())
        on.push_back(p);
    }
  }
  on.resize(20);
  std::vector<ProjPoint> imgs;
  Matrix ev(f, 0, 7);
  for (const auto& p : on) {
    imgs.push_back(phi(p));
    ev.append_row(imgs.back().coords());
  }
  rep.stage("image_spans_P6", rank(ev) == 7, {{"rank", rank(ev)}, {"points", on.size()}});
  const LinearSystem iq = build_system(6, 2, simple(imgs), f);
  rep.stage("image_quadrics", iq.dim() == 12, {{"dim", iq.dim()}, {"expected", "28 - (18 - 3 + 1) = 12"}});

  Vec hc(7);
  for (auto& x : hc) x = f.random(rng);
  HomForm h(f, 3, 3);
  for (size_t i = 0; i < 7; ++i) h = h + cubics[i] * hc[i];
  int section_degree = -1, resultant_degree = -1;
  for (int attempt = 0; attempt < 16 && section_degree < 0; ++attempt) {
    const Projectivity m = Projectivity::random(f, 2, rng);
    const Projectivity mi = m.inverse();
    const HomForm ct = c.transform(m.matrix()), ht = h.transform(m.matrix());
    if (ct.coeff(Exponents{0, 4, 0}).is_zero() || ht.coeff(Exponents{0, 3, 0}).is_zero()) continue;
    std::vector<Fe> xs;
    bool ok = true;
    for (const auto& p : pts) {
      const ProjPoint q = mi(p);
      if (q[2].is_zero()) ok = false;
      else xs.push_back(q[0] / q[2]);
    }
    if (!ok || xs[0] == xs[1] || xs[0] == xs[2] || xs[1] == xs[2]) continue;
    UniPoly r = resultant_y(dehomogenize(ct), dehomogenize(ht));
    resultant_degree = r.deg();
    for (const auto& x : xs) {
      const auto [quo, rem] = divmod(r, UniPoly(f, {-x, f.one()}));
      if (!rem.is_zero()) {
        ok = false;
        break;
      }
      r = quo;
    }
    if (ok) section_degree = r.deg();
  }
  rep.stage("hyperplane_section_degree", section_degree == 9,
            {{"degree", section_degree}, {"resultant_degree", resultant_degree}, {"expected", "12 - 3 = 9"}});
  return rep;
}

PipelineReport sextic_dp_forward(uint64_t seed, const Field& f) {
  return resample(seed, "sextic_dp_forward", kResampleCap, [&](Rng& rng, int attempt) {
    const PointConfig p = distinct_random_points(2, 14, f, rng);
    const LinearSystem q = build_system(2, 4, simple(p), f);
    if (q.dim() != 1) throw GeneralityFailure("quartics through 14 points are not unique");
    PipelineReport rep = sextic_dp_from(q[0], {p[0], p[1], p[2]}, rng);
    PipelineReport out("sextic_dp_forward", seed, f, "forward");
    out.set_attempts(attempt);
    out.absorb(rep, "");
    return out;
  });
}

// ---------------------------------------------------------------------------

bool is_smooth_p1p1(const BiForm& f) {
  if (f.second_vars() != 2) throw std::invalid_argument("is_smooth_p1p1: need a form on P^1 x P^1");
  const Field& k = f.field();
  std::vector<BiForm> fs{f};
  for (int v = 0; v < 4; ++v) fs.push_back(f.partial(v));

  // t = 0: the points (1 : 0) x (u : 1) and the corner (1 : 0) x (1 : 0)
  std::vector<UniPoly> tline, vline;
  bool corner = true;
  for (const auto& g : fs) {
    Vec a, b;
    for (int j = 0; j <= g.b(); ++j) a.push_back(g.at(0, static_cast<size_t>(g.b() - j)));
    for (int i = 0; i <= g.a(); ++i) b.push_back(g.at(g.a() - i, 0));
    tline.emplace_back(k, a);
    vline.emplace_back(k, b);  // v = 0: the points (s : 1) x (1 : 0)
    corner = corner && g.at(0, 0).is_zero();
  }
  if (corner || common_root_uni(tline) || common_root_uni(vline)) return false;
  std::vector<BiPoly> aff;
  for (const auto& g : fs)
    if (!g.is_zero()) aff.push_back(chart_p1p1(g));
  return !common_zero_affine(aff);
}

PipelineReport p1p1_dp_forward(uint64_t seed, const Field& f) {
  return resample(seed, "p1p1_dp_forward", kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep("p1p1_dp_forward", seed, f, "forward");
    rep.set_attempts(attempt);
    BiForm c(f, 2, 3, 2);
    for (int i = 0; i <= 2; ++i)
      for (size_t j = 0; j < 4; ++j) c.at(i, j) = f.random(rng);
    if (!is_smooth_p1p1(c)) throw GeneralityFailure("the (2,3) curve is singular");
    rep.stage("curve_smooth", true, {{"bidegree", {2, 3}}});
    const auto emb = p1p1_22(f);
    rep.stage("embedding", emb.size() == 9, {{"forms", emb.size()}, {"target", emb.size() - 1}});

    std::vector<ProjPoint> surf;
    for (int i = 0; i < 60; ++i)
      surf.push_back(apply_biforms(emb, random_point(1, f, rng).coords(), random_point(1, f, rng).coords()));
    const LinearSystem quad = build_system(8, 2, simple(surf), f);
    rep.stage("surface_quadrics", quad.dim() == 20, {{"dim", quad.dim()}, {"expected", "45 - 25 = 20"}});

    std::vector<ProjPoint> curve;
    for (int guard = 0; curve.size() < 12; ++guard) {
      if (guard > 100000) throw GeneralityFailure("too few rational points on the curve");
      const Fe s0 = f.random(rng);
      Vec cu(4, f.zero());
      for (size_t j = 0; j < 4; ++j)
        for (int i = 0; i <= 2; ++i) cu[3 - j] += c.at(i, j) * s0.pow(static_cast<uint64_t>(2 - i));
      for (const auto& u : roots(UniPoly(f, cu))) {
        const Vec first{s0, f.one()}, second{u, f.one()};
        if (!c.evaluate(first, second).is_zero()) throw std::logic_error("p1p1_dp_forward: root off the curve");
        const ProjPoint p = apply_biforms(emb, first, second);
        if (std::find(curve.begin(), curve.end(), p) == curve.end() && curve.size() < 12) curve.push_back(p);
      }
    }
    bool on = true;
    for (const auto& p : curve)
      for (const auto& g : quad.basis()) on = on && g.evaluate(p.coords()).is_zero();
    rep.stage("curve_on_surface", on, {{"points", curve.size()}});

    BiForm h(f, 2, 2, 2);
    for (int i = 0; i <= 2; ++i)
      for (size_t j = 0; j < 3; ++j) h.at(i, j) = f.random(rng);
    const BiPoly cb = chart_p1p1(c), hb = chart_p1p1(h);
    int deg = -1;
    if (deg_y(cb) == 3 && deg_y(hb) == 2) deg = resultant_y(cb, hb).deg();
    rep.stage("hyperplane_intersection", deg == 10, {{"degree", deg}, {"expected", "2*3 + 2*2 = 10"}});
    return rep;
  });
}

// ---------------------------------------------------------------------------

Veronese9Result veronese9_count(uint64_t seed, const Field& f) {
  if (f.characteristic() == 3 || f.kind() == FieldKind::rational)
    throw std::invalid_argument("veronese9_count: need a finite field of characteristic other than 3");
  return resample(seed, "veronese9_count", kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep("veronese9", seed, f, "forward");
    rep.set_attempts(attempt);
    const PointConfig q = random_config(2, 9, f, rng);
    const PlaneCubic e = cubic_through(q);
    const bool char2 = f.characteristic() == 2;
    // in characteristic 2 the curve is supersingular iff a1 = 0
    const bool ordinary = !char2 || !e.weierstrass().a1.is_zero();
    rep.stage("cubic_through", true, {{"flex_field_degree", e.field().degree() / f.degree()}, {"ordinary", ordinary}});
    rep.note("ordinary", ordinary);

    std::vector<ProjPoint> qs;
    for (const auto& p : q.points()) qs.push_back(e.base_point(p));
    const DivisorClass d = class_of(e, {qs[0], qs[1], qs[2]});
    const DivisorClass l = scale(e, d, 2);
    const auto roots = sqrt_classes(e, l);
    const Field w = roots.front().rep.field();
    const PlaneCubic ew = e.extend(w);
    const Embedding up(e.field(), w);
    const DivisorClass lw{l.degree, l.rep.lift(up)};
    for (auto& p : qs) p = p.lift(up);
    const auto tors = two_torsion(ew);
    bool doubling = true;
    for (const auto& m : roots) doubling = doubling && add(ew, m, m) == lw;
    rep.stage("square_roots", doubling && roots.size() == tors.size(),
              {{"count", roots.size()}, {"two_torsion", tors.size()}, {"field_degree", w.degree() / f.degree()}});

    auto sections_avoiding = [&](const DivisorClass& m, const std::vector<ProjPoint>& avoid) {
      for (int i = 0; i < 8; ++i) {
        ClassSections s = sections_of_class(ew, m, rng);
        bool clash = false;
        for (const auto& a : s.aux) clash = clash || std::find(avoid.begin(), avoid.end(), a) != avoid.end();
        if (!clash) return s;
      }
      throw AuxiliaryCollision("auxiliary divisor meets the marked points");
    };
    std::vector<ProjPoint> marks = qs;
    for (int i = 0; i < 10; ++i) marks.push_back(ew.random_point(rng));
    const ClassSections sl = sections_avoiding(lw, marks);
    PointConfig p5(w, 5);
    for (const auto& p : qs) p5.push_back(map_by(sl, p));
    rep.stage("nine_points_in_P5", in_general_position(p5), {{"points", p5.size()}});

    const RationalMap nu2 = veronese(w, 2, 2);
    std::vector<LinearSystem> slices;
    int idx = 0;
    for (const auto& m : roots) {
      const ClassSections sm = sections_avoiding(m, marks);
      PointConfig src(w, 5), dst(w, 5);
      for (size_t i = 9; i < marks.size(); ++i) {
        src.push_back(nu2(map_by(sm, marks[i])));
        dst.push_back(map_by(sl, marks[i]));
      }
      if (!in_general_position(src.slice(0, 7)) || !in_general_position(dst.slice(0, 7)))
        throw GeneralityFailure("sample points do not frame P^5");
      const auto g = fit_projectivity(src, dst);
      json det = {{"class", m.to_json()}, {"fit", g.has_value()}};
      bool ok = g.has_value();
      if (g) {
        size_t on = 0;
        for (size_t i = 0; i < 9; ++i) on += (*g)(nu2(map_by(sm, qs[i]))) == p5[i];
        std::vector<ProjPoint> sample;
        for (int i = 0; i < 30; ++i) sample.push_back((*g)(nu2(random_point(2, w, rng))));
        slices.push_back(build_system(5, 2, simple(sample), w));
        det["on_surface"] = on;
        det["quadric_slice_dim"] = slices.back().dim();
        ok = ok && on == 9 && slices.back().dim() == 6;
      }
      rep.stage("surface_" + std::to_string(idx++), ok, det);
    }
    std::vector<size_t> reps;
    for (size_t i = 0; i < slices.size(); ++i) {
      bool fresh = true;
      for (size_t j : reps) fresh = fresh && !(slices[i] == slices[j]);
      if (fresh) reps.push_back(i);
    }
    const int count = static_cast<int>(reps.size());
    rep.stage("pairwise_distinct", reps.size() == slices.size(), {{"distinct", count}});
    rep.stage("count_matches_two_torsion", count == static_cast<int>(tors.size()),
              {{"count", count}, {"expected", char2 ? (ordinary ? 2 : 1) : 4}});
    rep.note("count", count);
    return Veronese9Result{count, static_cast<int>(tors.size()), rep};
  });
}

// ---------------------------------------------------------------------------

SingularTriad singular_triad_for(const PointConfig& cfg, Rng& rng, PipelineReport& rep) {
  if (cfg.ambient() != 2 || cfg.size() != 13) throw std::invalid_argument("singular_triad_for: need 13 points of P^2");
  const Field& k = cfg.field();
  LinearSystem pencil = build_system(2, 4, simple(cfg), k);
  rep.stage("quartic_pencil", pencil.dim() == 2, {{"dim", pencil.dim()}});
  if (pencil.dim() != 2) throw GeneralityFailure("quartics through the 13 points do not form a pencil");

  const ResidualBaseLocus r = pencil_residual_points(pencil, cfg, rng);
  const Triad& res = r.residual;
  bool disjoint = true;
  for (const auto& p : cfg.points())
    for (const auto& t : res.points) disjoint = disjoint && p.lift(res.embedding()) != t;
  const bool noncollinear = res.noncollinear();
  if (!noncollinear || !disjoint) throw GeneralityFailure("residual triad is collinear or meets the configuration");
  rep.stage("residual_triad", true,
            {{"orbit", res.orbit}, {"noncollinear", noncollinear}, {"disjoint", disjoint},
             {"resultant_degree", r.resultant_degree}, {"split_degree", res.split.degree() / k.degree()}});

  RationalMap alpha = cremona_from_triad(res);
  Triad t = exceptional_triad(res, alpha);
  PointConfig moved = alpha(cfg);
  rep.stage("cremona_involution", cremona_involution_check(res, 20, rng), {{"samples", 20}});

  std::vector<BaseCondition> conds = t.conditions(2);
  for (const auto& p : moved.points()) conds.push_back({p, 1});
  LinearSystem quintics = build_system(2, 5, conds, k);
  rep.stage("singular_triad_h0", quintics.dim() == 2, {{"dim", quintics.dim()}, {"triad_orbit", t.orbit}});
  return SingularTriad{std::move(pencil), res, std::move(alpha), std::move(t), std::move(moved), std::move(quintics)};
}

namespace {

std::string association_name(int aux) {
  return aux == 0 ? "veronese13" : aux == 1 ? "delpezzo8" : "delpezzo7";
}

// Sextics triple at t (through the aux points), mapped onto cfg from b.
void finish_association(AssociationResult& out, const PointConfig& b, const Triad& t,
                        const std::vector<ProjPoint>& auxp, const PointConfig& target, PipelineReport& rep) {
  const Field& k = b.field();
  const int aux = static_cast<int>(auxp.size());
  const LinearSystem w = build_system(2, 6, t.conditions(3), k);
  rep.stage("sextics_triple", w.dim() == 10, {{"dim", w.dim()}});
  rep.stage("symcube", symcube_certificate(w, t));
  LinearSystem ws = w;
  if (aux > 0) {
    ws = w.subsystem(simple(auxp));
    rep.stage("aux_subsystem", static_cast<int>(ws.dim()) == 10 - aux, {{"dim", ws.dim()}, {"expected", 10 - aux}});
  }
  if (ws.dim() < 2) return;
  const RationalMap phi = map_of(ws);
  PointConfig img(k, phi.target());
  try {
    img = phi(b);
  } catch (const IndeterminatePoint& e) {
    rep.stage("image", false, {{"error", e.what()}});
    return;
  }
  if (img.ambient() != target.ambient()) {
    rep.stage("image", false, {{"ambient", img.ambient()}});
    return;
  }
  rep.stage("association_witness", verify_association(b, img).has_value());
  const auto fit = fit_projectivity(img, target);
  const int n = target.ambient();
  rep.stage("final_fit", fit.has_value(),
            {{"determined_by", n + 2}, {"exact_checks", static_cast<int>(target.size()) - (n + 2)}});
  if (!fit) return;
  RationalMap surface = after(*fit, phi);
  size_t on = 0;
  for (size_t i = 0; i < b.size(); ++i) on += surface(b[i]) == target[i];
  rep.stage("points_on_surface", on == target.size(), {{"on", on}, {"of", target.size()}});
  out.surface = std::move(surface);
  out.fit = *fit;
}

}  // namespace

AssociationResult association_forward(uint64_t seed, const Field& f, int aux) {
  if (aux < 0 || aux > 2) throw std::invalid_argument("association_forward: aux must be 0, 1 or 2");
  const std::string name = association_name(aux);
  const int n = 9 - aux;
  const size_t gamma = static_cast<size_t>(13 - aux);
  return resample(seed, name, kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep(name, seed, f, "forward");
    rep.set_attempts(attempt);
    const PointConfig g13 = random_config(2, 13, f, rng);
    const std::vector<ProjPoint> auxpts(g13.points().begin() + static_cast<long>(gamma), g13.points().end());
    const LinearSystem v = build_system(2, 3, simple(auxpts), f);
    if (static_cast<int>(v.dim()) != n + 1) throw GeneralityFailure("auxiliary points impose dependent conditions");
    const Projectivity g = Projectivity::random(f, n, rng);
    const PointConfig cfg = g(map_of(v)(g13.slice(0, gamma)));
    if (!in_general_position(cfg)) throw GeneralityFailure("input configuration not in general position");
    rep.stage("input", true, {{"points", gamma}, {"ambient", n}});
    rep.note("input", cfg.to_json());
    rep.note("preimage", g13.to_json());

    const PointConfig b = associate(cfg);
    rep.stage("associate", b.ambient() == 2 && b.size() == gamma, {{"ambient", b.ambient()}, {"points", b.size()}});
    const SingularTriad st = singular_triad_for(g13, rng, rep);

    AssociationResult out{cfg, std::nullopt, std::nullopt, rep};
    const auto h = fit_projectivity(st.transported.slice(0, gamma), b);
    out.report.stage("transport_to_associated", h.has_value());
    if (!h) return out;
    const Embedding e = st.triad.embedding();
    const Projectivity hl(lift_matrix(h->matrix(), e));
    std::array<ProjPoint, 3> tp{hl(st.triad.points[0]), hl(st.triad.points[1]), hl(st.triad.points[2])};
    std::sort(tp.begin(), tp.end());
    const Triad tt{f, st.triad.split, tp, orbit_pattern(f, tp)};
    std::vector<ProjPoint> auxp;
    for (size_t i = gamma; i < 13; ++i) auxp.push_back((*h)(st.transported[i]));
    out.report.note("triad", tt.to_json());
    finish_association(out, b, tt, auxp, cfg, out.report);
    return out;
  });
}

AssociationResult association_literal(const PointConfig& cfg, uint64_t seed, int aux) {
  if (aux < 0 || aux > 2) throw std::invalid_argument("association_literal: aux must be 0, 1 or 2");
  const size_t gamma = static_cast<size_t>(13 - aux);
  if (cfg.ambient() != 9 - aux || cfg.size() != gamma)
    throw BadLength("association_literal: need " + std::to_string(gamma) + " points of P^" + std::to_string(9 - aux));
  const Field& f = cfg.field();
  const std::string name = association_name(aux);
  return resample(seed, name, kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep(name, seed, f, "literal");
    rep.set_attempts(attempt);
    const PointConfig b = associate(cfg);
    rep.stage("associate", b.ambient() == 2 && b.size() == gamma, {{"ambient", b.ambient()}, {"points", b.size()}});
    PointConfig g13 = b;
    while (g13.size() < 13) g13.push_back(random_point(2, f, rng));
    if (!in_general_position(g13)) throw GeneralityFailure("associated points with auxiliaries not general");
    const SingularTriad st = singular_triad_for(g13, rng, rep);
    AssociationResult out{cfg, std::nullopt, std::nullopt, rep};
    const std::vector<ProjPoint> auxp(st.transported.points().begin() + static_cast<long>(gamma),
                                      st.transported.points().end());
    out.report.note("triad", st.triad.to_json());
    finish_association(out, st.transported.slice(0, gamma), st.triad, auxp, cfg, out.report);
    return out;
  });
}

// ---------------------------------------------------------------------------

DegenerateTriadResult degenerate_triad_config(uint64_t seed, const Field& f) {
  return resample(seed, "triad_degenerate", kResampleCap, [&](Rng& rng, int attempt) {
    PipelineReport rep("triad_degenerate", seed, f, "direct");
    rep.set_attempts(attempt);
    auto nonzero = [&] {
      for (;;) {
        const Fe x = f.random(rng);
        if (!x.is_zero()) return x;
      }
    };
    const Fe z = f.zero(), o = f.one();
    std::array<ProjPoint, 3> vertices{ProjPoint(Vec{z, z, o}), ProjPoint(Vec{z, o, z}), ProjPoint(Vec{o, z, z})};
    const Triad t{f, f, vertices, "1+1+1"};
    rep.stage("vertices_noncollinear", t.noncollinear());

    PointConfig cfg(f, 2);
    for (int side = 0; side < 3; ++side)
      for (int i = 0; i < 2; ++i) {
        const Fe a = nonzero();
        cfg.push_back(ProjPoint(side == 0 ? Vec{o, a, z} : side == 1 ? Vec{o, z, a} : Vec{z, o, a}));
      }
    const ProjPoint p7(Vec{o, nonzero(), nonzero()});
    cfg.push_back(p7);
    const Vec mline{nonzero(), nonzero(), nonzero()};
    const Matrix mk = kernel_basis(Matrix::from_rows(f, {mline}));
    const Vec b1 = mk.row(0), b2 = mk.row(1);
    const HomForm xyz = HomForm::variable(f, 3, 0) * HomForm::variable(f, 3, 1) * HomForm::variable(f, 3, 2);
    const HomForm mform = HomForm::linear(mline);
    if (mform.evaluate(p7.coords()).is_zero()) throw GeneralityFailure("general point on M");
    std::vector<ProjPoint> onm;
    while (onm.size() < 6) {
      const Fe lam = f.random(rng);
      const ProjPoint p(Vec{b1[0] + lam * b2[0], b1[1] + lam * b2[1], b1[2] + lam * b2[2]});
      if (xyz.evaluate(p.coords()).is_zero() || std::find(onm.begin(), onm.end(), p) != onm.end()) continue;
      onm.push_back(p);
    }
    for (const auto& p : onm) cfg.push_back(p);
    for (size_t i = 0; i < cfg.size(); ++i)
      for (size_t j = 0; j < i; ++j)
        if (cfg[i] == cfg[j]) throw GeneralityFailure("repeated point");

    std::vector<BaseCondition> conds = t.conditions(2);
    for (const auto& p : cfg.points()) conds.push_back({p, 1});
    LinearSystem q = build_system(2, 5, conds, f);
    rep.stage("certificate_dim", q.dim() == 2, {{"dim", q.dim()}});

    const std::vector<HomForm> mparam{HomForm::linear(Vec{b1[0], b2[0]}), HomForm::linear(Vec{b1[1], b2[1]}),
                                      HomForm::linear(Vec{b1[2], b2[2]})};
    bool divisible = q.dim() > 0;
    bool structure = q.dim() > 0;
    for (const auto& g : q.basis()) {
      divisible = divisible && g.compose(mparam).is_zero();
      const auto r = g.divide(mform * xyz);
      structure = structure && r && r->evaluate(p7.coords()).is_zero();
    }
    rep.stage("m_divisible", divisible);
    rep.stage("residual_lines_through_general_point", structure);
    rep.note("line_M", json::array({mline[0].to_json(), mline[1].to_json(), mline[2].to_json()}));
    return DegenerateTriadResult{cfg, t, std::move(q), rep};
  });
}

int triad_count_lower_bound() {
  const int pairings = 720 / (2 * 2 * 2);
  return 7 * pairings;
}

PipelineReport triad_count_report() {
  PipelineReport rep("triad_count_lower_bound", 0, Field::prime(2), "bookkeeping");
  const int pairings = 720 / (2 * 2 * 2);
  rep.stage("factor_audit", pairings == 90, {{"value", pairings}, {"formula", "6!/(2!*2!*2!)"}});
  rep.stage("lower_bound", triad_count_lower_bound() == 630, {{"value", triad_count_lower_bound()}});
  rep.note("open_question",
           "6!/(2!2!2!) counts ordered triples of pairs; the unordered count is 15. Whether the pair-to-line "
           "assignment is ordered is not stated, so the bound is reported as given.");
  return rep;
}

PipelineReport oracle_pencil_trial(uint64_t seed) {
  const Field f = Field::prime(101);
  return resample(seed, "oracle_pencil", 400, [&](Rng& rng, int attempt) {
    PipelineReport rep("oracle_pencil", seed, f, "oracle");
    rep.set_attempts(attempt);
    const PointConfig known = distinct_random_points(2, 13, f, rng);
    const LinearSystem pencil = build_system(2, 4, simple(known), f);
    if (pencil.dim() != 2) throw GeneralityFailure("not a pencil");
    const ResidualBaseLocus r = pencil_residual_points(pencil, known, rng);
    if (r.residual.orbit != "1+1+1") throw GeneralityFailure("residual triad does not split");
    rep.stage("pencil", true, {{"dim", pencil.dim()}});
    std::vector<ProjPoint> mine(r.residual.points.begin(), r.residual.points.end());
    std::sort(mine.begin(), mine.end());
    rep.stage("resultant_route", true, {{"points", points_json(mine)}, {"resultant_degree", r.resultant_degree}});
    std::vector<ProjPoint> rest;
    for (const auto& p : bruteforce_base_points(pencil))
      if (std::find(known.points().begin(), known.points().end(), p) == known.points().end()) rest.push_back(p);
    rep.stage("scan", true, {{"points", points_json(rest)}});
    rep.stage("agree", rest == mine);
    return rep;
  });
}

}  // namespace dpi
