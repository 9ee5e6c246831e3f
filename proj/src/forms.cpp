#include <algorithm>
#include <numeric>

#include "dpi/poly.hpp"

namespace dpi {

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(Field sub, Field sup) : sub_(std::move(sub)), sup_(std::move(sup)) {
  if (sub_ == sup_) {
    theta_ = sup_.gen();
    return;
  }
  if (!sub_.is_finite() || !sup_.is_finite() || sub_.characteristic() != sup_.characteristic() ||
      sup_.degree() % sub_.degree() != 0)
    throw std::invalid_argument("Embedding: " + sub_.describe() + " does not embed in " + sup_.describe());
  if (sub_.degree() == 1) {
    theta_ = sup_.one();
  } else {
    Vec mc;
    for (auto c : sub_.modulus()) mc.push_back(sup_.from_coeffs(std::vector<uint64_t>{c}));
    const auto rs = roots(UniPoly(sup_, mc));
    if (rs.empty()) throw Error("Embedding: modulus has no root in the larger field");
    theta_ = rs.front();
  }
  init();
}

Embedding::Embedding(Field sub, Field sup, Fe theta) : sub_(std::move(sub)), sup_(std::move(sup)) {
  if (!sub_.is_finite() || !sup_.is_finite() || sub_.characteristic() != sup_.characteristic() ||
      sup_.degree() % sub_.degree() != 0 || theta.field() != sup_)
    throw std::invalid_argument("Embedding: " + sub_.describe() + " does not embed in " + sup_.describe());
  if (sub_.degree() == 1) {
    theta_ = sup_.one();
  } else {
    Vec mc;
    for (auto c : sub_.modulus()) mc.push_back(sup_.from_coeffs(std::vector<uint64_t>{c}));
    if (!UniPoly(sup_, mc).eval(theta).is_zero()) throw std::invalid_argument("Embedding: theta is not a root");
    theta_ = std::move(theta);
  }
  if (sub_ == sup_) {
    if (theta_ != sup_.gen()) throw std::invalid_argument("Embedding: nontrivial automorphism");
    return;
  }
  init();
}

Embedding Embedding::then(const Embedding& outer) const {
  if (outer.sub_ != sup_) throw FieldMismatch();
  if (sub_ == sup_) return outer;
  if (outer.sub_ == outer.sup_) return *this;
  return Embedding(sub_, outer.sup_, outer(theta_));
}

void Embedding::init() {
  const int a = sub_.degree(), b = sup_.degree();
  m_ = b / a;
  // F_p coordinates of theta^j t^i, column index j + a*i
  const Field fp = sup_.prime_subfield();
  Matrix basis(fp, b, b);
  Fe ti = sup_.one();
  for (int i = 0; i < m_; ++i) {
    Fe tj = ti;
    for (int j = 0; j < a; ++j) {
      const auto c = tj.coeffs();
      for (int r = 0; r < b; ++r) basis(r, j + a * i) = fp.from_coeffs(std::vector<uint64_t>{c[r]});
      tj *= theta_;
    }
    ti *= sup_.gen();
  }
  auto inv = inverse(basis);
  if (!inv) throw Error("Embedding: degenerate basis");
  basis_inv_ = std::move(*inv);
}

Fe Embedding::operator()(const Fe& x) const {
  if (sub_ == sup_) return x;
  if (x.field() != sub_) throw FieldMismatch();
  if (sub_.degree() == 1) return sup_.from_coeffs(std::vector<uint64_t>{x.residue()});
  const auto c = x.coeffs();
  Fe r = sup_.zero();
  for (size_t i = c.size(); i-- > 0;) r = r * theta_ + sup_.from_coeffs(std::vector<uint64_t>{c[i]});
  return r;
}

Vec Embedding::operator()(const Vec& v) const {
  Vec r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back((*this)(x));
  return r;
}

Vec Embedding::coords(const Fe& y) const {
  if (sub_ == sup_) return {y};
  if (y.field() != sup_) throw FieldMismatch();
  const Field fp = sup_.prime_subfield();
  Vec yc;
  for (auto c : y.coeffs()) yc.push_back(fp.from_coeffs(std::vector<uint64_t>{c}));
  const Vec w = basis_inv_ * yc;
  const int a = sub_.degree();
  Vec out;
  for (int i = 0; i < m_; ++i) {
    std::vector<uint64_t> c(a);
    for (int j = 0; j < a; ++j) c[j] = w[j + a * i].residue();
    out.push_back(sub_.from_coeffs(c));
  }
  return out;
}

std::optional<Fe> Embedding::contract(const Fe& y) const {
  const Vec c = coords(y);
  for (size_t i = 1; i < c.size(); ++i)
    if (!c[i].is_zero()) return std::nullopt;
  return c[0];
}

Field common_extension(const Field& a, const Field& b, Rng& rng) {
  if (a.characteristic() != b.characteristic() || !a.is_finite())
    throw std::invalid_argument("common_extension: incompatible fields");
  const int l = std::lcm(a.degree(), b.degree());
  if (a.degree() == l) return a;
  if (b.degree() == l) return b;
  return build_extension(a.characteristic(), l, rng);
}

// ---------------------------------------------------------------- monomials

size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<size_t>(n - k + i) / static_cast<size_t>(i);
  return r;
}

namespace {
void gen_monomials(int nvars, int d, Exponents& cur, int idx, std::vector<Exponents>& out) {
  if (idx == nvars - 1) {
    cur[idx] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[idx] = e;
    gen_monomials(nvars, d - e, cur, idx + 1, out);
  }
}

size_t count_monomials(int nvars, int d) { return binomial(d + nvars - 1, nvars - 1); }
}  // namespace

std::vector<Exponents> monomials(int nvars, int d) {
  std::vector<Exponents> out;
  if (nvars < 1 || d < 0) return out;
  Exponents cur(nvars, 0);
  gen_monomials(nvars, d, cur, 0, out);
  return out;
}

size_t monomial_rank(const Exponents& e) {
  const int n = static_cast<int>(e.size());
  int rem = std::accumulate(e.begin(), e.end(), 0);
  size_t r = 0;
  for (int i = 0; i + 1 < n; ++i) {
    for (int k = rem; k > e[i]; --k) r += count_monomials(n - i - 1, rem - k);
    rem -= e[i];
  }
  return r;
}

// ---------------------------------------------------------------- HomForm

HomForm::HomForm(Field f, int nvars, int degree) : field_(std::move(f)), nvars_(nvars), degree_(degree) {
  if (nvars < 1 || degree < 0) throw std::invalid_argument("HomForm: bad shape");
  c_.assign(count_monomials(nvars, degree), field_.zero());
}

HomForm::HomForm(Field f, int nvars, int degree, Vec coeffs)
    : field_(std::move(f)), nvars_(nvars), degree_(degree), c_(std::move(coeffs)) {
  if (c_.size() != count_monomials(nvars, degree)) throw std::invalid_argument("HomForm: coefficient count");
}

HomForm HomForm::monomial(const Fe& c, const Exponents& e) {
  HomForm f(c.field(), static_cast<int>(e.size()), std::accumulate(e.begin(), e.end(), 0));
  f.set_coeff(e, c);
  return f;
}

HomForm HomForm::variable(const Field& f, int nvars, int i) {
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(f.one(), e);
}

HomForm HomForm::linear(const Vec& l) {
  // degree-1 monomials in grlex-v1 order are x_0, x_1, ..., x_n
  return HomForm(l.at(0).field(), static_cast<int>(l.size()), 1, l);
}

bool HomForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Fe& x) { return x.is_zero(); });
}

HomForm HomForm::operator+(const HomForm& o) const {
  if (nvars_ != o.nvars_ || degree_ != o.degree_) throw std::invalid_argument("HomForm +: shape mismatch");
  HomForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

HomForm HomForm::operator-(const HomForm& o) const {
  if (nvars_ != o.nvars_ || degree_ != o.degree_) throw std::invalid_argument("HomForm -: shape mismatch");
  HomForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

HomForm HomForm::operator-() const {
  HomForm r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

HomForm HomForm::operator*(const HomForm& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("HomForm *: variable count mismatch");
  HomForm r(field_, nvars_, degree_ + o.degree_);
  const auto ma = monomials(nvars_, degree_);
  const auto mb = monomials(nvars_, o.degree_);
  Exponents e(nvars_);
  for (size_t i = 0; i < ma.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < mb.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      for (int k = 0; k < nvars_; ++k) e[k] = ma[i][k] + mb[j][k];
      r.c_[monomial_rank(e)] += c_[i] * o.c_[j];
    }
  }
  return r;
}

HomForm HomForm::operator*(const Fe& c) const {
  HomForm r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

bool HomForm::operator==(const HomForm& o) const {
  return nvars_ == o.nvars_ && degree_ == o.degree_ && c_ == o.c_;
}

HomForm HomForm::pow(int k) const {
  HomForm r = HomForm::monomial(field_.one(), Exponents(nvars_, 0));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Fe HomForm::evaluate(const Vec& pt) const {
  if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("HomForm::evaluate: dimension mismatch");
  std::vector<Vec> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pw[i].push_back(field_.one());
    for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * pt[i]);
  }
  const auto ms = monomials(nvars_, degree_);
  Fe s = field_.zero();
  for (size_t i = 0; i < ms.size(); ++i) {
    if (c_[i].is_zero()) continue;
    Fe t = c_[i];
    for (int k = 0; k < nvars_; ++k)
      if (ms[i][k]) t *= pw[k][ms[i][k]];
    s += t;
  }
  return s;
}

HomForm HomForm::hasse(const Exponents& alpha) const {
  const int order = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (static_cast<int>(alpha.size()) != nvars_) throw std::invalid_argument("HomForm::hasse: dimension mismatch");
  if (order > degree_) return HomForm(field_, nvars_, 0);
  HomForm r(field_, nvars_, degree_ - order);
  const auto ms = monomials(nvars_, degree_);
  Exponents e(nvars_);
  for (size_t i = 0; i < ms.size(); ++i) {
    if (c_[i].is_zero()) continue;
    bool ok = true;
    int64_t coef = 1;
    for (int k = 0; k < nvars_ && ok; ++k) {
      if (ms[i][k] < alpha[k]) ok = false;
      else {
        e[k] = ms[i][k] - alpha[k];
        coef *= static_cast<int64_t>(binomial(ms[i][k], alpha[k]));
      }
    }
    if (ok) r.c_[monomial_rank(e)] += c_[i].scale_int(coef);
  }
  return r;
}

HomForm HomForm::partial(int var) const {
  Exponents a(nvars_, 0);
  a.at(var) = 1;
  return hasse(a);
}

HomForm HomForm::compose(const std::vector<HomForm>& maps) const {
  if (static_cast<int>(maps.size()) != nvars_) throw std::invalid_argument("HomForm::compose: dimension mismatch");
  const int n = maps[0].nvars(), e = maps[0].degree();
  for (const auto& m : maps)
    if (m.nvars() != n || m.degree() != e) throw std::invalid_argument("HomForm::compose: maps differ in shape");
  std::vector<std::vector<HomForm>> pw(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    pw[i].push_back(HomForm::monomial(field_.one(), Exponents(n, 0)));
    for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * maps[i]);
  }
  HomForm r(field_, n, degree_ * e);
  const auto ms = monomials(nvars_, degree_);
  for (size_t i = 0; i < ms.size(); ++i) {
    if (c_[i].is_zero()) continue;
    HomForm t = HomForm::monomial(c_[i], Exponents(n, 0));
    for (int k = 0; k < nvars_; ++k)
      if (ms[i][k]) t = t * pw[k][ms[i][k]];
    r = r + t;
  }
  return r;
}

HomForm HomForm::transform(const Matrix& a) const {
  if (static_cast<int>(a.rows()) != nvars_) throw std::invalid_argument("HomForm::transform: dimension mismatch");
  std::vector<HomForm> lin;
  for (size_t i = 0; i < a.rows(); ++i) lin.push_back(HomForm::linear(a.row(i)));
  return compose(lin);
}

HomForm HomForm::lift(const Embedding& e) const {
  HomForm r(e.sup(), nvars_, degree_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = e(c_[i]);
  return r;
}

std::optional<HomForm> HomForm::divide(const HomForm& g) const {
  if (g.is_zero()) throw DivisionByZero();
  if (g.nvars_ != nvars_) throw std::invalid_argument("HomForm::divide: variable count mismatch");
  if (is_zero()) return HomForm(field_, nvars_, std::max(0, degree_ - g.degree_));
  if (g.degree_ > degree_) return std::nullopt;
  const auto mg = monomials(nvars_, g.degree_);
  size_t lg = 0;
  while (g.c_[lg].is_zero()) ++lg;
  const Fe lgi = g.c_[lg].inv();
  HomForm q(field_, nvars_, degree_ - g.degree_);
  HomForm r = *this;
  const auto mr = monomials(nvars_, degree_);
  for (size_t i = 0; i < mr.size(); ++i) {
    if (r.c_[i].is_zero()) continue;
    Exponents diff(nvars_);
    for (int k = 0; k < nvars_; ++k) {
      diff[k] = mr[i][k] - mg[lg][k];
      if (diff[k] < 0) return std::nullopt;
    }
    const Fe c = r.c_[i] * lgi;
    q.c_[monomial_rank(diff)] += c;
    r = r - HomForm::monomial(c, diff) * g;
  }
  return q;
}

nlohmann::json HomForm::to_json() const {
  nlohmann::json j;
  j["n"] = nvars_ - 1;
  j["d"] = degree_;
  j["order"] = "grlex-v1";
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : c_) c.push_back(x.to_json());
  j["coeffs"] = std::move(c);
  return j;
}

HomForm HomForm::from_json(const Field& f, const nlohmann::json& j) {
  if (j.value("order", std::string("grlex-v1")) != "grlex-v1") throw std::invalid_argument("unknown monomial order");
  Vec c;
  for (const auto& x : j.at("coeffs")) c.push_back(Fe::from_json(f, x));
  return HomForm(f, j.at("n").get<int>() + 1, j.at("d").get<int>(), std::move(c));
}

BiPoly dehomogenize(const HomForm& f) {
  if (f.nvars() != 3) throw std::invalid_argument("dehomogenize: ternary form expected");
  const int d = f.degree();
  std::vector<Vec> cols(d + 1, Vec(d + 1, f.field().zero()));
  const auto ms = monomials(3, d);
  for (size_t i = 0; i < ms.size(); ++i) cols[ms[i][1]][ms[i][0]] = f.coeffs()[i];
  BiPoly out;
  for (auto& c : cols) out.emplace_back(f.field(), std::move(c));
  return out;
}

// ---------------------------------------------------------------- BiForm

BiForm::BiForm(Field f, int a, int b, int second_vars)
    : field_(std::move(f)), a_(a), b_(b), nv_(second_vars) {
  if (a < 0 || b < 0 || (nv_ != 2 && nv_ != 3)) throw std::invalid_argument("BiForm: bad shape");
  nm_ = count_monomials(nv_, b);
  c_.assign(static_cast<size_t>(a + 1) * nm_, field_.zero());
}

bool BiForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Fe& x) { return x.is_zero(); });
}

Fe BiForm::evaluate(const Vec& first, const Vec& second) const {
  if (first.size() != 2 || static_cast<int>(second.size()) != nv_)
    throw std::invalid_argument("BiForm::evaluate: dimension mismatch");
  const auto m2 = monomials(nv_, b_);
  Vec mv;
  for (const auto& e : m2) {
    Fe t = field_.one();
    for (int k = 0; k < nv_; ++k) t *= second[k].pow(static_cast<uint64_t>(e[k]));
    mv.push_back(t);
  }
  Fe s = field_.zero();
  for (int i = 0; i <= a_; ++i) {
    Fe inner = field_.zero();
    for (size_t j = 0; j < nm_; ++j)
      if (!at(i, j).is_zero()) inner += at(i, j) * mv[j];
    if (inner.is_zero()) continue;
    s += inner * first[0].pow(static_cast<uint64_t>(a_ - i)) * first[1].pow(static_cast<uint64_t>(i));
  }
  return s;
}

BiForm BiForm::operator*(const BiForm& o) const {
  if (nv_ != o.nv_) throw std::invalid_argument("BiForm *: shape mismatch");
  BiForm r(field_, a_ + o.a_, b_ + o.b_, nv_);
  const auto m1 = monomials(nv_, b_);
  const auto m2 = monomials(nv_, o.b_);
  Exponents e(nv_);
  for (int i = 0; i <= a_; ++i)
    for (size_t j = 0; j < nm_; ++j) {
      if (at(i, j).is_zero()) continue;
      for (int k = 0; k <= o.a_; ++k)
        for (size_t l = 0; l < o.nm_; ++l) {
          if (o.at(k, l).is_zero()) continue;
          for (int v = 0; v < nv_; ++v) e[v] = m1[j][v] + m2[l][v];
          r.at(i + k, monomial_rank(e)) += at(i, j) * o.at(k, l);
        }
    }
  return r;
}

BiForm BiForm::operator+(const BiForm& o) const {
  if (a_ != o.a_ || b_ != o.b_ || nv_ != o.nv_) throw std::invalid_argument("BiForm +: shape mismatch");
  BiForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

BiForm BiForm::operator*(const Fe& c) const {
  BiForm r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

BiForm BiForm::operator-(const BiForm& o) const {
  if (a_ != o.a_ || b_ != o.b_ || nv_ != o.nv_) throw std::invalid_argument("BiForm -: shape mismatch");
  BiForm r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

BiForm BiForm::partial(int var) const {
  if (var < 0 || var >= 2 + nv_) throw std::invalid_argument("BiForm::partial: bad variable");
  if (var < 2) {
    if (a_ == 0) return BiForm(field_, 0, b_, nv_);
    BiForm r(field_, a_ - 1, b_, nv_);
    for (int i = 0; i <= a_; ++i) {
      // s^(a-i) t^i
      const int es = a_ - i, et = i;
      const int e = var == 0 ? es : et;
      if (e == 0) continue;
      const int ni = var == 0 ? i : i - 1;
      for (size_t j = 0; j < nm_; ++j) r.at(ni, j) += at(i, j).scale_int(e);
    }
    return r;
  }
  const int v = var - 2;
  if (b_ == 0) return BiForm(field_, a_, 0, nv_);
  BiForm r(field_, a_, b_ - 1, nv_);
  const auto ms = monomials(nv_, b_);
  for (size_t j = 0; j < nm_; ++j) {
    if (ms[j][v] == 0) continue;
    Exponents e = ms[j];
    const int k = e[v]--;
    const size_t nj = monomial_rank(e);
    for (int i = 0; i <= a_; ++i) r.at(i, nj) += at(i, j).scale_int(k);
  }
  return r;
}

std::optional<BiForm> BiForm::divide(const BiForm& g) const {
  if (g.b_ != 0) throw std::invalid_argument("BiForm::divide: divisor must only involve the first factor");
  if (g.a_ > a_) return std::nullopt;
  Vec gc;
  for (int i = 0; i <= g.a_; ++i) gc.push_back(g.at(i, 0));
  const HomForm gf(field_, 2, g.a_, gc);
  BiForm r(field_, a_ - g.a_, b_, nv_);
  for (size_t j = 0; j < nm_; ++j) {
    Vec col;
    for (int i = 0; i <= a_; ++i) col.push_back(at(i, j));
    const auto q = HomForm(field_, 2, a_, col).divide(gf);
    if (!q) return std::nullopt;
    for (int i = 0; i <= a_ - g.a_; ++i) r.at(i, j) = q->coeffs()[i];
  }
  return r;
}

}  // namespace dpi
