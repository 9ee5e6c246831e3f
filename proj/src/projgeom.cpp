#include "dpi/projgeom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dpi {

ProjPoint::ProjPoint(Vec coords) : x_(std::move(coords)) {
  if (x_.empty()) throw DegenerateConfiguration("empty coordinate vector");
  size_t i = 0;
  while (i < x_.size() && x_[i].is_zero()) ++i;
  if (i == x_.size()) throw DegenerateConfiguration("zero vector is not a projective point");
  const Fe inv = x_[i].inv();
  for (size_t j = i; j < x_.size(); ++j) x_[j] *= inv;
}

size_t ProjPoint::chart() const {
  size_t i = 0;
  while (x_[i].is_zero()) ++i;
  return i;
}

bool ProjPoint::operator<(const ProjPoint& o) const {
  return std::lexicographical_compare(x_.begin(), x_.end(), o.x_.begin(), o.x_.end());
}

std::optional<ProjPoint> ProjPoint::contract(const Embedding& e) const {
  Vec c;
  for (const auto& x : x_) {
    auto y = e.contract(x);
    if (!y) return std::nullopt;
    c.push_back(*y);
  }
  return ProjPoint(std::move(c));
}

ProjPoint ProjPoint::frobenius() const {
  Vec c;
  for (const auto& x : x_) c.push_back(x.frobenius());
  return ProjPoint(std::move(c));
}

nlohmann::json ProjPoint::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : x_) j.push_back(x.to_json());
  return j;
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x_.size(); ++i) os << (i ? ":" : "") << x_[i].to_string();
  os << ")";
  return os.str();
}

ProjPoint random_point(int n, const Field& f, Rng& rng) {
  for (;;) {
    Vec c;
    bool nonzero = false;
    for (int i = 0; i <= n; ++i) {
      c.push_back(f.random(rng));
      nonzero = nonzero || !c.back().is_zero();
    }
    if (nonzero) return ProjPoint(std::move(c));
  }
}

PointConfig::PointConfig(Field f, int ambient, std::vector<ProjPoint> pts)
    : field_(std::move(f)), n_(ambient) {
  for (auto& p : pts) push_back(std::move(p));
}

void PointConfig::push_back(ProjPoint p) {
  if (p.ambient() != n_) throw std::invalid_argument("PointConfig: ambient dimension mismatch");
  if (p.field() != field_) throw FieldMismatch();
  pts_.push_back(std::move(p));
}

PointConfig PointConfig::slice(size_t from, size_t to) const {
  return PointConfig(field_, n_, std::vector<ProjPoint>(pts_.begin() + from, pts_.begin() + to));
}

PointConfig PointConfig::lift(const Embedding& e) const {
  PointConfig r(e.sup(), n_);
  for (const auto& p : pts_) r.push_back(p.lift(e));
  return r;
}

Matrix PointConfig::matrix() const {
  Matrix m(field_, 0, n_ + 1);
  for (const auto& p : pts_) m.append_row(p.coords());
  return m;
}

nlohmann::json PointConfig::to_json() const {
  nlohmann::json j;
  j["field"] = field_.to_json();
  j["ambient"] = n_;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : pts_) pts.push_back(p.to_json());
  j["points"] = std::move(pts);
  return j;
}

PointConfig PointConfig::from_json(const nlohmann::json& j) {
  const Field f = Field::from_json(j.at("field"));
  const int n = j.at("ambient").get<int>();
  PointConfig c(f, n);
  for (const auto& p : j.at("points")) {
    if (static_cast<int>(p.size()) != n + 1) throw std::invalid_argument("point has the wrong number of coordinates");
    Vec v;
    for (const auto& x : p) v.push_back(Fe::from_json(f, x));
    c.push_back(ProjPoint(std::move(v)));
  }
  return c;
}

namespace {

bool subset_independent(const PointConfig& cfg, const std::vector<size_t>& idx) {
  Matrix m(cfg.field(), 0, cfg.ambient() + 1);
  for (auto i : idx) m.append_row(cfg[i].coords());
  return rank(m) == idx.size();
}

constexpr size_t kSubsetCap = 20000;

}  // namespace

bool in_general_position(const PointConfig& cfg) {
  const size_t m = cfg.size();
  const size_t k = std::min<size_t>(m, cfg.ambient() + 1);
  if (k == 0) return true;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (cfg[i] == cfg[j]) return false;
  const size_t total = binomial(static_cast<int>(m), static_cast<int>(k));
  if (total <= kSubsetCap) {
    std::vector<bool> sel(m, false);
    std::fill(sel.begin(), sel.begin() + k, true);
    do {
      std::vector<size_t> idx;
      for (size_t i = 0; i < m; ++i)
        if (sel[i]) idx.push_back(i);
      if (!subset_independent(cfg, idx)) return false;
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return true;
  }
  Rng rng(0x9e57'5eedULL);
  std::vector<size_t> all(m);
  std::iota(all.begin(), all.end(), 0);
  for (size_t s = 0; s < kSubsetCap; ++s) {
    for (size_t i = 0; i < k; ++i) std::swap(all[i], all[i + uniform_below(rng, m - i)]);
    if (!subset_independent(cfg, std::vector<size_t>(all.begin(), all.begin() + k))) return false;
  }
  return true;
}

PointConfig random_config(int n, size_t count, const Field& f, Rng& rng) {
  constexpr int kAttempts = 32;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    PointConfig c(f, n);
    for (size_t i = 0; i < count; ++i) c.push_back(random_point(n, f, rng));
    if (in_general_position(c)) return c;
  }
  throw ResampleExhausted("random_config: no configuration in general position after 32 attempts");
}

Fe det3(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  if (a.ambient() != 2 || b.ambient() != 2 || c.ambient() != 2) throw std::invalid_argument("det3: points of P^2 expected");
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) { return det3(a, b, c).is_zero(); }

// ---------------------------------------------------------------- Projectivity

Projectivity::Projectivity(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || det(m_).is_zero()) throw DegenerateConfiguration("projectivity matrix is singular");
}

Projectivity Projectivity::random(const Field& f, int n, Rng& rng) {
  for (;;) {
    Matrix m(f, n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) m(i, j) = f.random(rng);
    if (!det(m).is_zero()) return Projectivity(std::move(m));
  }
}

ProjPoint Projectivity::operator()(const ProjPoint& p) const { return ProjPoint(m_ * p.coords()); }

PointConfig Projectivity::operator()(const PointConfig& c) const {
  PointConfig r(c.field(), c.ambient());
  for (const auto& p : c.points()) r.push_back((*this)(p));
  return r;
}

Projectivity Projectivity::inverse() const { return Projectivity(*dpi::inverse(m_)); }

Matrix Projectivity::normalized() const {
  for (size_t i = 0; i < m_.rows(); ++i)
    for (size_t j = 0; j < m_.cols(); ++j)
      if (!m_(i, j).is_zero()) return m_.scaled(m_(i, j).inv());
  return m_;
}

namespace {

// Matrix sending e_i to points[i] (i <= n) and (1:...:1) to points[n+1].
std::optional<Matrix> frame_matrix(const PointConfig& c) {
  const int n = c.ambient();
  Matrix a(c.field(), n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int r = 0; r <= n; ++r) a(r, i) = c[i][r];
  const auto lam = solve(a, c[n + 1].coords());
  if (!lam || det(a).is_zero()) return std::nullopt;
  for (int i = 0; i <= n; ++i) {
    if ((*lam)[i].is_zero()) return std::nullopt;
    for (int r = 0; r <= n; ++r) a(r, i) *= (*lam)[i];
  }
  return a;
}

}  // namespace

std::optional<Projectivity> fit_projectivity(const PointConfig& src, const PointConfig& dst) {
  const int n = src.ambient();
  if (dst.ambient() != n || src.size() != dst.size()) throw std::invalid_argument("fit_projectivity: shape mismatch");
  if (src.size() < static_cast<size_t>(n + 2)) throw std::invalid_argument("fit_projectivity: need n+2 points");
  const auto fs = frame_matrix(src.slice(0, n + 2));
  const auto fd = frame_matrix(dst.slice(0, n + 2));
  if (!fs || !fd) return std::nullopt;
  const Projectivity t(*fd * *dpi::inverse(*fs));
  for (size_t i = 0; i < src.size(); ++i)
    if (t(src[i]) != dst[i]) return std::nullopt;
  return t;
}

}  // namespace dpi
