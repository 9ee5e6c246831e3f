#include "dpi/linalg.hpp"

#include <boost/multiprecision/gmp.hpp>

namespace dpi {

using boost::multiprecision::mpz_int;

Matrix::Matrix(Field f, size_t rows, size_t cols) : field_(std::move(f)), rows_(rows), cols_(cols) {
  a_.assign(rows * cols, field_.zero());
}

Matrix Matrix::identity(Field f, size_t n) {
  Matrix m(f, n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vec>& rows, size_t cols) {
  if (!rows.empty()) cols = rows[0].size();
  Matrix m(f, rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (size_t j = 0; j < cols; ++j) {
      if (rows[i][j].field() != f) throw FieldMismatch();
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Matrix Matrix::from_ints(Field f, const std::vector<std::vector<int64_t>>& rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) {
    Vec v;
    for (auto x : row) v.push_back(f.from_int(x));
    r.push_back(std::move(v));
  }
  return from_rows(f, r);
}

Vec Matrix::row(size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vec Matrix::col(size_t j) const {
  Vec v;
  v.reserve(rows_);
  for (size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

void Matrix::set_row(size_t i, const Vec& v) {
  if (v.size() != cols_) throw std::invalid_argument("Matrix::set_row: length mismatch");
  for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void Matrix::append_row(const Vec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("Matrix::append_row: length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Fe& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("Matrix-vector product: shape mismatch");
  Vec r(rows_, field_.zero());
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::scaled(const Fe& c) const {
  Matrix r = *this;
  for (auto& x : r.a_) x *= c;
  return r;
}

Matrix Matrix::block(size_t r0, size_t r1, size_t c0, size_t c1) const {
  Matrix b(field_, r1 - r0, c1 - c0);
  for (size_t i = r0; i < r1; ++i)
    for (size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
  return b;
}

Matrix Matrix::vstack(const Matrix& o) const {
  if (rows_ == 0) return o;
  if (o.rows_ == 0) return *this;
  if (cols_ != o.cols_) throw std::invalid_argument("Matrix::vstack: column mismatch");
  Matrix r = *this;
  r.a_.insert(r.a_.end(), o.a_.begin(), o.a_.end());
  r.rows_ += o.rows_;
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (size_t i = 0; i < rows_; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (size_t j2 = 0; j2 < cols_; ++j2) r.push_back((*this)(i, j2).to_json());
    j.push_back(std::move(r));
  }
  return j;
}

namespace {

// Fraction-free (Bareiss) echelon form of a rational matrix after clearing
// denominators row by row. Returns integer rows, pivot columns and the sign
// of the row permutation; the last pivot entry is the determinant of the
// leading minor when square.
struct IntEchelon {
  std::vector<std::vector<mpz_int>> rows;
  std::vector<size_t> pivots;
  int sign = 1;
};

IntEchelon bareiss(const Matrix& m) {
  IntEchelon e;
  const size_t R = m.rows(), C = m.cols();
  e.rows.assign(R, std::vector<mpz_int>(C));
  for (size_t i = 0; i < R; ++i) {
    mpz_int l = 1;
    for (size_t j = 0; j < C; ++j) l = boost::multiprecision::lcm(l, mpz_int(boost::multiprecision::denominator(m(i, j).rational())));
    for (size_t j = 0; j < C; ++j) {
      const Rational& q = m(i, j).rational();
      e.rows[i][j] = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
    }
  }
  auto& a = e.rows;
  mpz_int prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t piv = r;
    while (piv < R && a[piv][c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      e.sign = -e.sign;
    }
    for (size_t i = r + 1; i < R; ++i) {
      for (size_t j = c + 1; j < C; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  return e;
}

Rref rref_rational(const Matrix& m) {
  IntEchelon e = bareiss(m);
  const Field& f = m.field();
  Rref out{Matrix(f, m.rows(), m.cols()), e.pivots.size(), e.pivots};
  const size_t C = m.cols();
  // back substitution on the (small) echelon form
  std::vector<std::vector<Rational>> q(out.rank, std::vector<Rational>(C));
  for (size_t i = 0; i < out.rank; ++i) {
    const mpz_int& lead = e.rows[i][e.pivots[i]];
    for (size_t j = 0; j < C; ++j) q[i][j] = Rational(e.rows[i][j], lead);
  }
  for (size_t i = out.rank; i-- > 0;) {
    const size_t pc = e.pivots[i];
    for (size_t k = 0; k < i; ++k) {
      const Rational factor = q[k][pc];
      if (factor == 0) continue;
      for (size_t j = pc; j < C; ++j) q[k][j] -= factor * q[i][j];
    }
  }
  for (size_t i = 0; i < out.rank; ++i)
    for (size_t j = 0; j < C; ++j) out.form(i, j) = f.from_rational(q[i][j]);
  return out;
}

}  // namespace

Rref rref(const Matrix& m) {
  if (m.field().kind() == FieldKind::rational) return rref_rational(m);
  Rref out{m, 0, {}};
  Matrix& a = out.form;
  const size_t R = a.rows(), C = a.cols();
  size_t r = 0;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t piv = r;
    while (piv < R && a(piv, c).is_zero()) ++piv;
    if (piv == R) continue;
    if (piv != r)
      for (size_t j = c; j < C; ++j) std::swap(a(piv, j), a(r, j));
    const Fe inv = a(r, c).inv();
    for (size_t j = c; j < C; ++j) a(r, j) *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Fe factor = a(i, c);
      for (size_t j = c; j < C; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= factor * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

size_t rank(const Matrix& m) {
  if (m.field().kind() == FieldKind::rational) return bareiss(m).pivots.size();
  return rref(m).rank;
}

Matrix kernel_basis(const Matrix& m) {
  const Rref r = rref(m);
  const size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix k(m.field(), 0, C);
  for (size_t free = 0; free < C; ++free) {
    if (is_pivot[free]) continue;
    Vec v(C, m.field().zero());
    v[free] = m.field().one();
    for (size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.form(i, free);
    k.append_row(v);
  }
  return k;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols(), m.field().zero());
  for (size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.form(i, m.cols());
  return x;
}

Fe det(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix is not square");
  const Field& f = m.field();
  const size_t n = m.rows();
  if (n == 0) return f.one();
  if (f.kind() == FieldKind::rational) {
    IntEchelon e = bareiss(m);
    if (e.pivots.size() < n) return f.zero();
    // undo the per-row denominator clearing
    Rational scale = 1;
    for (size_t i = 0; i < n; ++i) {
      mpz_int l = 1;
      for (size_t j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, mpz_int(boost::multiprecision::denominator(m(i, j).rational())));
      scale *= Rational(l);
    }
    return f.from_rational(Rational(e.rows[n - 1][n - 1] * e.sign) / scale);
  }
  Matrix a = m;
  Fe d = f.one();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (size_t j = c; j < n; ++j) std::swap(a(piv, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    const Fe inv = a(c, c).inv();
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const Fe factor = a(i, c) * inv;
      for (size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return d;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  const Rref r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.form.block(0, n, n, 2 * n);
}

Matrix row_basis(const Matrix& m) {
  const Rref r = rref(m);
  return r.form.block(0, r.rank, 0, m.cols());
}

bool subspace_equal(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return false;
  return row_basis(a) == row_basis(b);
}

bool row_space_contains(const Matrix& a, const Vec& v) {
  Matrix b = a;
  b.append_row(v);
  return rank(b) == rank(a);
}

}  // namespace dpi
