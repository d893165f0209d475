#include "magical/exactla.hpp"

namespace magical {

std::string to_string(const Scalar& s) { return s.get_str(); }

Scalar make_scalar(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::domain_error("vector size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::domain_error("vector size mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator*(const Scalar& c, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::domain_error("matrix shape mismatch");
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::domain_error("matrix shape mismatch");
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::domain_error("matrix shape mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw std::domain_error("matrix/vector mismatch");
  Vector r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) == 0 || v[j] == 0) continue;
      r[i] += at(i, j) * v[j];
    }
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = c * data_[i];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Scalar Matrix::trace() const {
  Scalar t = 0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
  return t;
}

bool Matrix::is_zero_matrix() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t dim) {
  Matrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != dim) throw std::domain_error("column size mismatch");
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::domain_error("row size mismatch");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  Vector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

RrefResult rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;  // next pivot row
  for (std::size_t col = 0; col < m.cols() && pr < m.rows(); ++col) {
    // first nonzero entry at or below pr (deterministic choice)
    std::size_t sel = m.rows();
    for (std::size_t i = pr; i < m.rows(); ++i)
      if (m.at(i, col) != 0) { sel = i; break; }
    if (sel == m.rows()) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(sel, j), m.at(pr, j));
    Scalar inv = 1 / m.at(pr, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(pr, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pr || m.at(i, col) == 0) continue;
      Scalar f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(pr, j);
    }
    pivots.push_back(col);
    ++pr;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vector v(m.cols());
    v[j] = 1;
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
      v[rr.pivots[r]] = -rr.r.at(r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw std::domain_error("solve: shape mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult rr = rref(std::move(aug));
  for (auto p : rr.pivots)
    if (p == a.cols()) return std::nullopt;  // inconsistent
  Vector x(a.cols());
  for (std::size_t r = 0; r < rr.pivots.size(); ++r)
    x[rr.pivots[r]] = rr.r.at(r, a.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse: not square");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RrefResult rr = rref(std::move(aug));
  if (rr.pivots.size() != n || rr.pivots.back() != n - 1)
    throw std::domain_error("inverse: singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.r.at(i, n + j);
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant: not square");
  // fraction-free-ish Gaussian elimination with exact rationals
  Matrix a = m;
  std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i)
      if (a.at(i, col) != 0) { sel = i; break; }
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    Scalar inv = 1 / a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a.at(i, col) == 0) continue;
      Scalar f = a.at(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return det;
}

std::vector<Vector> eigenspace(const Matrix& m, const Scalar& lambda) {
  if (m.rows() != m.cols()) throw std::domain_error("eigenspace: not square");
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted.at(i, i) -= lambda;
  return kernel_basis(shifted);
}

std::vector<Scalar> charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("charpoly: not square");
  std::size_t n = m.rows();
  std::vector<Scalar> c(n + 1);
  c[0] = 1;
  Matrix mk = m;  // M_1
  for (std::size_t k = 1; k <= n; ++k) {
    c[k] = -mk.trace() / Scalar(static_cast<long>(k));
    if (k < n) {
      Matrix adj = mk;
      for (std::size_t i = 0; i < n; ++i) adj.at(i, i) += c[k];
      mk = m * adj;
    }
  }
  return c;
}

Scalar ext_power_trace(const Matrix& m, std::size_t k) {
  if (m.rows() != m.cols())
    throw std::domain_error("ext_power_trace: not square");
  if (k > m.rows()) throw std::out_of_range("ext_power_trace: k > size");
  if (k == 0) return 1;
  // det(tI - M) = sum_k (-1)^k e_k t^{m-k}, so e_k = (-1)^k * coeff.
  std::vector<Scalar> c = charpoly(m);
  return (k % 2 == 0) ? c[k] : -c[k];
}

SpanSolver::SpanSolver(std::vector<Vector> independent_basis)
    : basis_(std::move(independent_basis)) {
  if (basis_.empty()) return;
  ambient_ = basis_[0].size();
  const std::size_t k = basis_.size();
  Matrix bt(k, ambient_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < ambient_; ++j) bt.at(i, j) = basis_[i][j];
  RrefResult rr = rref(bt);
  if (rr.pivots.size() != k)
    throw std::domain_error("SpanSolver: basis is linearly dependent");
  pivot_rows_ = rr.pivots;
  Matrix s(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < k; ++i) s.at(r, i) = basis_[i][pivot_rows_[r]];
  inv_ = inverse(s);
}

std::optional<Vector> SpanSolver::coords(const Vector& v) const {
  if (basis_.empty())
    return is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
  if (v.size() != ambient_)
    throw std::domain_error("SpanSolver: dimension mismatch");
  const std::size_t k = basis_.size();
  Vector sub(k);
  for (std::size_t r = 0; r < k; ++r) sub[r] = v[pivot_rows_[r]];
  Vector c = inv_ * sub;
  Vector acc = zero_vector(ambient_);
  for (std::size_t i = 0; i < k; ++i)
    if (c[i] != 0)
      for (std::size_t j = 0; j < ambient_; ++j) acc[j] += c[i] * basis_[i][j];
  if (!(acc == v)) return std::nullopt;
  return c;
}

std::vector<Vector> span_basis(const std::vector<Vector>& vecs) {
  if (vecs.empty()) return {};
  RrefResult rr = rref(Matrix::from_rows(vecs));
  std::vector<Vector> basis;
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) basis.push_back(rr.r.row(r));
  return basis;
}

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  if (is_zero(v)) return true;
  std::vector<Vector> all = basis;
  all.push_back(v);
  return span_basis(all).size() == span_basis(basis).size();
}

std::optional<Vector> coordinates_in(const std::vector<Vector>& basis,
                                     const Vector& v) {
  if (basis.empty())
    return is_zero(v) ? std::optional<Vector>(Vector{}) : std::nullopt;
  Matrix a = Matrix::from_columns(basis, basis[0].size());
  return solve(a, v);
}

std::vector<Vector> intersect_spans(const std::vector<Vector>& a,
                                    const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t dim = a[0].size();
  // columns [A | -B]; kernel vectors give coefficients with A-part = B-part
  Matrix m(dim, a.size() + b.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = a[j][i];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m.at(i, a.size() + j) = -b[j][i];
  std::vector<Vector> combos = kernel_basis(m);
  std::vector<Vector> result;
  for (const auto& c : combos) {
    Vector v(dim);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (c[j] != 0) v = v + c[j] * a[j];
    result.push_back(std::move(v));
  }
  return span_basis(result);
}

std::vector<Vector> sum_spans(const std::vector<Vector>& a,
                              const std::vector<Vector>& b) {
  std::vector<Vector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return span_basis(all);
}

bool spans_equal(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  return span_basis(a) == span_basis(b);
}

}  // namespace magical
