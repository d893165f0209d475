#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace magical {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator), which is what downstream equality tests rely on.
using Scalar = mpq_class;

using Vector = std::vector<Scalar>;

std::string to_string(const Scalar& s);

// mpq_class(num, den) does not canonicalize; this does.
Scalar make_scalar(long num, long den);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& c, const Vector& v);
bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), data_(r * c) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix scaled(const Scalar& c) const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero_matrix() const;

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t dim);
  static Matrix from_rows(const std::vector<Vector>& rows);
  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;

 private:
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Matrix r;                        // reduced row-echelon form
  std::vector<std::size_t> pivots; // pivot column per pivot row, ascending
};

RrefResult rref(Matrix m);

std::size_t rank(const Matrix& m);

// Basis of the null space {v : Mv = 0}. Deterministic: one vector per free
// column in ascending column order, with entry 1 at the free coordinate.
std::vector<Vector> kernel_basis(const Matrix& m);

// One particular solution of Ax = b (free coordinates set to 0), if any.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

Scalar determinant(const Matrix& m);

// kernel_basis(M - lambda*Id); M must be square.
std::vector<Vector> eigenspace(const Matrix& m, const Scalar& lambda);

// Coefficients of det(tI - M) in descending degree: c[0] = 1, c[k] the
// coefficient of t^{m-k}.  Faddeev-LeVerrier recursion, exact.
std::vector<Scalar> charpoly(const Matrix& m);

// k-th elementary symmetric function of the eigenvalues of M,
// i.e. the trace of the k-th exterior power.  k=0 -> 1, k=m -> det.
Scalar ext_power_trace(const Matrix& m, std::size_t k);

// Repeated coordinate solves against a fixed independent spanning set.
// Precomputes a pivot-row inverse once; each query is a small multiply plus
// a full membership verification.
class SpanSolver {
 public:
  SpanSolver() = default;
  explicit SpanSolver(std::vector<Vector> independent_basis);

  std::size_t dim() const { return basis_.size(); }
  // Coordinates of v in the basis, or nullopt when v is outside the span.
  std::optional<Vector> coords(const Vector& v) const;
  bool contains(const Vector& v) const { return coords(v).has_value(); }

 private:
  std::vector<Vector> basis_;
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivot_rows_;
  Matrix inv_;
};

// ---- subspace utilities (spans represented by echelon-reduced bases) ----

// Echelon-reduced basis of the span; deterministic for a given input order.
std::vector<Vector> span_basis(const std::vector<Vector>& vecs);

bool in_span(const std::vector<Vector>& basis, const Vector& v);

// Coordinates of v in the given (independent) spanning set, if v lies in it.
std::optional<Vector> coordinates_in(const std::vector<Vector>& basis,
                                     const Vector& v);

std::vector<Vector> intersect_spans(const std::vector<Vector>& a,
                                    const std::vector<Vector>& b);

std::vector<Vector> sum_spans(const std::vector<Vector>& a,
                              const std::vector<Vector>& b);

bool spans_equal(const std::vector<Vector>& a, const std::vector<Vector>& b);

}  // namespace magical
