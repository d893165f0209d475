#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magical/exactla.hpp"

using namespace magical;

namespace {

// Minimal dense polynomial over Scalar, used only as an independent oracle
// for characteristic polynomials via cofactor expansion.
struct Poly {
  std::vector<Scalar> c;  // c[i] = coefficient of t^i
  static Poly constant(const Scalar& s) { return {{s}}; }
  static Poly t_minus(const Scalar& s) { return {{-s, 1}}; }
};

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c.empty() || b.c.empty()) return {};
  Poly r;
  r.c.resize(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

Poly negate(const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

// det(tI - M) by cofactor expansion along the first row.
Poly charpoly_cofactor(const std::vector<std::vector<Poly>>& m) {
  std::size_t n = m.size();
  if (n == 0) return Poly::constant(1);
  if (n == 1) return m[0][0];
  Poly det;
  det.c = {Scalar(0)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * charpoly_cofactor(minor);
    det = det + (j % 2 == 0 ? term : negate(term));
  }
  return det;
}

std::vector<Scalar> charpoly_oracle(const Matrix& m) {
  std::size_t n = m.rows();
  std::vector<std::vector<Poly>> p(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p[i][j] = (i == j) ? Poly::t_minus(m.at(i, j))
                         : Poly::constant(-m.at(i, j));
  Poly det = charpoly_cofactor(p);
  // convert to descending-degree coefficients of length n+1
  std::vector<Scalar> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    out[n - i] = i < det.c.size() ? det.c[i] : Scalar(0);
  return out;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 3);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = make_scalar(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("kernel of zero and identity") {
  Matrix z(2, 2);
  auto kz = kernel_basis(z);
  REQUIRE(kz.size() == 2);
  CHECK(kz[0] == Vector{1, 0});
  CHECK(kz[1] == Vector{0, 1});
  CHECK(kernel_basis(Matrix::identity(2)).empty());
}

TEST_CASE("kernel of rank-1 matrix matches hand reduction") {
  Matrix m(2, 2);
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  m.at(1, 0) = 2; m.at(1, 1) = 4;
  CHECK(rank(m) == 1);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  // (2,-1) up to scale
  CHECK(k[0][0] * Scalar(-1) == k[0][1] * Scalar(2));
  CHECK(!is_zero(k[0]));
  for (const auto& v : k) CHECK(is_zero(m * v));
}

TEST_CASE("rank basics") {
  CHECK(rank(Matrix::identity(3)) == 3);
  CHECK(rank(Matrix(4, 7)) == 0);
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 6;
    Matrix m = random_matrix(rng, n);
    CHECK(rank(m) + kernel_basis(m).size() == n);
    for (const auto& v : kernel_basis(m)) CHECK(is_zero(m * v));
  }
}

TEST_CASE("eigenspace extraction") {
  Matrix d(3, 3);
  d.at(0, 0) = 1; d.at(1, 1) = 1; d.at(2, 2) = 2;
  CHECK(eigenspace(d, 1).size() == 2);
  CHECK(eigenspace(d, 2).size() == 1);
  CHECK(eigenspace(d, 3).empty());
}

TEST_CASE("solve and inverse") {
  Matrix a(2, 2);
  a.at(0, 0) = 1; a.at(0, 1) = 1;
  a.at(1, 0) = 0; a.at(1, 1) = 2;
  auto x = solve(a, Vector{3, 4});
  REQUIRE(x.has_value());
  CHECK(a * *x == Vector{3, 4});
  Matrix ainv = inverse(a);
  CHECK(a * ainv == Matrix::identity(2));

  Matrix sing(2, 2);
  sing.at(0, 0) = 1; sing.at(0, 1) = 2;
  sing.at(1, 0) = 2; sing.at(1, 1) = 4;
  CHECK(!solve(sing, Vector{1, 0}).has_value());
  CHECK_THROWS_AS(inverse(sing), std::domain_error);
}

TEST_CASE("ext_power_trace frozen values") {
  CHECK(ext_power_trace(Matrix::identity(3), 2) == Scalar(3));
  Matrix d(3, 3);
  d.at(0, 0) = 1; d.at(1, 1) = 2; d.at(2, 2) = 3;
  CHECK(ext_power_trace(d, 2) == Scalar(11));  // 1*2 + 1*3 + 2*3
  CHECK(ext_power_trace(d, 0) == Scalar(1));
  CHECK(ext_power_trace(d, 3) == Scalar(6));
  CHECK_THROWS_AS(ext_power_trace(d, 4), std::out_of_range);
}

TEST_CASE("charpoly against cofactor oracle, sizes up to 5") {
  std::mt19937_64 rng(777);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      Matrix m = random_matrix(rng, n);
      CHECK(charpoly(m) == charpoly_oracle(m));
    }
  }
}

TEST_CASE("charpoly sign convention: coeff k is (-1)^k e_k") {
  std::mt19937_64 rng(99);
  Matrix m = random_matrix(rng, 4);
  auto c = charpoly(m);
  CHECK(c[0] == Scalar(1));
  CHECK(c[1] == -m.trace());
  CHECK(c[4] == determinant(m));  // (-1)^4 e_4 = det
  for (std::size_t k = 0; k <= 4; ++k) {
    Scalar ek = ext_power_trace(m, k);
    CHECK(c[k] == (k % 2 == 0 ? ek : -ek));
  }
}

TEST_CASE("determinant vs charpoly constant term") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = random_matrix(rng, 4);
    auto c = charpoly(m);
    CHECK(determinant(m) == c[4]);
  }
}

TEST_CASE("span utilities") {
  std::vector<Vector> vecs = {{1, 2, 0}, {2, 4, 0}, {0, 0, 1}};
  auto b = span_basis(vecs);
  CHECK(b.size() == 2);
  CHECK(in_span(b, Vector{3, 6, 5}));
  CHECK(!in_span(b, Vector{0, 1, 0}));

  auto coords = coordinates_in({{1, 0, 0}, {0, 0, 2}}, Vector{3, 0, 4});
  REQUIRE(coords.has_value());
  CHECK(*coords == Vector{3, 2});

  std::vector<Vector> u = {{1, 0, 0}, {0, 1, 0}};
  std::vector<Vector> w = {{0, 1, 0}, {0, 0, 1}};
  auto inter = intersect_spans(u, w);
  REQUIRE(inter.size() == 1);
  CHECK(in_span(inter, Vector{0, 1, 0}));
  CHECK(sum_spans(u, w).size() == 3);
  CHECK(spans_equal({{1, 1, 0}, {1, -1, 0}}, {{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("matrix multiply and transpose sanity") {
  Matrix a(2, 3);
  a.at(0, 0) = 1; a.at(0, 2) = 2;
  a.at(1, 1) = -1;
  Matrix at = a.transpose();
  CHECK(at.rows() == 3);
  CHECK(at.at(2, 0) == Scalar(2));
  Matrix prod = a * at;
  CHECK(prod.rows() == 2);
  CHECK(prod.at(0, 0) == Scalar(5));
}
