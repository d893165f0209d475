#include "magical/liealg.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

namespace magical {

namespace {

SparseVec to_sparse(const Vector& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.push_back({i, v[i]});
  return s;
}

// Coefficient of basis index `idx` in a sorted sparse vector.
const Scalar* sparse_coeff(const SparseVec& v, std::size_t idx) {
  auto it = std::lower_bound(
      v.begin(), v.end(), idx,
      [](const SparseTerm& t, std::size_t k) { return t.index < k; });
  if (it == v.end() || it->index != idx) return nullptr;
  return &it->coeff;
}

SparseVec negate_sparse(const SparseVec& v) {
  SparseVec out = v;
  for (auto& t : out) t.coeff = -t.coeff;
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Coordinatizer make_coordinatizer(const std::vector<Matrix>& basis) {
  Coordinatizer c;
  c.mat_size = basis[0].rows();
  c.basis = basis;
  const std::size_t n2 = c.mat_size * c.mat_size;
  const std::size_t d = basis.size();
  Matrix bt(d, n2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < c.mat_size; ++k)
      for (std::size_t l = 0; l < c.mat_size; ++l)
        bt.at(i, k * c.mat_size + l) = basis[i].at(k, l);
  auto rr = rref(bt);
  if (rr.pivots.size() != d)
    throw std::logic_error("realization basis is linearly dependent");
  c.pivot_entries = rr.pivots;
  Matrix s(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t k = c.pivot_entries[r] / c.mat_size;
    std::size_t l = c.pivot_entries[r] % c.mat_size;
    for (std::size_t i = 0; i < d; ++i) s.at(r, i) = basis[i].at(k, l);
  }
  c.inv = inverse(s);
  return c;
}

}  // namespace

Vector sparse_to_dense(const SparseVec& v, std::size_t dim) {
  Vector out = zero_vector(dim);
  for (const auto& t : v) out[t.index] = t.coeff;
  return out;
}

Vector Coordinatizer::coords(const Matrix& m) const {
  if (m.rows() != mat_size || m.cols() != mat_size)
    throw std::domain_error("coordinates: matrix size mismatch");
  const std::size_t d = basis.size();
  Vector sub(d);
  for (std::size_t r = 0; r < d; ++r)
    sub[r] = m.at(pivot_entries[r] / mat_size, pivot_entries[r] % mat_size);
  Vector c = inv * sub;
  Matrix acc(mat_size, mat_size);
  for (std::size_t i = 0; i < d; ++i)
    if (c[i] != 0) acc = acc + basis[i].scaled(c[i]);
  if (!(acc == m))
    throw std::domain_error("coordinates: matrix is outside the algebra");
  return c;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim || y.size() != dim)
    throw std::domain_error("bracket: dimension mismatch");
  std::vector<std::size_t> ynz;
  for (std::size_t j = 0; j < dim; ++j)
    if (y[j] != 0) ynz.push_back(j);
  Vector out = zero_vector(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j : ynz) {
      const Scalar xy = x[i] * y[j];
      for (const auto& t : table[i][j]) out[t.index] += xy * t.coeff;
    }
  }
  return out;
}

Vector LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  return sparse_to_dense(table[i][j], dim);
}

Matrix LieAlgebra::ad(const Vector& x) const {
  if (x.size() != dim) throw std::domain_error("ad: dimension mismatch");
  Matrix a(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j)
      for (const auto& t : table[i][j]) a.at(t.index, j) += x[i] * t.coeff;
  }
  return a;
}

Scalar LieAlgebra::killing(const Vector& x, const Vector& y) const {
  Matrix a = ad(x), b = ad(y);
  Scalar s = 0;
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      if (a.at(k, l) != 0 && b.at(l, k) != 0) s += a.at(k, l) * b.at(l, k);
  return s;
}

Vector LieAlgebra::basis_vector(std::size_t i) const {
  Vector v = zero_vector(dim);
  v[i] = 1;
  return v;
}

Matrix LieAlgebra::realize(const Vector& x) const {
  if (!has_realization())
    throw std::domain_error("realize: no matrix realization");
  Matrix m(rep[0].rows(), rep[0].cols());
  for (std::size_t i = 0; i < dim; ++i)
    if (x[i] != 0) m = m + rep[i].scaled(x[i]);
  return m;
}

Vector LieAlgebra::coordinates(const Matrix& m) const {
  if (!coordinatizer)
    throw std::domain_error("coordinates: no matrix realization");
  return coordinatizer->coords(m);
}

namespace {

void fill_table_from_rep(LieAlgebra& L) {
  L.table.assign(L.dim, std::vector<SparseVec>(L.dim));
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = i + 1; j < L.dim; ++j) {
      Vector c = L.coordinatizer->coords(commutator(L.rep[i], L.rep[j]));
      L.table[i][j] = to_sparse(c);
      L.table[j][i] = negate_sparse(L.table[i][j]);
    }
}

LieAlgebra make_sl(int n) {
  LieAlgebra L;
  L.name = "sl" + std::to_string(n);
  std::vector<Matrix> basis;
  auto unit = [&](int i, int j) {
    Matrix m(n, n);
    m.at(i, j) = 1;
    return m;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      basis.push_back(unit(i, j));
      L.labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
  for (int k = 0; k + 1 < n; ++k) {
    Matrix m(n, n);
    m.at(k, k) = 1;
    m.at(k + 1, k + 1) = -1;
    basis.push_back(m);
    L.labels.push_back("H" + std::to_string(k + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      basis.push_back(unit(i, j));
      L.labels.push_back("E" + std::to_string(i + 1) + "," + std::to_string(j + 1));
    }
  L.rep = basis;
  L.dim = basis.size();
  assert(L.dim == static_cast<std::size_t>(n) * n - 1);
  L.coordinatizer = make_coordinatizer(basis);
  fill_table_from_rep(L);
  return L;
}

// {X : X^T J + J X = 0} for the anti-diagonal form J.
LieAlgebra make_form_algebra(const std::string& family, int n,
                             const std::vector<int>& jsign) {
  const std::size_t N = jsign.size();
  Matrix constraint(N * N, N * N);
  // (X^T J + J X)[a][b]: X[k][a] gets J[k][b], X[k][b] gets J[a][k];
  // J[i][j] = jsign[i] when j == N-1-i.
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      std::size_t row = a * N + b;
      constraint.at(row, (N - 1 - b) * N + a) += jsign[N - 1 - b];
      constraint.at(row, (N - 1 - a) * N + b) += jsign[a];
    }
  auto ker = kernel_basis(constraint);
  LieAlgebra L;
  L.name = family + std::to_string(n);
  for (std::size_t i = 0; i < ker.size(); ++i) {
    Matrix m(N, N);
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t l = 0; l < N; ++l) m.at(k, l) = ker[i][k * N + l];
    L.rep.push_back(m);
    L.labels.push_back("b" + std::to_string(i + 1));
  }
  L.dim = L.rep.size();
  L.coordinatizer = make_coordinatizer(L.rep);
  fill_table_from_rep(L);
  return L;
}

}  // namespace

LieAlgebra make_classical(const std::string& family, int size) {
  if (family == "sl") {
    if (size < 2) throw std::domain_error("make_classical: sl needs size >= 2");
    return make_sl(size);
  }
  if (family == "so") {
    if (size < 3) throw std::domain_error("make_classical: so needs size >= 3");
    std::vector<int> jsign(size, 1);
    auto L = make_form_algebra("so", size, jsign);
    assert(L.dim == static_cast<std::size_t>(size) * (size - 1) / 2);
    return L;
  }
  if (family == "sp") {
    if (size < 2 || size % 2 != 0)
      throw std::domain_error("make_classical: sp needs even size >= 2");
    std::vector<int> jsign(size);
    for (int i = 0; i < size; ++i) jsign[i] = i < size / 2 ? 1 : -1;
    auto L = make_form_algebra("sp", size, jsign);
    assert(L.dim == static_cast<std::size_t>(size / 2) * (size + 1));
    return L;
  }
  throw std::domain_error("make_classical: unknown family " + family);
}

namespace {

std::string root_label(const Root& r, bool negative) {
  std::ostringstream os;
  os << (negative ? "f(" : "e(");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) os << ",";
    os << r[i];
  }
  os << ")";
  return os.str();
}

// Coroot of beta in the basis of simple coroots; entries are integers.
Vector coroot_coords(const RootSystem& rs, const Root& beta) {
  long norm = rs.form(beta, beta);
  Vector c(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    Scalar v = make_scalar(2L * beta[i] * rs.d[i], norm);
    if (v.get_den() != 1)
      throw std::logic_error("coroot coordinates not integral");
    c[i] = v;
  }
  return c;
}

std::once_flag jacobi_registry_once;
std::set<std::pair<char, int>>* jacobi_registry;
std::mutex jacobi_registry_mutex;

bool jacobi_already_verified(char type, int rank) {
  std::call_once(jacobi_registry_once,
                 [] { jacobi_registry = new std::set<std::pair<char, int>>; });
  std::lock_guard<std::mutex> lock(jacobi_registry_mutex);
  return jacobi_registry->count({type, rank}) > 0;
}

void jacobi_mark_verified(char type, int rank) {
  std::lock_guard<std::mutex> lock(jacobi_registry_mutex);
  jacobi_registry->insert({type, rank});
}

}  // namespace

LieAlgebra make_chevalley(const RootSystem& rs) {
  auto rs_ptr = std::make_shared<RootSystem>(rs);
  auto chev = std::make_shared<ChevalleyTable>(chevalley_constants(*rs_ptr));
  const std::size_t r = rs_ptr->rank;
  const std::size_t p = rs_ptr->num_positive();

  LieAlgebra L;
  L.name = std::string(1, rs_ptr->type) + std::to_string(rs_ptr->rank);
  L.dim = r + 2 * p;
  L.root_system = rs_ptr;
  L.chevalley = chev;
  for (std::size_t i = 0; i < r; ++i)
    L.labels.push_back("h" + std::to_string(i + 1));
  for (std::size_t k = 0; k < p; ++k)
    L.labels.push_back(root_label(rs_ptr->positive[k], false));
  for (std::size_t k = 0; k < p; ++k)
    L.labels.push_back(root_label(rs_ptr->positive[k], true));

  auto signed_root = [&](std::size_t s) {
    Root root = rs_ptr->positive[s % p];
    if (s >= p)
      for (auto& c : root) c = -c;
    return root;
  };
  auto signed_index = [&](const Root& root) -> std::size_t {
    auto it = rs_ptr->positive_index.find(root);
    if (it != rs_ptr->positive_index.end()) return it->second;
    Root neg = root;
    for (auto& c : neg) c = -c;
    return rs_ptr->positive_index.at(neg) + p;
  };

  L.table.assign(L.dim, std::vector<SparseVec>(L.dim));
  // [h_i, e_s]
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t s = 0; s < 2 * p; ++s) {
      Root root = signed_root(s);
      int w = rs_ptr->pairing(root, static_cast<int>(i));
      if (w == 0) continue;
      L.table[i][r + s] = {{r + s, Scalar(w)}};
      L.table[r + s][i] = {{r + s, Scalar(-w)}};
    }
  // [e_s, e_t]
  for (std::size_t s = 0; s < 2 * p; ++s)
    for (std::size_t t = 0; t < 2 * p; ++t) {
      if (s == t) continue;
      Root a = signed_root(s), b = signed_root(t);
      Root sum(a.size());
      bool zero = true;
      for (std::size_t k = 0; k < a.size(); ++k) {
        sum[k] = a[k] + b[k];
        if (sum[k] != 0) zero = false;
      }
      if (zero) {
        // [e_b, f_b] = h_b for positive b
        Vector c = coroot_coords(*rs_ptr, s < p ? a : b);
        SparseVec sv = to_sparse(c);
        if (s >= p)
          for (auto& term : sv) term.coeff = -term.coeff;
        L.table[r + s][r + t] = sv;
      } else if (rs_ptr->is_root(sum)) {
        long nconst = chev->constant(static_cast<int>(s), static_cast<int>(t));
        if (nconst == 0) throw std::logic_error("missing structure constant");
        L.table[r + s][r + t] = {{r + signed_index(sum), Scalar(nconst)}};
      }
    }

  if (!jacobi_already_verified(rs_ptr->type, rs_ptr->rank)) {
    bool ok = L.dim <= 78 ? jacobi_holds_exhaustive(L)
                          : jacobi_holds_sampled(L, 100000, 0x5eed);
    if (!ok)
      throw std::logic_error("structure constants fail the Jacobi identity");
    jacobi_mark_verified(rs_ptr->type, rs_ptr->rank);
  }
  return L;
}

// ---- Killing form ----

Matrix killing_gram(const LieAlgebra& L) {
  const std::size_t d = L.dim;
  Matrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Scalar s = 0;
      for (std::size_t l = 0; l < d; ++l)
        for (const auto& t : L.table[i][l])
          if (const Scalar* c = sparse_coeff(L.table[j][t.index], l))
            s += t.coeff * *c;
      g.at(i, j) = s;
      g.at(j, i) = s;
    }
  return g;
}

Matrix killing_pairings(const LieAlgebra& L, const std::vector<Vector>& left,
                        const std::vector<Vector>& right) {
  std::vector<Matrix> lads, rads;
  for (const auto& v : left) lads.push_back(L.ad(v));
  for (const auto& v : right) rads.push_back(L.ad(v));
  Matrix g(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      Scalar s = 0;
      for (std::size_t k = 0; k < L.dim; ++k)
        for (std::size_t l = 0; l < L.dim; ++l)
          if (lads[i].at(k, l) != 0 && rads[j].at(l, k) != 0)
            s += lads[i].at(k, l) * rads[j].at(l, k);
      g.at(i, j) = s;
    }
  return g;
}

std::vector<Vector> killing_orthocomplement(const LieAlgebra& L,
                                            const Matrix& gram,
                                            const std::vector<Vector>& span) {
  std::vector<Vector> rows;
  for (const auto& v : span) {
    Vector row = zero_vector(L.dim);
    for (std::size_t j = 0; j < L.dim; ++j)
      for (std::size_t k = 0; k < L.dim; ++k)
        if (v[k] != 0 && gram.at(k, j) != 0) row[j] += v[k] * gram.at(k, j);
    rows.push_back(row);
  }
  if (rows.empty()) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < L.dim; ++i) all.push_back(L.basis_vector(i));
    return all;
  }
  return kernel_basis(Matrix::from_rows(rows));
}

// ---- subalgebras ----

namespace {

bool bracket_closed(const LieAlgebra& L, const std::vector<Vector>& basis) {
  if (basis.size() < 2) return true;
  SpanSolver solver(basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!solver.contains(L.bracket(basis[i], basis[j]))) return false;
  return true;
}

}  // namespace

Subalgebra make_subalgebra(const LieAlgebra& L, const std::vector<Vector>& generators,
                           bool require_closed) {
  Subalgebra s;
  s.host = &L;
  s.basis = span_basis(generators);
  if (require_closed) {
    if (!bracket_closed(L, s.basis))
      throw std::domain_error("make_subalgebra: span is not bracket-closed");
    s.closed = true;
  }
  return s;
}

Subalgebra centralizer(const LieAlgebra& L, const std::vector<Vector>& elements) {
  Matrix k = Matrix::identity(L.dim);
  for (const auto& s : elements) {
    if (k.cols() == 0) break;
    auto ker = kernel_basis(L.ad(s) * k);
    k = k * Matrix::from_columns(ker, k.cols());
  }
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < k.cols(); ++j) cols.push_back(k.column(j));
  Subalgebra s;
  s.host = &L;
  s.basis = span_basis(cols);
  if (!bracket_closed(L, s.basis))
    throw std::logic_error("centralizer: closure verification failed");
  s.closed = true;
  return s;
}

Subalgebra center(const LieAlgebra& L) {
  std::vector<Vector> all;
  for (std::size_t i = 0; i < L.dim; ++i) all.push_back(L.basis_vector(i));
  return centralizer(L, all);
}

Subalgebra derived_subalgebra(const LieAlgebra& L) {
  std::vector<Vector> brackets;
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = i + 1; j < L.dim; ++j)
      if (!L.table[i][j].empty())
        brackets.push_back(sparse_to_dense(L.table[i][j], L.dim));
  Subalgebra s;
  s.host = &L;
  s.basis = span_basis(brackets);
  if (!bracket_closed(L, s.basis))
    throw std::logic_error("derived_subalgebra: closure verification failed");
  s.closed = true;
  return s;
}

LieAlgebra restrict_to_subalgebra(const Subalgebra& s) {
  if (!s.closed)
    throw std::domain_error("restrict_to_subalgebra: subspace not verified closed");
  const LieAlgebra& host = *s.host;
  LieAlgebra L;
  L.name = host.name + "|sub" + std::to_string(s.basis.size());
  L.dim = s.basis.size();
  for (std::size_t i = 0; i < L.dim; ++i)
    L.labels.push_back("s" + std::to_string(i + 1));
  SpanSolver solver(s.basis);
  L.table.assign(L.dim, std::vector<SparseVec>(L.dim));
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = i + 1; j < L.dim; ++j) {
      auto c = solver.coords(host.bracket(s.basis[i], s.basis[j]));
      if (!c) throw std::logic_error("restrict_to_subalgebra: bracket left span");
      L.table[i][j] = to_sparse(*c);
      L.table[j][i] = negate_sparse(L.table[i][j]);
    }
  if (host.has_realization()) {
    for (const auto& v : s.basis) L.rep.push_back(host.realize(v));
    L.coordinatizer = make_coordinatizer(L.rep);
  }
  return L;
}

// ---- Jacobi verification ----

namespace {

class JacobiChecker {
 public:
  explicit JacobiChecker(const LieAlgebra& l)
      : L(l), scratch(zero_vector(l.dim)) {}

  bool triple(std::size_t i, std::size_t j, std::size_t k) {
    add_term(i, j, k);
    add_term(j, k, i);
    add_term(k, i, j);
    bool ok = true;
    for (std::size_t idx : touched) {
      if (scratch[idx] != 0) ok = false;
      scratch[idx] = 0;
    }
    touched.clear();
    return ok;
  }

 private:
  void add_term(std::size_t a, std::size_t b, std::size_t c) {
    for (const auto& t : L.table[b][c])
      for (const auto& u : L.table[a][t.index]) {
        if (scratch[u.index] == 0) touched.push_back(u.index);
        scratch[u.index] += t.coeff * u.coeff;
      }
  }

  const LieAlgebra& L;
  Vector scratch;
  std::vector<std::size_t> touched;
};

}  // namespace

bool jacobi_holds_exhaustive(const LieAlgebra& L) {
  JacobiChecker check(L);
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = i + 1; j < L.dim; ++j)
      for (std::size_t k = j + 1; k < L.dim; ++k)
        if (!check.triple(i, j, k)) return false;
  return true;
}

bool jacobi_holds_sampled(const LieAlgebra& L, std::size_t samples,
                          std::uint64_t seed) {
  JacobiChecker check(L);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, L.dim - 1);
  for (std::size_t n = 0; n < samples; ++n)
    if (!check.triple(pick(rng), pick(rng), pick(rng))) return false;
  return true;
}

}  // namespace magical
