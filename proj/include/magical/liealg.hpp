#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "magical/exactla.hpp"
#include "magical/rootsys.hpp"

namespace magical {

struct SparseTerm {
  std::size_t index;
  Scalar coeff;
};
// Sparse coordinate vector, strictly increasing index.
using SparseVec = std::vector<SparseTerm>;

Vector sparse_to_dense(const SparseVec& v, std::size_t dim);

// Solves for coordinates of a matrix in a fixed independent family of
// matrices.  Built once per realization; throws if the input lies outside
// the span.
struct Coordinatizer {
  std::size_t mat_size = 0;
  std::vector<std::size_t> pivot_entries;  // row-major indices into vec(X)
  Matrix inv;                              // dim x dim
  std::vector<Matrix> basis;               // kept for membership verification

  Vector coords(const Matrix& m) const;
};

// Finite-dimensional Lie algebra over Q given by a sparse bracket table on an
// ordered basis.  Classical constructions also carry the matrix realization;
// Chevalley constructions carry their root system.
struct LieAlgebra {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  // table[i][j] = [b_i, b_j] as a sparse coordinate vector
  std::vector<std::vector<SparseVec>> table;
  std::vector<Matrix> rep;  // empty when there is no matrix realization
  std::optional<Coordinatizer> coordinatizer;
  std::shared_ptr<const RootSystem> root_system;
  std::shared_ptr<const ChevalleyTable> chevalley;

  bool has_realization() const { return !rep.empty(); }

  Vector bracket(const Vector& x, const Vector& y) const;
  Vector bracket_basis(std::size_t i, std::size_t j) const;
  Matrix ad(const Vector& x) const;
  Scalar killing(const Vector& x, const Vector& y) const;
  Vector basis_vector(std::size_t i) const;
  Matrix realize(const Vector& x) const;
  Vector coordinates(const Matrix& m) const;
};

// Subspace of a host algebra; `closed` records that bracket closure was
// verified on construction.
struct Subalgebra {
  const LieAlgebra* host = nullptr;
  std::vector<Vector> basis;  // linearly independent
  bool closed = false;

  std::size_t dim() const { return basis.size(); }
};

// family: "sl" (size >= 2), "so" (size >= 3), "sp" (even size >= 2).
// so_N preserves the anti-diagonal symmetric form; sp_2n the anti-diagonal
// symplectic form (+1 upper half, -1 lower half).  Diagonal matrices form a
// Cartan subalgebra in each case.
LieAlgebra make_classical(const std::string& family, int size);

// Basis {h_1..h_r} then {e_alpha} then {f_alpha} in positive-root order.
// The bracket table is Jacobi-verified once per (type, rank): exhaustively
// for dim <= 78, on 10^5 sampled triples beyond.
LieAlgebra make_chevalley(const RootSystem& rs);

Matrix killing_gram(const LieAlgebra& L);
// Matrix of pairings kappa(left_i, right_j).
Matrix killing_pairings(const LieAlgebra& L, const std::vector<Vector>& left,
                        const std::vector<Vector>& right);
std::vector<Vector> killing_orthocomplement(const LieAlgebra& L,
                                            const Matrix& gram,
                                            const std::vector<Vector>& span);

// Reduces generators to a basis; when require_closed, verifies bracket
// closure and throws std::domain_error on failure.
Subalgebra make_subalgebra(const LieAlgebra& L, const std::vector<Vector>& generators,
                           bool require_closed);
// Joint kernel of ad_s over s in elements; closure always holds and is
// verified.  Empty list gives all of L.
Subalgebra centralizer(const LieAlgebra& L, const std::vector<Vector>& elements);
Subalgebra center(const LieAlgebra& L);
Subalgebra derived_subalgebra(const LieAlgebra& L);

// The subalgebra as a standalone LieAlgebra with bracket table expressed in
// s.basis coordinates; requires s.closed.  Inherits a matrix realization from
// the host when one exists.  s.basis gives the embedding back into the host.
LieAlgebra restrict_to_subalgebra(const Subalgebra& s);

bool jacobi_holds_exhaustive(const LieAlgebra& L);
bool jacobi_holds_sampled(const LieAlgebra& L, std::size_t samples, std::uint64_t seed);

}  // namespace magical
