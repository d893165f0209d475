#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "magical/liealg.hpp"

namespace magical {

struct Sl2Triple {
  std::shared_ptr<const LieAlgebra> host;
  Vector e, h, f;

  const LieAlgebra& algebra() const { return *host; }
  bool is_zero() const { return magical::is_zero(e) && magical::is_zero(h) && magical::is_zero(f); }
};

// Verifies [h,e] = 2e, [h,f] = -2f, [e,f] = h.
bool triple_relations_hold(const Sl2Triple& t);

// One irreducible summand of the adjoint action: highest weight n, a highest
// weight vector (in ker ad_e of ad_h-weight n), and the chain ad_f^k(highest)
// for k = 0..n.
struct Sl2Module {
  int n = 0;
  Vector highest;
  std::vector<Vector> chain;
};

struct JMData {
  Sl2Triple triple;
  std::map<int, std::vector<Vector>> grading;  // ad_h weight -> basis
  std::vector<Vector> u;       // weights > 0
  std::vector<Vector> u_plus;  // weights >= 2
  std::vector<Vector> p;       // weights >= 0
  std::vector<Vector> g_e;     // ker ad_e
  std::vector<Sl2Module> modules;        // nontrivial summands (n > 0)
  std::vector<Vector> c;                 // trivial-summand span = g_e cap g_0
  std::size_t trivial_multiplicity = 0;  // M = dim c
  bool even = false;

  // Change of basis into the module-adapted basis (columns: each module's
  // chain in order, then the trivial summands).
  Matrix adapted_inverse;

  const LieAlgebra& algebra() const { return *triple.host; }
};

struct PrimitiveComponent {
  int n = 0;  // highest weight of the contributing summands
  int k = 0;  // lowering depth
  Vector y;   // highest-weight vector with ad_f^k(y) the component
};

struct SlodowySlice {
  Vector f;
  std::vector<Vector> directions;  // basis of ker ad_e

  std::size_t dim() const { return directions.size(); }
};

// Standard representative of the nilpotent orbit of the given partition, in
// the matrix realization of make_classical(family, size).  Basis ordered by
// descending ad_h weight, so h is diagonal descending and for so/sp the
// invariant form is exactly the anti-diagonal one.
// Parity preconditions: so - even parts have even multiplicity; sp - odd
// parts have even multiplicity.
Sl2Triple triple_from_partition(const std::string& family, int size,
                                std::vector<int> partition);
// Same, reusing an already-constructed host algebra (must match family/size).
Sl2Triple triple_from_partition(std::shared_ptr<const LieAlgebra> host,
                                const std::string& family, int size,
                                std::vector<int> partition);

// L must come from make_chevalley over the same root system as d.  e is found
// by deterministic search over small-integer combinations of weight-2 root
// vectors ({0,1} digits first, then {-1,0,1,2}), accepted when
// dim ker ad_e = dim g_0 + dim g_1; f is solved in the weight -2 space.
// Throws std::domain_error("not an orbit diagram") when the search bound is
// exhausted.
Sl2Triple triple_from_weighted_diagram(std::shared_ptr<const LieAlgebra> L,
                                       const WeightedDiagram& d);

JMData jm_decompose(const Sl2Triple& t);

// x = sum over components of ad_f^k(y_{n,k}); exact, components sorted by
// (n, k) with summands of equal highest weight merged.
std::vector<PrimitiveComponent> primitive_decompose(const JMData& jm, const Vector& x);

SlodowySlice slodowy_slice(const JMData& jm);

}  // namespace magical
