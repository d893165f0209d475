#pragma once

#include <map>
#include <vector>

#include "magical/exactla.hpp"

namespace magical {

// Roots are integer coordinate vectors in the simple-root basis.
using Root = std::vector<int>;

struct RootSystem {
  char type;  // 'A'..'G'
  int rank;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^v>
  std::vector<int> d;                    // symmetrizers: (a_i,a_j) = cartan[i][j]*d[j]
  std::vector<Root> positive;            // height-then-lex ascending
  std::map<Root, int> positive_index;

  int height(const Root& r) const;
  // <beta, alpha_i^v> for beta in simple-root coordinates
  int pairing(const Root& beta, int i) const;
  // (a, b) under the symmetrized invariant form
  long form(const Root& a, const Root& b) const;
  bool is_root(const Root& r) const;  // positive or negative
  std::size_t num_positive() const { return positive.size(); }
};

RootSystem build_root_system(char type, int rank);

// Signed root index: i in [0, P) is positive root i, i in [P, 2P) is
// -positive[i - P].
struct ChevalleyTable {
  const RootSystem* rs;
  // n[a][b] = N_{alpha,beta} over signed indices; 0 when alpha+beta is not
  // a root.
  std::vector<std::vector<long>> n;

  long constant(int signed_a, int signed_b) const { return n[signed_a][signed_b]; }
};

ChevalleyTable chevalley_constants(const RootSystem& rs);

struct WeightedDiagram {
  const RootSystem* rs;
  std::vector<int> weights;  // one per simple root, each in {0,1,2}
};

// Coordinates x with h = sum x_j h_j satisfying alpha_i(h) = weights[i].
Vector h_from_weighted_diagram(const WeightedDiagram& d);

}  // namespace magical
