#include "magical/rootsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace magical {

int RootSystem::height(const Root& r) const {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

int RootSystem::pairing(const Root& beta, int i) const {
  int s = 0;
  for (int k = 0; k < rank; ++k) s += beta[k] * cartan[k][i];
  return s;
}

long RootSystem::form(const Root& a, const Root& b) const {
  long s = 0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      s += static_cast<long>(a[i]) * b[j] * cartan[i][j] * d[j];
  return s;
}

bool RootSystem::is_root(const Root& r) const {
  if (positive_index.count(r)) return true;
  Root neg(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
  return positive_index.count(neg) > 0;
}

namespace {

struct TypeData {
  std::vector<std::vector<int>> cartan;
  std::vector<int> d;
};

TypeData cartan_data(char type, int rank) {
  auto chain = [&](int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    for (int i = 0; i + 1 < n; ++i) {
      a[i][i + 1] = -1;
      a[i + 1][i] = -1;
    }
    return a;
  };
  switch (type) {
    case 'A': {
      if (rank < 1) throw std::domain_error("A_n needs n >= 1");
      return {chain(rank), std::vector<int>(rank, 1)};
    }
    case 'B': {
      // alpha_n short: double bond alpha_{n-1} => alpha_n
      if (rank < 2) throw std::domain_error("B_n needs n >= 2");
      auto a = chain(rank);
      a[rank - 2][rank - 1] = -2;
      std::vector<int> d(rank, 2);
      d[rank - 1] = 1;
      return {a, d};
    }
    case 'C': {
      if (rank < 2) throw std::domain_error("C_n needs n >= 2");
      auto a = chain(rank);
      a[rank - 1][rank - 2] = -2;
      std::vector<int> d(rank, 1);
      d[rank - 1] = 2;
      return {a, d};
    }
    case 'D': {
      if (rank < 3) throw std::domain_error("D_n needs n >= 3");
      auto a = chain(rank);
      // detach the last chain link, fork node n-1 and n off node n-2
      a[rank - 2][rank - 1] = 0;
      a[rank - 1][rank - 2] = 0;
      if (rank >= 3) {
        a[rank - 3][rank - 1] = -1;
        a[rank - 1][rank - 3] = -1;
      }
      return {a, std::vector<int>(rank, 1)};
    }
    case 'E': {
      if (rank < 6 || rank > 8) throw std::domain_error("E_n needs n in 6..8");
      // Bourbaki: chain 1-3-4-5-6(-7(-8)), node 2 attached to node 4.
      std::vector<std::vector<int>> a(rank, std::vector<int>(rank, 0));
      for (int i = 0; i < rank; ++i) a[i][i] = 2;
      auto link = [&](int i, int j) {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
      };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      link(4, 5);
      link(5, 6);
      if (rank >= 7) link(6, 7);
      if (rank >= 8) link(7, 8);
      return {a, std::vector<int>(rank, 1)};
    }
    case 'F': {
      if (rank != 4) throw std::domain_error("F needs rank 4");
      auto a = chain(4);
      a[1][2] = -2;  // alpha_2 long, alpha_3 short
      return {a, {2, 2, 1, 1}};
    }
    case 'G': {
      if (rank != 2) throw std::domain_error("G needs rank 2");
      return {{{2, -1}, {-3, 2}}, {1, 3}};
    }
    default:
      throw std::domain_error("unknown type");
  }
}

std::size_t expected_count(char type, int rank) {
  switch (type) {
    case 'A': return static_cast<std::size_t>(rank) * (rank + 1) / 2;
    case 'B':
    case 'C': return static_cast<std::size_t>(rank) * rank;
    case 'D': return static_cast<std::size_t>(rank) * (rank - 1);
    case 'E': return rank == 6 ? 36 : rank == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
  }
  return 0;
}

}  // namespace

RootSystem build_root_system(char type, int rank) {
  TypeData td = cartan_data(type, rank);
  RootSystem rs;
  rs.type = type;
  rs.rank = rank;
  rs.cartan = td.cartan;
  rs.d = td.d;

  // generate positive roots by height induction with root strings
  std::set<Root> roots;
  for (int i = 0; i < rank; ++i) {
    Root r(rank, 0);
    r[i] = 1;
    roots.insert(r);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Root> snapshot(roots.begin(), roots.end());
    for (const Root& beta : snapshot) {
      for (int i = 0; i < rank; ++i) {
        // p = how far the alpha_i-string through beta extends downward
        int p = 0;
        Root probe = beta;
        while (true) {
          probe[i] -= 1;
          bool nonneg_any = false, nonpos_any = false;
          for (int c : probe) {
            if (c > 0) nonneg_any = true;
            if (c < 0) nonpos_any = true;
          }
          bool is_zero_root = !nonneg_any && !nonpos_any;
          if (is_zero_root || nonpos_any || !roots.count(probe)) break;
          ++p;
        }
        int q = p - rs.pairing(beta, i);
        if (q >= 1) {
          Root up = beta;
          up[i] += 1;
          if (roots.insert(up).second) grew = true;
        }
      }
    }
  }
  rs.positive.assign(roots.begin(), roots.end());
  std::sort(rs.positive.begin(), rs.positive.end(),
            [&](const Root& a, const Root& b) {
              int ha = rs.height(a), hb = rs.height(b);
              if (ha != hb) return ha < hb;
              return a < b;
            });
  if (rs.positive.size() != expected_count(type, rank))
    throw std::runtime_error("root generation produced wrong count");
  for (std::size_t i = 0; i < rs.positive.size(); ++i)
    rs.positive_index[rs.positive[i]] = static_cast<int>(i);
  return rs;
}

namespace {

Root add(const Root& a, const Root& b) {
  Root r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Root sub(const Root& a, const Root& b) {
  Root r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Root neg(const Root& a) {
  Root r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_positive(const Root& a) {
  for (int c : a)
    if (c != 0) return c > 0;
  return false;
}

// max k >= 0 with beta - k*alpha a root
int string_down(const RootSystem& rs, const Root& alpha, const Root& beta) {
  int p = 0;
  Root probe = beta;
  while (true) {
    probe = sub(probe, alpha);
    bool zero = true;
    for (int c : probe)
      if (c != 0) { zero = false; break; }
    if (zero || !rs.is_root(probe)) break;
    ++p;
  }
  return p;
}

class ChevalleyBuilder {
 public:
  explicit ChevalleyBuilder(const RootSystem& rs) : rs_(rs) {}

  ChevalleyTable build() {
    const auto& pos = rs_.positive;
    // process targets gamma by height; fill special-pair values
    for (std::size_t g = 0; g < pos.size(); ++g) {
      const Root& gamma = pos[g];
      if (rs_.height(gamma) < 2) continue;
      // special pairs (xi, eta), xi < eta in the positive order
      std::vector<std::pair<int, int>> special;
      for (std::size_t x = 0; x < pos.size(); ++x) {
        Root eta = sub(gamma, pos[x]);
        if (!is_positive(eta)) continue;
        auto it = rs_.positive_index.find(eta);
        if (it == rs_.positive_index.end()) continue;
        int e = it->second;
        if (static_cast<int>(x) < e) special.push_back({static_cast<int>(x), e});
      }
      if (special.empty())
        throw std::runtime_error("non-simple root with no decomposition");
      std::sort(special.begin(), special.end());
      // extraspecial pair gets sign +
      auto [a, b] = special[0];
      pos_table_[{a, b}] =
          string_down(rs_, pos[a], pos[b]) + 1;
      for (std::size_t s = 1; s < special.size(); ++s) {
        auto [xi, eta] = special[s];
        pos_table_[{xi, eta}] = derive(a, b, xi, eta, gamma);
      }
    }
    // expand to the dense signed table
    std::size_t p = pos.size();
    ChevalleyTable t;
    t.rs = &rs_;
    t.n.assign(2 * p, std::vector<long>(2 * p, 0));
    for (std::size_t i = 0; i < 2 * p; ++i) {
      Root ri = signed_root(static_cast<int>(i));
      for (std::size_t j = 0; j < 2 * p; ++j) {
        Root rj = signed_root(static_cast<int>(j));
        Root sum = add(ri, rj);
        bool zero = true;
        for (int c : sum)
          if (c != 0) { zero = false; break; }
        if (zero || !rs_.is_root(sum)) continue;
        t.n[i][j] = resolve(ri, rj);
      }
    }
    return t;
  }

 private:
  const RootSystem& rs_;
  std::map<std::pair<int, int>, long> pos_table_;

  Root signed_root(int idx) const {
    std::size_t p = rs_.positive.size();
    if (idx < static_cast<int>(p)) return rs_.positive[idx];
    return neg(rs_.positive[idx - p]);
  }

  // N for two positive roots with root sum, via the stored special table
  long lookup_pos(const Root& x, const Root& y) const {
    int ix = rs_.positive_index.at(x);
    int iy = rs_.positive_index.at(y);
    if (ix < iy) return pos_table_.at({ix, iy});
    if (iy < ix) return -pos_table_.at({iy, ix});
    throw std::logic_error("root added to itself");
  }

  // General N_{a,b} for roots a, b with a+b a root.
  long resolve(const Root& a, const Root& b) const {
    bool pa = is_positive(a), pb = is_positive(b);
    if (pa && pb) return lookup_pos(a, b);
    if (!pa && !pb) return -resolve(neg(a), neg(b));
    if (!pa) return -resolve(b, a);
    // a positive, b negative
    Root dlt = add(a, b);
    if (is_positive(dlt)) {
      // triple (a, b, -dlt): N_{a,b}/(dlt,dlt) = N_{b,-dlt}/(a,a);
      // N_{b,-dlt} = -N_{-b,dlt} with both arguments positive
      long num = -rs_.form(dlt, dlt) * resolve(neg(b), dlt);
      long den = rs_.form(a, a);
      if (num % den != 0) throw std::logic_error("non-integral constant");
      return num / den;
    }
    return -resolve(neg(a), neg(b));
  }

  // Special pair (xi, eta) derived from the extraspecial pair (a, b) of the
  // same target gamma via the standard four-root identity.
  long derive(int ia, int ib, int ixi, int ieta, const Root& gamma) {
    const Root a = rs_.positive[ia];
    const Root b = rs_.positive[ib];
    const Root xi = rs_.positive[ixi];
    const Root eta = rs_.positive[ieta];
    Scalar total = 0;
    Root b_minus_xi = sub(b, xi);
    if (rs_.is_root(b_minus_xi)) {
      long t1 = resolve(b, neg(xi));
      long t2 = resolve(a, neg(eta));
      total += Scalar(t1) * Scalar(t2) / Scalar(rs_.form(b_minus_xi, b_minus_xi));
    }
    Root a_minus_xi = sub(a, xi);
    if (rs_.is_root(a_minus_xi)) {
      long t1 = resolve(neg(xi), a);
      long t2 = resolve(b, neg(eta));
      total += Scalar(t1) * Scalar(t2) / Scalar(rs_.form(a_minus_xi, a_minus_xi));
    }
    Scalar nab = Scalar(pos_table_.at({ia, ib}));
    Scalar result = Scalar(rs_.form(gamma, gamma)) * total / nab;
    if (result.get_den() != 1)
      throw std::logic_error("non-integral derived constant");
    return result.get_num().get_si();
  }
};

}  // namespace

ChevalleyTable chevalley_constants(const RootSystem& rs) {
  return ChevalleyBuilder(rs).build();
}

Vector h_from_weighted_diagram(const WeightedDiagram& d) {
  const RootSystem& rs = *d.rs;
  if (static_cast<int>(d.weights.size()) != rs.rank)
    throw std::domain_error("weight count != rank");
  Matrix a(rs.rank, rs.rank);
  Vector w(rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    for (int j = 0; j < rs.rank; ++j) a.at(i, j) = rs.cartan[i][j];
    w[i] = d.weights[i];
  }
  auto x = solve(a, w);
  if (!x) throw std::runtime_error("Cartan matrix singular");
  return *x;
}

}  // namespace magical
