#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "magical/sl2jm.hpp"

using namespace magical;

namespace {

Vector random_element(const LieAlgebra& L, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 3);
  Vector v(L.dim);
  for (auto& c : v) c = make_scalar(num(rng), den(rng));
  return v;
}

bool diagonal_descending(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m.at(i, j) != 0) return false;
  for (std::size_t i = 0; i + 1 < m.rows(); ++i)
    if (m.at(i, i) < m.at(i + 1, i + 1)) return false;
  return true;
}

Vector reconstruct(const JMData& jm, const std::vector<PrimitiveComponent>& comps) {
  const auto& L = jm.algebra();
  Vector acc = zero_vector(L.dim);
  for (const auto& c : comps) {
    Vector w = c.y;
    for (int k = 0; k < c.k; ++k) w = L.bracket(jm.triple.f, w);
    acc = acc + w;
  }
  return acc;
}

std::multiset<int> module_weights(const JMData& jm) {
  std::multiset<int> ws;
  for (const auto& m : jm.modules) ws.insert(m.n);
  return ws;
}

}  // namespace

TEST_CASE("standard sl2 triple from partition") {
  auto t = triple_from_partition("sl", 2, {2});
  CHECK(triple_relations_hold(t));
  const auto& L = t.algebra();
  CHECK(t.e == L.basis_vector(0));  // E12
  CHECK(t.h == L.basis_vector(1));  // H1
  CHECK(t.f == L.basis_vector(2));  // E21
}

TEST_CASE("principal sl3 triple") {
  auto t = triple_from_partition("sl", 3, {3});
  CHECK(triple_relations_hold(t));
  Matrix h = t.algebra().realize(t.h);
  CHECK(h.at(0, 0) == 2);
  CHECK(h.at(1, 1) == 0);
  CHECK(h.at(2, 2) == -2);
}

TEST_CASE("square partition of sl4 gives the block triple") {
  auto t = triple_from_partition("sl", 4, {2, 2});
  CHECK(triple_relations_hold(t));
  Matrix f = t.algebra().realize(t.f);
  Matrix expected(4, 4);
  expected.at(2, 0) = 1;
  expected.at(3, 1) = 1;
  CHECK(f == expected);
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(triple_from_partition("sl", 4, {3, 2}), std::domain_error);
  CHECK_THROWS_AS(triple_from_partition("so", 5, {4, 1}), std::domain_error);
  CHECK_THROWS_AS(triple_from_partition("sp", 4, {3, 1}), std::domain_error);
  CHECK_THROWS_AS(triple_from_partition("sp", 4, {2, 2, 0}), std::domain_error);
  CHECK_THROWS_AS(triple_from_partition("su", 4, {4}), std::domain_error);
}

TEST_CASE("triples across families satisfy the relations with descending h") {
  struct Case {
    const char* family;
    int size;
    std::vector<int> parts;
  };
  std::vector<Case> cases = {
      {"sl", 4, {4}},          {"sl", 5, {3, 2}},    {"sl", 6, {2, 2, 2}},
      {"so", 5, {5}},          {"so", 5, {3, 1, 1}}, {"so", 7, {5, 1, 1}},
      {"so", 7, {3, 3, 1}},    {"so", 8, {2, 2, 2, 2}}, {"so", 8, {7, 1}},
      {"so", 9, {7, 1, 1}},    {"sp", 4, {2, 2}},    {"sp", 4, {4}},
      {"sp", 6, {2, 2, 2}},    {"sp", 6, {2, 2, 1, 1}}, {"sp", 6, {6}},
      {"sp", 6, {4, 1, 1}},    {"so", 6, {3, 3}},    {"so", 6, {5, 1}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.family);
    CAPTURE(c.size);
    auto t = triple_from_partition(c.family, c.size, c.parts);
    CHECK(triple_relations_hold(t));
    CHECK(diagonal_descending(t.algebra().realize(t.h)));
  }
}

TEST_CASE("weighted diagram triples") {
  auto rs = std::make_shared<RootSystem>(build_root_system('A', 2));
  auto L = std::make_shared<const LieAlgebra>(make_chevalley(*rs));
  const RootSystem& lrs = *L->root_system;

  auto principal = triple_from_weighted_diagram(L, WeightedDiagram{&lrs, {2, 2}});
  CHECK(triple_relations_hold(principal));
  CHECK(kernel_basis(L->ad(principal.e)).size() == 2);

  auto zero = triple_from_weighted_diagram(L, WeightedDiagram{&lrs, {0, 0}});
  CHECK(zero.is_zero());

  CHECK_THROWS_AS(triple_from_weighted_diagram(L, WeightedDiagram{&lrs, {2, 0}}),
                  std::domain_error);
}

TEST_CASE("weighted diagram vs partition agree on jm structure") {
  auto L = std::make_shared<const LieAlgebra>(make_chevalley(build_root_system('A', 3)));
  auto t = triple_from_weighted_diagram(L, WeightedDiagram{L->root_system.get(), {0, 2, 0}});
  CHECK(triple_relations_hold(t));
  auto jm = jm_decompose(t);
  CHECK(module_weights(jm) == std::multiset<int>{2, 2, 2, 2});
  CHECK(jm.c.size() == 3);

  auto jm2 = jm_decompose(triple_from_partition("sl", 4, {2, 2}));
  CHECK(module_weights(jm2) == std::multiset<int>{2, 2, 2, 2});
  CHECK(jm2.c.size() == 3);
}

TEST_CASE("jm decomposition of small principal triples") {
  auto jm2 = jm_decompose(triple_from_partition("sl", 2, {2}));
  CHECK(module_weights(jm2) == std::multiset<int>{2});
  CHECK(jm2.trivial_multiplicity == 0);
  CHECK(jm2.even);

  auto jm3 = jm_decompose(triple_from_partition("sl", 3, {3}));
  CHECK(module_weights(jm3) == std::multiset<int>{2, 4});
  CHECK(jm3.c.empty());
  CHECK(jm3.even);
}

TEST_CASE("odd triple bookkeeping") {
  auto jm = jm_decompose(triple_from_partition("sl", 3, {2, 1}));
  CHECK_FALSE(jm.even);
  CHECK(module_weights(jm) == std::multiset<int>{1, 1, 2});
  CHECK(jm.trivial_multiplicity == 1);
  CHECK(jm.u.size() == 3);
  CHECK(jm.u_plus.size() == 1);
}

TEST_CASE("grading and module invariants") {
  std::vector<Sl2Triple> triples = {
      triple_from_partition("sl", 4, {2, 2}),
      triple_from_partition("sl", 4, {3, 1}),
      triple_from_partition("sp", 4, {2, 2}),
      triple_from_partition("so", 5, {3, 1, 1}),
      triple_from_partition("so", 7, {5, 1, 1}),
  };
  for (const auto& t : triples) {
    auto jm = jm_decompose(t);
    const auto& L = jm.algebra();
    std::size_t total = 0;
    for (const auto& [j, basis] : jm.grading) {
      total += basis.size();
      for (const auto& v : basis) {
        // ad_e raises weight by 2, ad_f lowers it by 2
        Vector up = L.bracket(t.e, v), down = L.bracket(t.f, v);
        auto next = jm.grading.find(j + 2);
        auto prev = jm.grading.find(j - 2);
        CHECK((is_zero(up) || (next != jm.grading.end() && in_span(next->second, up))));
        CHECK((is_zero(down) || (prev != jm.grading.end() && in_span(prev->second, down))));
      }
    }
    CHECK(total == L.dim);
    if (jm.even) CHECK(jm.u.size() == jm.u_plus.size());

    for (const auto& m : jm.modules)
      for (int k = 1; k <= m.n; ++k) {
        Vector lhs = L.bracket(t.e, m.chain[k]);
        Vector rhs = Scalar(k * (m.n - k + 1)) * m.chain[k - 1];
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("primitive decomposition in sl2") {
  auto jm = jm_decompose(triple_from_partition("sl", 2, {2}));
  const auto& L = jm.algebra();
  Vector e = jm.triple.e, h = jm.triple.h, f = jm.triple.f;

  auto cf = primitive_decompose(jm, f);
  REQUIRE(cf.size() == 1);
  CHECK(cf[0].n == 2);
  CHECK(cf[0].k == 2);
  CHECK(cf[0].y == Scalar(-1, 2) * e);

  auto ch = primitive_decompose(jm, h);
  REQUIRE(ch.size() == 1);
  CHECK(ch[0].n == 2);
  CHECK(ch[0].k == 1);
  CHECK(ch[0].y == Scalar(-1) * e);

  CHECK(reconstruct(jm, cf) == f);
  CHECK(reconstruct(jm, ch) == h);
}

TEST_CASE("primitive decomposition of central elements") {
  auto jm = jm_decompose(triple_from_partition("sl", 4, {2, 2}));
  REQUIRE(jm.c.size() == 3);
  auto comps = primitive_decompose(jm, jm.c[0]);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].n == 0);
  CHECK(comps[0].k == 0);
  CHECK(comps[0].y == jm.c[0]);
}

TEST_CASE("primitive decomposition reconstructs random elements") {
  std::vector<Sl2Triple> triples = {
      triple_from_partition("sl", 3, {3}),
      triple_from_partition("sl", 4, {2, 2}),
      triple_from_partition("sp", 4, {2, 2}),
      triple_from_partition("so", 5, {3, 1, 1}),
  };
  std::mt19937_64 rng(2024);
  for (const auto& t : triples) {
    auto jm = jm_decompose(t);
    for (int s = 0; s < 20; ++s) {
      Vector x = random_element(jm.algebra(), rng);
      CHECK(reconstruct(jm, primitive_decompose(jm, x)) == x);
    }
  }
}

TEST_CASE("slodowy slices") {
  CHECK(slodowy_slice(jm_decompose(triple_from_partition("sl", 2, {2}))).dim() == 1);
  CHECK(slodowy_slice(jm_decompose(triple_from_partition("sl", 3, {3}))).dim() == 2);
  auto zero = jm_decompose(triple_from_partition("sl", 2, {1, 1}));
  CHECK(slodowy_slice(zero).dim() == 3);
}
