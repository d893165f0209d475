#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "magical/magical.hpp"

using namespace magical;

namespace {

std::shared_ptr<const LieAlgebra> classical(const std::string& family, int size) {
  return std::make_shared<const LieAlgebra>(make_classical(family, size));
}

MagicalReport analyze_partition(const std::string& family, int size,
                                const std::vector<int>& part) {
  auto L = classical(family, size);
  Sl2Triple t = triple_from_partition(L, family, size, part);
  return analyze_triple(jm_decompose(t));
}

// Magical orbit labels of one classical family, as reported by the sweep.
std::set<std::string> magical_set(const std::string& family, int size) {
  std::set<std::string> out;
  for (const auto& oc : classify_magical(family, size))
    if (oc.report.magical) out.insert(oc.orbit);
  return out;
}

// Independent partition generator: all descending partitions of n.
void partitions_rec(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> all_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

int multiplicity(const std::vector<int>& part, int value) {
  return static_cast<int>(std::count(part.begin(), part.end(), value));
}

}  // namespace

TEST_CASE("layer signs alternate starting negative") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(sigma_layer_sign(n, k) == (k % 2 == 0 ? -1 : 1));
}

TEST_CASE("sl2: sign involution fixes h and negates e, f") {
  auto L = classical("sl", 2);
  Sl2Triple t = triple_from_partition(L, "sl", 2, {2});
  JMData jm = jm_decompose(t);
  Matrix s = sigma_involution(jm);
  CHECK(s * t.e == Scalar(-1) * t.e);
  CHECK(s * t.h == t.h);
  CHECK(s * t.f == Scalar(-1) * t.f);
  CHECK(s * s == Matrix::identity(L->dim));

  MagicalReport rep = analyze_triple(jm);
  CHECK(rep.magical);
  CHECK(rep.real_form.label == "sl(2,R)");
  CHECK(rep.real_form.families == std::vector<int>{1, 2});
  CHECK(rep.h_space.size() == 1);
  CHECK(rep.m_space.size() == 2);
}

TEST_CASE("sl3 principal: magical with two-line correspondence data") {
  MagicalReport rep = analyze_partition("sl", 3, {3});
  REQUIRE(rep.magical);
  CHECK(rep.h_space.size() == 3);
  CHECK(rep.real_form.label == "sl(3,R)");
  CHECK(rep.real_form.families == std::vector<int>{1});

  CayleyData cd = cayley_data(rep);
  CHECK(cd.dim_c == 0);
  CHECK(cd.r == 2);
  CHECK(cd.gtilde.empty());
  CHECK(cd.v0.empty());
  CHECK_FALSE(cd.m_c.has_value());
  CHECK(cd.l == std::vector<int>{1, 2});
  CHECK(cd.cayley_form == "R^2");
  CHECK(cayley_twists(cd) == std::vector<std::string>{"K^2", "K^3"});

  CRepAnalysis cr = c_rep_analysis(cd);
  CHECK(cr.r == 2);
  CHECK(cr.dim_v0 == 0);
  CHECK(cr.label == "0");
}

TEST_CASE("sl3 subregular is not magical and carries a certificate") {
  auto L = classical("sl", 3);
  Sl2Triple t = triple_from_partition(L, "sl", 3, {2, 1});
  JMData jm = jm_decompose(t);
  auto [flag, fail] = is_magical(jm);
  CHECK_FALSE(flag);
  REQUIRE(fail.has_value());
  auto [i, j] = *fail;
  Matrix s = sigma_involution(jm);
  Vector bi = L->basis_vector(i), bj = L->basis_vector(j);
  CHECK_FALSE(s * L->bracket(bi, bj) == L->bracket(s * bi, s * bj));
}

TEST_CASE("zero orbit reports non-magical by convention") {
  MagicalReport rep = analyze_partition("sl", 3, {1, 1, 1});
  CHECK_FALSE(rep.magical);
  CHECK(rep.sigma == Matrix::identity(8));
  CHECK(rep.note.find("zero orbit") != std::string::npos);
}

TEST_CASE("sl4 (2,2): hermitian form with adjoint-type v0") {
  MagicalReport rep = analyze_partition("sl", 4, {2, 2});
  REQUIRE(rep.magical);
  CHECK(rep.jm.even);
  CHECK(rep.real_form.label == "su(2,2)");
  CHECK(rep.real_form.families == std::vector<int>{2});

  CayleyData cd = cayley_data(rep);
  CHECK(cd.g0.size() == 7);
  CHECK(cd.dim_c == 3);
  CHECK(cd.r == 1);
  CHECK(cd.gtilde.size() == 6);
  CHECK(cd.v0.size() == 3);
  CHECK(cd.v0_label == "Ad_C");
  REQUIRE(cd.m_c.has_value());
  CHECK(*cd.m_c == 1);
  CHECK(cd.l == std::vector<int>{1});
  CHECK(cd.commutant_dim == 1);

  // theta is +1 exactly on the leading c-block.
  for (std::size_t i = 0; i < cd.g0.size(); ++i)
    CHECK(cd.theta.at(i, i) == (i < cd.dim_c ? 1 : -1));
}

TEST_CASE("sl sweeps: magical orbits are the principal and even-block ones") {
  for (int m = 2; m <= 6; ++m) {
    std::set<std::string> expect = {"(" + std::to_string(m) + ")"};
    if (m % 2 == 0) {
      std::string blocks = "(2";
      for (int i = 1; i < m / 2; ++i) blocks += ",2";
      expect.insert(blocks + ")");
    }
    CHECK(magical_set("sl", m) == expect);
  }
  CHECK(analyze_partition("sl", 5, {5}).real_form.label == "sl(5,R)");
  CHECK(analyze_partition("sl", 6, {2, 2, 2}).real_form.label == "su(3,3)");
}

TEST_CASE("sp4 sweep: exactly two magical orbits, both split") {
  auto rows = classify_magical("sp", 4);
  CHECK(rows.size() == 4);  // (4), (2,2), (2,1,1), (1,1,1,1)
  CHECK(magical_set("sp", 4) == std::set<std::string>{"(4)", "(2,2)"});
  for (const auto& oc : rows) {
    if (!oc.report.magical) continue;
    CHECK(oc.report.real_form.label == "sp(4,R)");
    CHECK(oc.report.jm.even);
  }
}

TEST_CASE("sp4 (2,2): rank-one rotation pair in v0") {
  MagicalReport rep = analyze_partition("sp", 4, {2, 2});
  REQUIRE(rep.magical);
  CayleyData cd = cayley_data(rep);
  CHECK(cd.dim_c == 1);
  CHECK(cd.r == 1);
  CHECK(cd.gtilde.size() == 3);
  CHECK(cd.v0.size() == 2);
  CHECK(cd.v0_label == "Std_C");
  CHECK(cd.commutant_dim == 2);
  CHECK(cd.note.find("rank-one rotation pair") != std::string::npos);
  REQUIRE(cd.m_c.has_value());
  CHECK(*cd.m_c == 1);
  CHECK(cd.l == std::vector<int>{1});
  CHECK(cayley_twists(cd) == std::vector<std::string>{"K^2", "K^2", "K^2"});
}

TEST_CASE("sp6 and sp8 sweeps") {
  CHECK(magical_set("sp", 6) == std::set<std::string>{"(6)", "(2,2,2)"});
  CHECK(magical_set("sp", 8) == std::set<std::string>{"(8)", "(2,2,2,2)"});
  CHECK(analyze_partition("sp", 6, {2, 2, 2}).real_form.label == "sp(6,R)");
}

TEST_CASE("so5 and so7 sweeps with one-sided tails") {
  CHECK(magical_set("so", 5) == std::set<std::string>{"(5)", "(3,1,1)"});
  CHECK(magical_set("so", 7) ==
        std::set<std::string>{"(7)", "(5,1,1)", "(3,1,1,1,1)"});

  MagicalReport sub = analyze_partition("so", 7, {5, 1, 1});
  CHECK(sub.real_form.label == "so(3,4)");
  CHECK(sub.real_form.families == std::vector<int>{1, 3});

  MagicalReport herm = analyze_partition("so", 7, {3, 1, 1, 1, 1});
  CHECK(herm.real_form.label == "so(2,5)");
  CHECK(herm.real_form.families == std::vector<int>{2});
}

TEST_CASE("so7 (5,1,1): correspondence row with two trivial lines") {
  MagicalReport rep = analyze_partition("so", 7, {5, 1, 1});
  CayleyData cd = cayley_data(rep);
  CHECK(cd.g0.size() == 5);
  CHECK(cd.dim_c == 1);
  CHECK(cd.r == 2);
  CHECK(cd.gtilde.size() == 3);
  CHECK(cd.v0.size() == 2);
  CHECK(cd.v0_label == "Std_C");
  REQUIRE(cd.m_c.has_value());
  CHECK(*cd.m_c == 2);
  CHECK(cd.l == std::vector<int>{1, 3});
  CHECK(cayley_twists(cd) ==
        std::vector<std::string>{"K^3", "K^3", "K^2", "K^4"});
}

TEST_CASE("so6 and so8 sweeps; D4 key collision stays ambiguous") {
  CHECK(magical_set("so", 6) == std::set<std::string>{"(5,1)", "(3,1,1,1)"});
  CHECK(magical_set("so", 8) == std::set<std::string>{"(7,1)", "(5,1,1,1)",
                                                      "(4,4)",
                                                      "(3,1,1,1,1,1)",
                                                      "(2,2,2,2)"});

  // (4,4) and (5,1,1,1) share the canonical real form: the sign involution
  // of (4,4) fixes a 13-dimensional subalgebra, and so(3,5) is the only
  // real form of so8 whose maximal compact part has that dimension.
  MagicalReport extra = analyze_partition("so", 8, {4, 4});
  CHECK(extra.real_form.label == "so(3,5)");
  CHECK(extra.h_space.size() == 13);
  CHECK_FALSE(extra.real_form.ambiguous);

  MagicalReport amb = analyze_partition("so", 8, {3, 1, 1, 1, 1, 1});
  CHECK(amb.real_form.ambiguous);
  CHECK(amb.real_form.candidates ==
        std::vector<std::string>{"so(2,6)", "so*(8)"});
  CHECK(amb.real_form.label == "so(2,6)|so*(8)");
  CHECK(amb.real_form.families == std::vector<int>{2});

  for (const auto& oc : classify_magical("so", 8))
    if (oc.orbit == "(2,2,2,2)") {
      CHECK(oc.report.magical);
      CHECK(oc.report.real_form.ambiguous);
      CHECK(oc.note.find("very even") != std::string::npos);
    }
}

TEST_CASE("every magical orbit in the small sweeps is even") {
  for (auto [family, size] : std::vector<std::pair<std::string, int>>{
           {"sl", 4}, {"sl", 5}, {"sp", 4}, {"sp", 6}, {"so", 5}, {"so", 7}})
    for (const auto& oc : classify_magical(family, size))
      if (oc.report.magical) CHECK(oc.report.jm.even);
}

TEST_CASE("partition enumeration matches an independent generator") {
  auto parity_ok = [](const std::string& family, const std::vector<int>& p) {
    if (family == "so") {
      for (int v : p)
        if (v % 2 == 0 && multiplicity(p, v) % 2 != 0) return false;
    } else if (family == "sp") {
      for (int v : p)
        if (v % 2 == 1 && multiplicity(p, v) % 2 != 0) return false;
    }
    return true;
  };
  for (const std::string family : {"sl", "so", "sp"})
    for (int n = 2; n <= 8; ++n) {
      if (family == "sp" && n % 2) continue;
      std::set<std::vector<int>> expect;
      for (const auto& p : all_partitions(n))
        if (parity_ok(family, p)) expect.insert(p);
      auto got_list = nilpotent_partitions(family, n);
      std::set<std::vector<int>> got(got_list.begin(), got_list.end());
      CHECK(got == expect);
      CHECK(got_list.size() == got.size());
    }
}

TEST_CASE("structural identities hold on a battery of magical orbits") {
  std::vector<std::tuple<std::string, int, std::vector<int>>> cases = {
      {"sl", 3, {3}},       {"sl", 4, {4}},    {"sl", 4, {2, 2}},
      {"sl", 5, {5}},       {"sp", 4, {2, 2}}, {"sp", 6, {2, 2, 2}},
      {"so", 5, {3, 1, 1}}, {"so", 6, {5, 1}}, {"so", 7, {5, 1, 1}},
      {"so", 8, {2, 2, 2, 2}}};
  for (const auto& [family, size, part] : cases) {
    CAPTURE(family);
    CAPTURE(size);
    MagicalReport rep = analyze_partition(family, size, part);
    REQUIRE(rep.magical);
    StructuralCheck sc = structural_identities(rep);
    CHECK(sc.ok);
    CHECK(sc.failures.empty());
  }
}

TEST_CASE("exceptional sweeps from the shipped diagram table") {
  auto g2 = classify_magical("G", 2);
  REQUIRE(g2.size() == 2);
  std::map<std::string, const OrbitClassification*> byname;
  for (const auto& oc : g2) byname[oc.orbit] = &oc;
  REQUIRE(byname.count("principal"));
  REQUIRE(byname.count("subregular"));
  CHECK(byname["principal"]->report.magical);
  CHECK(byname["principal"]->report.real_form.label == "g2(2)");
  CHECK_FALSE(byname["subregular"]->report.magical);

  auto f4 = classify_magical("F", 4);
  REQUIRE(f4.size() == 2);
  for (const auto& oc : f4) {
    CHECK(oc.report.magical);
    CHECK(oc.report.real_form.label == "f4(4)");
  }

  auto e6 = classify_magical("E", 6);
  REQUIRE(e6.size() == 2);
  for (const auto& oc : e6) {
    CHECK(oc.report.magical);
    if (oc.orbit == "principal")
      CHECK(oc.report.real_form.label == "e6(6)");
    else
      CHECK(oc.report.real_form.label == "e6(2)");
  }
}

TEST_CASE("f4 secondary orbit: three-dimensional c with a five-dimensional v0") {
  auto rs = build_root_system('F', 4);
  auto L = std::make_shared<const LieAlgebra>(make_chevalley(rs));
  WeightedDiagram d{L->root_system.get(), {2, 2, 0, 0}};
  Sl2Triple t = triple_from_weighted_diagram(L, d);
  MagicalReport rep = analyze_triple(jm_decompose(t));
  REQUIRE(rep.magical);
  CHECK(rep.h_space.size() == 24);
  CHECK(rep.real_form.label == "f4(4)");

  CayleyData cd = cayley_data(rep);
  CHECK(cd.g0.size() == 10);
  CHECK(cd.dim_c == 3);
  CHECK(cd.r == 2);
  CHECK(cd.gtilde.size() == 8);
  CHECK(cd.v0.size() == 5);
  CHECK(cd.v0_label == "V_5");
  REQUIRE(cd.m_c.has_value());
  CHECK(*cd.m_c == 3);
  CHECK(cd.l == std::vector<int>{1, 5});
  CHECK(cd.commutant_dim == 1);

  StructuralCheck sc = structural_identities(rep);
  CHECK(sc.ok);
}

TEST_CASE("e6 secondary orbit: c of adjoint type sl3") {
  auto rs = build_root_system('E', 6);
  auto L = std::make_shared<const LieAlgebra>(make_chevalley(rs));
  WeightedDiagram d{L->root_system.get(), {0, 2, 0, 2, 0, 0}};
  Sl2Triple t = triple_from_weighted_diagram(L, d);
  MagicalReport rep = analyze_triple(jm_decompose(t));
  REQUIRE(rep.magical);
  CHECK(rep.h_space.size() == 38);
  CHECK(rep.real_form.label == "e6(2)");

  CayleyData cd = cayley_data(rep);
  CHECK(cd.dim_c == 8);
  CHECK(cd.r == 2);
  CHECK(cd.gtilde.size() == 16);
  CHECK(cd.v0.size() == 8);
  CHECK(cd.v0_label == "Ad_C");
  REQUIRE(cd.m_c.has_value());
  CHECK(*cd.m_c == 3);
  CHECK(cd.l == std::vector<int>{1, 5});
}

// The correspondence layer (center / derived pieces of the 79-dimensional
// level-0 algebra) is exact-arithmetic heavy at this size and takes many
// minutes, so this case stops at the classification layer.
TEST_CASE("e7 hermitian orbit is magical of tube type") {
  auto rs = build_root_system('E', 7);
  auto L = std::make_shared<const LieAlgebra>(make_chevalley(rs));
  WeightedDiagram d{L->root_system.get(), {0, 0, 0, 0, 0, 0, 2}};
  Sl2Triple t = triple_from_weighted_diagram(L, d);
  JMData jm = jm_decompose(t);
  CHECK(jm.even);
  CHECK(jm.g_e.size() == 79);
  CHECK(jm.c.size() == 52);
  // Three-level grading 27 + 79 + 27: the nontrivial sl2 modules are the 27
  // three-dimensional ones topped by the level-2 root spaces.
  CHECK(jm.grading.at(0).size() == 79);
  CHECK(jm.grading.at(2).size() == 27);
  CHECK(jm.modules.size() == 27);
  for (const auto& mod : jm.modules) CHECK(mod.n == 2);
  MagicalReport rep = analyze_triple(jm);
  REQUIRE(rep.magical);
  CHECK(rep.h_space.size() == 79);
  CHECK(rep.real_form.label == "e7(-25)");
}

TEST_CASE("tempered rows instantiate per rank") {
  auto split = tempered_lookup(analyze_partition("sl", 3, {3}));
  REQUIRE(split.has_value());
  CHECK(split->case_tag == "1");
  CHECK(split->ambient == "A2");
  CHECK(split->real_form == "sl(3,R)");
  CHECK(split->dual_pair == "sl(3) in sl(3)");

  auto cherm = tempered_lookup(analyze_partition("sp", 4, {2, 2}));
  REQUIRE(cherm.has_value());
  CHECK(cherm->case_tag == "2*");
  CHECK(cherm->real_form == "sp(4,R)");
  CHECK(cherm->h_label == "gl(2)");
  CHECK(cherm->dual_pair == "so(5) in so(5)");

  auto aherm = tempered_lookup(analyze_partition("sl", 4, {2, 2}));
  REQUIRE(aherm.has_value());
  CHECK(aherm->case_tag == "2");
  CHECK(aherm->ambient == "A3");
  CHECK(aherm->h_label == "s(gl(2) x gl(2))");
  CHECK(aherm->dual_pair == "sp(4) in sl(4)");

  auto bsub = tempered_lookup(analyze_partition("so", 7, {5, 1, 1}));
  REQUIRE(bsub.has_value());
  CHECK(bsub->case_tag == "3*");
  CHECK(bsub->real_form == "so(3,4)");
  CHECK(bsub->dual_pair == "sp(6) in sp(6)");

  auto dsub = tempered_lookup(analyze_partition("so", 8, {5, 1, 1, 1}));
  REQUIRE(dsub.has_value());
  CHECK(dsub->case_tag == "3");
  CHECK(dsub->real_form == "so(3,5)");
  CHECK(dsub->dual_pair == "so(7) in so(8)");

  // Hermitian so(2,q) and the ambiguous D4 forms are not tempered-listed.
  CHECK_FALSE(tempered_lookup(analyze_partition("so", 7, {3, 1, 1, 1, 1})));
  CHECK_FALSE(tempered_lookup(analyze_partition("so", 8, {3, 1, 1, 1, 1, 1})));

  CHECK_FALSE(tempered_lookup_label("e8(-24)", false, 'E', 8).has_value());
  auto f4row = tempered_lookup_label("f4(4)", false, 'F', 4);
  REQUIRE(f4row.has_value());
  CHECK(f4row->case_tag == "4*");
  CHECK(f4row->h_label == "sp(6) x sl(2)");
  CHECK(f4row->dual_pair == "f4 in f4");
}

TEST_CASE("factorization: sp4 and the odd orthogonal pairs") {
  auto r = factorization_check(classical("sp", 4), {4}, {2, 2});
  CHECK(r.all_ok);
  CHECK(r.ge2.size() == 3);
  CHECK(r.ge2_rank == 1);
  CHECK(r.gtilde2_rank == 1);
  CHECK(r.double_centralizer_splits);
  CHECK(r.image_contained);
  CHECK(r.rho2_principal_in_ge2);
  CHECK(r.rank_additive);
  CHECK(r.slice2_decomposes);
  CHECK(r.slice2_core == 1);
  CHECK(r.slice2_side == 3);
  CHECK(r.sigma_aligned);

  auto r5 = factorization_check(classical("so", 5), {5}, {3, 1, 1});
  CHECK(r5.all_ok);
  CHECK(r5.ge2.size() == 3);
  CHECK(r5.sigma_aligned);

  auto r7 = factorization_check(classical("so", 7), {7}, {5, 1, 1});
  CHECK(r7.all_ok);
  CHECK(r7.ge2.size() == 10);
  CHECK(r7.ge2_rank == 2);
  CHECK(r7.slice2_core == 2);
  CHECK(r7.slice2_side == 3);
  CHECK(r7.sigma_aligned);
}

TEST_CASE("factorization preconditions reject mismatched forms") {
  CHECK_THROWS_AS(factorization_check(classical("sl", 4), {4}, {2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(factorization_check(classical("sp", 4), {4}, {4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(factorization_check(classical("sp", 4), {2, 2}, {2, 2}),
                  std::invalid_argument);
}

TEST_CASE("shipped tables load and expose the expected rows") {
  const RealFormTable& forms = builtin_real_form_table();
  CHECK(forms.rows.size() >= 30);
  bool saw_e7 = false;
  for (const auto& row : forms.rows)
    if (row.label == "e7(-25)") {
      saw_e7 = true;
      CHECK(row.dim_h == 79);
      CHECK(row.families == std::vector<int>{2});
    }
  CHECK(saw_e7);

  const auto& diagrams = builtin_diagram_table();
  CHECK(diagrams.size() >= 9);
  bool saw_g2 = false;
  for (const auto& row : diagrams)
    if (row.type == 'G' && row.label == "subregular") {
      saw_g2 = true;
      CHECK(row.weights == std::vector<int>{0, 2});
    }
  CHECK(saw_g2);
}
