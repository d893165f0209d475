// Developer probe for the two-step factorization check; not installed.
#include <chrono>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "magical/magical.hpp"

using namespace magical;

static void report(const FactorizationReport& r, long ms) {
  std::cout << "  dim ge2=" << r.ge2.size() << " rank ge2=" << r.ge2_rank
            << " rank gtilde2=" << r.gtilde2_rank
            << " dbl_split=" << r.double_centralizer_splits << "\n";
  std::cout << "  image_contained=" << r.image_contained
            << " rho2_principal_in_ge2=" << r.rho2_principal_in_ge2
            << " rank_additive=" << r.rank_additive << "\n";
  std::cout << "  slice2: split=" << r.slice2_decomposes
            << " core=" << r.slice2_core << " side=" << r.slice2_side
            << " core_match=" << r.core_dims_match
            << " side_match=" << r.side_dims_match << "\n";
  std::cout << "  rho1: sigma_aligned=" << r.sigma_aligned
            << " slice_compatible=" << r.slice_compatible
            << " slice1 core/side=" << r.slice1_core << "/" << r.slice1_side
            << "\n";
  std::cout << "  all_ok=" << r.all_ok << "  [" << ms << " ms]\n";
  if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
}

static std::vector<int> parse_partition(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// fact_probe cayley FAMILY SIZE PART: dump the Cayley data of one orbit.
static int cayley_mode(const std::vector<std::string>& args) {
  std::string family = args[1];
  int size = std::stoi(args[2]);
  std::vector<int> part = parse_partition(args[3]);
  auto L = std::make_shared<const LieAlgebra>(make_classical(family, size));
  Sl2Triple t = triple_from_partition(L, family, size, part);
  JMData jm = jm_decompose(t);
  MagicalReport rep = analyze_triple(jm);
  std::cout << family << size << " magical=" << rep.magical
            << " form=" << rep.real_form.label << "\n";
  CayleyData cd = cayley_data(rep);
  std::cout << "dim g0=" << cd.g0.size() << " dim c=" << cd.dim_c
            << " r=" << cd.r << " dim gtilde=" << cd.gtilde.size()
            << " dim v0=" << cd.v0.size() << " label=" << cd.v0_label << "\n";
  Subalgebra gt = make_subalgebra(*L, cd.gtilde, true);
  std::cout << "gtilde closed, dim=" << gt.basis.size() << "\n";
  return 0;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  using clock = std::chrono::steady_clock;
  try {
    if (args.size() == 4 && args[0] == "cayley") return cayley_mode(args);
    if (!args.empty() && args[0] == "f4") {
      auto L = std::make_shared<const LieAlgebra>(
          make_chevalley(build_root_system('F', 4)));
      WeightedDiagram principal{L->root_system.get(), {2, 2, 2, 2}};
      WeightedDiagram secondary{L->root_system.get(), {2, 2, 0, 0}};
      auto t0 = clock::now();
      auto r = factorization_check(L, principal, secondary);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    clock::now() - t0)
                    .count();
      std::cout << "F4 principal vs secondary\n";
      report(r, ms);
      return r.all_ok ? 0 : 1;
    }
    struct Case {
      std::string family;
      int size;
      std::vector<int> p1, p2;
    };
    std::vector<Case> cases = {
        {"sp", 4, {4}, {2, 2}},
        {"so", 5, {5}, {3, 1, 1}},
        {"so", 7, {7}, {5, 1, 1}},
        {"sl", 4, {4}, {2, 2}},
    };
    bool ok = true;
    for (const auto& c : cases) {
      std::cout << c.family << c.size << " (";
      for (int x : c.p1) std::cout << x << " ";
      std::cout << ") vs (";
      for (int x : c.p2) std::cout << x << " ";
      std::cout << ")\n";
      auto L = std::make_shared<const LieAlgebra>(
          make_classical(c.family, c.size));
      auto t0 = clock::now();
      auto r = factorization_check(L, c.p1, c.p2);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    clock::now() - t0)
                    .count();
      report(r, ms);
      ok = ok && r.all_ok;
    }
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n";
    return 2;
  }
}
