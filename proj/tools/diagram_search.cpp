// Scans {0,2}-weighted diagrams of an exceptional type: lists the ad_h
// weight-zero dimension per diagram (computable from the root system alone),
// and runs the full triple construction + sign-involution analysis on
// requested candidates.  Used to curate data/weighted_diagrams.txt.

#include <chrono>
#include <cstring>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "magical/magical.hpp"

using namespace magical;

namespace {

int diagram_weight(const RootSystem& rs, const Root& beta, const std::vector<int>& w) {
  int s = 0;
  for (int i = 0; i < rs.rank; ++i) s += beta[i] * w[i];
  return s;
}

void analyze_diagram(std::shared_ptr<const LieAlgebra> host, const std::vector<int>& w) {
  WeightedDiagram d{host->root_system.get(), w};
  auto t0 = std::chrono::steady_clock::now();
  Sl2Triple t;
  try {
    t = triple_from_weighted_diagram(host, d);
  } catch (const std::exception& e) {
    std::cout << "  triple construction failed: " << e.what() << "\n";
    return;
  }
  JMData jm = jm_decompose(t);
  MagicalReport rep = analyze_triple(jm);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << "  dim g_e=" << jm.g_e.size() << " dim c=" << jm.c.size()
            << " even=" << jm.even << " magical=" << rep.magical
            << " dim h=" << rep.h_space.size() << " form=" << rep.real_form.label
            << "  [" << ms << " ms]\n";
  if (rep.magical) {
    try {
      CayleyData cd = cayley_data(rep);
      std::cout << "    r=" << cd.r << " dim gtilde=" << cd.gtilde.size()
                << " dim c=" << cd.c.size() << " dim v0=" << cd.v0.size()
                << " m_c=" << (cd.m_c ? std::to_string(*cd.m_c) : "-") << " l=";
      for (int lj : cd.l) std::cout << lj << " ";
      std::cout << " v0 label=" << cd.v0_label << "\n";
    } catch (const std::exception& e) {
      std::cout << "    cayley_data failed: " << e.what() << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: diagram_search TYPE RANK [--target DIM] [--try W1,...,Wr]\n";
    return 2;
  }
  char type = argv[1][0];
  int rank = std::atoi(argv[2]);
  int target = -1;
  std::vector<int> try_weights;
  for (int i = 3; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--target") && i + 1 < argc) target = std::atoi(argv[++i]);
    if (!std::strcmp(argv[i], "--try") && i + 1 < argc) {
      std::istringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) try_weights.push_back(std::stoi(tok));
    }
  }

  RootSystem rs = build_root_system(type, rank);
  auto host = std::make_shared<const LieAlgebra>(make_chevalley(rs));
  std::cout << "algebra " << host->name << " dim " << host->dim << "\n";

  if (!try_weights.empty()) {
    std::cout << "diagram:";
    for (int x : try_weights) std::cout << " " << x;
    std::cout << "\n";
    analyze_diagram(host, try_weights);
    return 0;
  }

  for (unsigned mask = 0; mask < (1u << rank); ++mask) {
    std::vector<int> w(rank, 0);
    for (int i = 0; i < rank; ++i)
      if (mask & (1u << i)) w[i] = 2;
    int g0 = rs.rank, g2 = 0;
    for (const Root& beta : rs.positive) {
      int val = diagram_weight(rs, beta, w);
      if (val == 0) g0 += 2;
      if (val == 2) ++g2;
    }
    std::cout << "w=";
    for (int x : w) std::cout << x;
    std::cout << " dim g0=" << g0 << " dim g2=" << g2 << "\n";
    if (target >= 0 && g0 == target) analyze_diagram(host, w);
  }
  return 0;
}
