#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magical/sl2jm.hpp"

namespace magical {

// Row of the real-form lookup table: an sl2-triple with sign involution
// sigma is matched by (ambient type, rank, dim of the +1 eigenspace h, dim
// of the center of h).  `families` tags which branches of the magical
// classification the form belongs to.
struct RealFormRow {
  char type = '?';
  int rank = 0;
  std::size_t dim_h = 0;
  std::size_t dim_zh = 0;
  std::string label;
  std::vector<int> families;
};

struct RealFormTable {
  std::vector<RealFormRow> rows;
};

struct RealFormMatch {
  std::string label;  // single label, or "unidentified", or joined candidates
  std::vector<std::string> candidates;
  std::vector<int> families;  // union over candidates
  bool identified = false;
  bool ambiguous = false;
};

// Result of the sign-involution test on one sl2-triple.
struct MagicalReport {
  JMData jm;
  Matrix sigma;  // host coordinates; always an involution
  bool magical = false;
  // First basis pair (i, j), i < j, with sigma[b_i,b_j] != [sigma b_i, sigma b_j].
  std::optional<std::pair<std::size_t, std::size_t>> failure;
  std::vector<Vector> h_space;  // +1 eigenspace of sigma
  std::vector<Vector> m_space;  // -1 eigenspace
  RealFormMatch real_form;      // meaningful when magical
  std::string note;

  const LieAlgebra& algebra() const { return jm.algebra(); }
};

// Cayley-correspondence data attached to a magical triple.  g0 is the
// ad_h-weight-0 subalgebra, listed as the basis c ++ (g0 cap m) so that
// theta is diagonal; v is the span of the highest-weight lines of positive
// weight, grouped by weight m_j (ascending).
struct CayleyData {
  std::vector<Vector> g0;
  std::size_t dim_c = 0;  // prefix of g0 spanning c
  std::vector<Vector> center;  // center of g0, dim = r
  std::vector<Vector> gtilde;  // derived subalgebra of g0
  std::vector<Vector> c;
  std::vector<Vector> v;
  std::vector<int> v_weights;       // m_j per column of v
  std::vector<Vector> v_trivial;    // c-invariant lines of v
  std::vector<int> l;               // weights of the trivial lines, ascending
  std::vector<Vector> v0;           // [c, v], the nontrivial isotypic part
  std::vector<int> v0_weights;
  std::optional<int> m_c;           // common weight of v0; absent when v0 = 0
  Matrix theta;                     // +1 on c, -1 on the complement, in the g0 basis
  std::size_t r = 0;                // dim center(g0) = number of trivial lines
  std::size_t commutant_dim = 0;    // End_c(v0) over Q
  std::string v0_label;             // primary name: Ad_C / Std_C / V_k / 0
  std::vector<std::string> v0_label_candidates;
  std::string cayley_form;          // e.g. "R^2", or "g~(6) x R^1"
  std::string note;
};

// Summary of the c-representation on v (the last two columns of the
// correspondence table): multiplicity of the trivial rep, dim of the
// nontrivial part, its commutant dimension over Q, and a name.
struct CRepAnalysis {
  std::size_t r = 0;
  std::size_t dim_v0 = 0;
  std::size_t commutant_dim = 0;
  std::string label;
  std::vector<std::string> label_candidates;
  std::string note;
};

struct OrbitClassification {
  std::string orbit;            // "(2,2)" or a diagram label
  std::vector<int> partition;   // empty for diagram orbits
  std::vector<int> diagram;     // empty for partition orbits
  MagicalReport report;
  std::string note;             // e.g. very-even marker
};

// One row of the tempered-form table, instantiated at a concrete rank.
struct TemperedRow {
  std::string case_tag;    // "1", "2", "3", with "*" when the form also
                           // carries a principal triple
  std::string ambient;     // e.g. "A3", "C2"
  std::string real_form;
  std::string h_label;
  std::string dual_pair;   // "x in y"
};

struct StructuralCheck {
  bool ok = false;
  std::vector<std::string> failures;
};

// Two-slice factorization data.  ge2 is the part of the double centralizer
// Z(c2) that is Killing-orthogonal to c2.  The verified statements are:
//   - Z(c2) = z(c2) + ge2 and the image of rho2 sits inside ge2, where it is
//     a principal triple (so the slice of rho2 restricted to ge2 is the
//     principal slice of ge2);
//   - the slice directions of rho2 split as (g_{e2} cap ge2) + (g_{e2} cap
//     ge2-perp) with core dimension rank(ge2) and side dimension
//     dim c2 + dim v0;
//   - the ambient rank splits as rank(ge2) + rank(gtilde2), which is the
//     dimension count for cutting the principal slice into a slice for the
//     Cayley algebra and a principal slice of ge2.
// sigma_aligned reports whether the search found a principal triple sharing
// the sign involution of rho2 (alignment is a statement over the reals; a
// rational witness may sit outside the sparse search range, so this flag
// does not gate all_ok).  slice1_core/slice1_side record how the chosen
// principal slice meets ge2; they are informational (for non-principal rho2
// the centralizer g_{e1} contains no element of rho2's orbit type, so the
// core is typically 0).
struct FactorizationReport {
  Sl2Triple rho1;  // principal representative actually used
  Sl2Triple rho2;
  std::vector<Vector> ge2;
  std::size_t ge2_rank = 0;      // generic-centralizer dimension, sampled
  std::size_t gtilde2_rank = 0;  // same for the Cayley algebra of rho2
  bool double_centralizer_splits = false;  // Z(c2) = z(c2) + ge2
  bool image_contained = false;            // im(rho2) inside ge2
  bool rho2_principal_in_ge2 = false;
  bool rank_additive = false;    // rank(g) = rank(ge2) + rank(gtilde2)
  bool sigma_aligned = false;    // sign involution of rho1 equals rho2's
  bool slice_compatible = false;  // f2 lies on the slice of rho1
  bool slice2_decomposes = false;  // g_{e2} = (g_{e2} cap ge2) + perp part
  std::size_t slice2_core = 0;     // dim g_{e2} cap ge2
  std::size_t slice2_side = 0;     // dim g_{e2} cap ge2-perp
  std::size_t slice1_core = 0;     // dim g_{e1} cap ge2 (informational)
  std::size_t slice1_side = 0;     // dim g_{e1} cap ge2-perp (informational)
  bool core_dims_match = false;    // slice2_core == rank(ge2)
  bool side_dims_match = false;    // slice2_side == dim c2 + dim v0
  bool all_ok = false;
  std::string note;
};

// --- data tables -----------------------------------------------------------

// Directory holding the shipped tables: $MAGICAL_DATA_DIR when set, else the
// compiled-in default.
std::string data_directory();

RealFormTable load_real_form_table(const std::string& path);
const RealFormTable& builtin_real_form_table();

// Weighted-diagram rows shipped for the exceptional types.
struct DiagramRow {
  char type = '?';
  int rank = 0;
  std::string label;
  std::vector<int> weights;
};
std::vector<DiagramRow> load_diagram_table(const std::string& path);
const std::vector<DiagramRow>& builtin_diagram_table();

// --- core operations -------------------------------------------------------

// (type, rank) of the ambient algebra: classical names map to A/B/C/D,
// Chevalley algebras report their root system.
std::pair<char, int> classification_key(const LieAlgebra& L);

// dim ker ad_e equals the ambient rank exactly for the principal orbit.
bool is_principal(const JMData& jm);

// Sign of sigma on the depth-k layer of a module of highest weight n.
int sigma_layer_sign(int n, int k);

// The involution that is +1 on the trivial summands and (-1)^(k+1) on the
// depth-k layer of every nontrivial summand.  Always squares to the
// identity (verified).
Matrix sigma_involution(const JMData& jm);

// True iff sigma is a Lie algebra automorphism; on failure also returns the
// first basis pair (i, j), i < j, where sigma[b_i,b_j] != [sigma b_i, sigma b_j].
// The zero triple is reported non-magical by convention.
std::pair<bool, std::optional<std::pair<std::size_t, std::size_t>>> is_magical(
    const JMData& jm);

MagicalReport analyze_triple(const JMData& jm);
MagicalReport analyze_triple(const JMData& jm, const RealFormTable& table);

RealFormMatch identify_real_form(const MagicalReport& report);
RealFormMatch identify_real_form(const MagicalReport& report, const RealFormTable& table);

// Requires report.magical; throws std::runtime_error("table mismatch: ...")
// when the trivial multiplicity disagrees with dim center(g0) or the
// nontrivial part fails the irreducibility bookkeeping.
CayleyData cayley_data(const MagicalReport& report);

CRepAnalysis c_rep_analysis(const CayleyData& cd);

// "K^{m_c+1}" with multiplicity dim v0, then "K^{l_j+1}" per trivial line.
std::vector<std::string> cayley_twists(const CayleyData& cd);

// Exact identities satisfied by every magical triple: sigma^2 = Id,
// h = c + ad_f(m), m = v + ad_f^2(m), ad_f is a bijection ad_f(m) -> ad_f^2(m),
// h is bracket-closed, [h,m] in m, [m,m] in h.
StructuralCheck structural_identities(const MagicalReport& report);

// Partitions of `size` in descending lex order, filtered by the parity rule
// of the family ("sl": all; "so": even parts with even multiplicity; "sp":
// odd parts with even multiplicity).
std::vector<std::vector<int>> nilpotent_partitions(const std::string& family, int size);

// family "sl"/"so"/"sp" with size = matrix size: one entry per nilpotent
// orbit partition (very-even so-partitions appear once, with a note that
// they split into two orbits).  family "G"/"F"/"E" with size = rank: one
// entry per shipped diagram row.
std::vector<OrbitClassification> classify_magical(const std::string& family, int size);

// Matches the tempered table: split forms hit the generic row with dual
// pair "g^ in g^"; non-principal triples match their form-specific row;
// returns nullopt when the form is not tempered-listed.
std::optional<TemperedRow> tempered_lookup(const MagicalReport& report);
// Label-level core, exposed for direct queries ("e8(-24)" -> nullopt).
std::optional<TemperedRow> tempered_lookup_label(const std::string& label,
                                                 bool principal, char type,
                                                 int rank);

// Preconditions (checked): rho1 principal, rho2 non-principal and magical,
// both with the same identified real form; violations throw
// std::invalid_argument.  Internally searches for a principal representative
// sharing the sign involution of rho2 (shifting f2 along the slice of rho2,
// or assembling one from the module chain ends); the report records the
// representative used.
FactorizationReport factorization_check(std::shared_ptr<const LieAlgebra> L,
                                        const std::vector<int>& rho1_partition,
                                        const std::vector<int>& rho2_partition);
FactorizationReport factorization_check(std::shared_ptr<const LieAlgebra> L,
                                        const WeightedDiagram& rho1,
                                        const WeightedDiagram& rho2);

}  // namespace magical
