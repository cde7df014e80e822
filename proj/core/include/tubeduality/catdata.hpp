#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tubeduality/family.hpp"

namespace tubeduality {

// Which kind of associator a block of symbols is, read off from the coset
// spaces (s0, s1, s2, s3) of its composable labels a: s0<-s1, b: s1<-s2,
// c: s2<-s3 relative to the base set of the input category D.
enum class SymbolFamily { F, ModuleAssoc, BimoduleAssoc, FunctorStructure, FunctorComposition, CompositionAssoc };

std::string family_name(SymbolFamily f);  // F, F_act, F_bimod, omega, F_comp, F_circ
SymbolFamily family_from_name(const std::string& name);
SymbolFamily classify(const std::array<int, 4>& sets, int base);

struct SimpleObject {
  int id = 0;
  std::string name;
  double quantum_dim = 1.0;
};

struct FusionRing {
  std::vector<SimpleObject> objects;
  int unit = 0;
  std::map<std::array<int, 3>, int> mult;  // (a, b, c) -> N^c_{ab}

  int size() const { return int(objects.size()); }
  int n(int a, int b, int c) const;
  Mat fusion_matrix(int a) const;  // (L_a)_{cb} = N^c_{ab}
  double fpdim(int a) const;
  double global_dim() const;  // sum of FPdim^2
  // max violation of the unit law and of associativity of multiplicities
  int unit_law_violations() const;
  int associativity_violations() const;
};

// Sparse index of one symbol entry: coset spaces, simple labels
// (a, b, c, d, e, f) and hom indices (i, k, l, j) in the order
// (ab->e, ec->d, bc->f, af->d).
struct SymbolIndex {
  std::array<int, 4> sets{};
  std::array<int, 6> labels{};
  std::array<int, 4> hom{};
  auto operator<=>(const SymbolIndex&) const = default;
};

struct SymbolTable {
  SymbolFamily family = SymbolFamily::F;
  std::map<SymbolIndex, cplx> entries;
};

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All data of a group-theoretical bicategory needed by the lattice models:
// simples of every Hom(l, r) category, fusion multiplicities of composable
// simples and associator blocks for the registered coset-space tuples.
class CategoryBundle {
 public:
  std::string name;
  int base = 0;
  std::vector<std::string> set_names;
  std::map<std::pair<int, int>, std::vector<SimpleObject>> objects;
  std::map<std::array<CellRef, 3>, int> fusion;  // (x, y, z) -> N^z_{xy}
  std::vector<std::array<int, 4>> symbol_sets;   // tuples with complete tables
  std::map<std::array<CellRef, 4>, FMove> symbols;

  int num_sets() const { return int(set_names.size()); }
  const std::vector<SimpleObject>& simples(int left, int right) const;
  int multiplicity(CellRef z, CellRef x, CellRef y) const;
  bool has_tables(const std::array<int, 4>& sets) const;
  // Throws BundleError when the tuple is not registered.
  const FMove& symbol(CellRef a, CellRef b, CellRef c, CellRef d) const;
  // Simple of Hom(left, right) by name; -1 when absent.
  int find(int left, int right, const std::string& name) const;
  SymbolTable table(SymbolFamily family) const;
};

// Built-in bundles: "vec_z2" (Z2 family, sets G and 1) and "rep_s3" (S3
// family, sets G, 1, Z2, Z3).  Tables are derived from explicit intertwiners.
std::vector<std::string> builtin_bundle_names();
CategoryBundle builtin_bundle(const std::string& name);
// The group family a built-in bundle was derived from.
const GroupFamily& builtin_family(const std::string& name);
// Display names of simples used by the built-in models.
std::string simple_name(const GroupFamily& family, CellRef c);

CategoryBundle bundle_from_calculus(const std::string& name, const GroupFamily& family,
                                    const std::vector<std::array<int, 4>>& symbol_sets);

// JSON bundle format: {"name", "sets", "base": {...}, "modules": [...], "functors": [...]}
// with symbol entries {"family", "sets", "labels", "hom", "re", "im"}.
CategoryBundle bundle_from_json_text(const std::string& text);
std::string bundle_to_json_text(const CategoryBundle& bundle);
CategoryBundle load_bundle(const std::string& path);
void save_bundle(const CategoryBundle& bundle, const std::string& path);
// Built-in name, existing path, or <name>.json under TUBEDUALITY_DATA_DIR.
CategoryBundle resolve_bundle(const std::string& name_or_path);

// Max |path1 - path2| of the pentagon for labels over coset spaces s0..s4.
double pentagon_residual(const CategoryBundle& b, const std::array<int, 5>& sets, int only_a = -1,
                         int only_b = -1);
// Pulling an MPO X in Fun(M_h, M_k) through the module associators.
double validate_pulling_through(const CategoryBundle& b, int module_h, int module_k, int functor);
// Fusing X1 in Fun(M_k, M_o) with X2 in Fun(M_h, M_k).
double validate_mpo_fusion(const CategoryBundle& b, int module_h, int module_k, int module_o, int x1,
                           int x2);
// Max ||B^dagger B - 1|| over blocks of one family.
double unitarity_residual(const CategoryBundle& b, SymbolFamily family);
// Max deviation from the identity of blocks with a unit argument.
double unit_gauge_residual(const CategoryBundle& b);

FusionRing base_ring(const CategoryBundle& b);
FusionRing morita_dual_ring(const CategoryBundle& b, int module_set);

// Same bundle in a random unitary basis of every hom space.
CategoryBundle gauge_transform(const CategoryBundle& b, std::uint64_t seed);

// F_act table of Rep(G) acting on Rep(H), built from explicit intertwiners.
// Throws std::invalid_argument when `subgroup` is not a subgroup.
SymbolTable derive_module_associator(const FiniteGroup& group, const std::vector<int>& subgroup);

// Printed symbol values of the Rep(S3) examples.  Hom indices are 0-based.
struct PrintedSymbol {
  std::string group;  // which printed table
  SymbolFamily family = SymbolFamily::F;
  std::array<int, 4> sets{};
  std::array<std::string, 6> names;  // a b c d e f
  std::array<int, 4> hom{};          // i k l j
  cplx value;
};
std::vector<PrintedSymbol> printed_rep_s3_symbols();

struct PrintedFit {
  std::string group;
  int entries = 0;
  bool conjugated = false;  // printed symbols use fusion (not splitting) vertices
  double residual = 0.0;    // after the best per-vertex phase gauge
};
// Fit one phase per hom-space basis vector so the bundle reproduces each
// printed group.  Unfittable groups report residual >= the mismatch.
std::vector<PrintedFit> fit_printed(const CategoryBundle& b, const std::vector<PrintedSymbol>& printed);

struct ValidationReport {
  std::map<std::string, double> unitarity;
  double unit_gauge = 0.0;
  double pulling_through = 0.0;
  double mpo_fusion = 0.0;
  double fpdim_mismatch = 0.0;
  int ring_violations = 0;
  std::vector<PrintedFit> printed;
  bool ok(double tol = kTableTol) const;
};
ValidationReport validate_bundle(const CategoryBundle& b);

}  // namespace tubeduality
