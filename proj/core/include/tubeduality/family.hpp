#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tubeduality/bimodule.hpp"

namespace tubeduality {

// Clebsch-Gordan coefficients C[{W,V,U}][{w,v,u}] for G = S3 in the irrep basis
// of s3_group(); indices are 0-based.  Only nonzero entries are stored.
using CGKey = std::array<int, 3>;
std::map<CGKey, std::map<CGKey, double>> s3_clebsch_gordan();

// A finite group with the coset spaces used by the built-in models and the
// bicategory of equivariant bundles over them.  Coset space 0 is always G/G,
// so Bim(0,0) = Rep(G) is the input category.
struct GroupFamily {
  std::string name;
  std::shared_ptr<BimoduleCalculus> calc;
  std::map<std::string, int> sets;  // "G", "1", "Z2", "Z3" -> coset space index

  int set(const std::string& n) const { return sets.at(n); }
  CellRef irrep(int i) const { return {0, 0, i}; }
};

const GroupFamily& z2_family();
const GroupFamily& s3_family();
const GroupFamily& family_by_name(const std::string& name);

// Recoupling of splitting trees.  For composable simple 1-cells a,b,c and a
// simple d, the left basis is (s_i^{ab->e} o id_c) s_k^{ec->d} and the right
// basis is (id_a o s_l^{bc->f}) s_j^{af->d}; matrix(r, c) = <right_r, left_c>.
struct TreeLabel {
  int mid = 0;    // e (left trees) or f (right trees)
  int inner = 0;  // i or l
  int outer = 0;  // k or j
  auto operator<=>(const TreeLabel&) const = default;
};

struct FMove {
  CellRef a, b, c, d;
  std::vector<TreeLabel> left, right;
  Mat matrix;

  int left_index(const TreeLabel& t) const;
  int right_index(const TreeLabel& t) const;
};

FMove fmove(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d);

// Explicit splitting-tree morphisms used by fmove and its consumers.
Mat left_tree(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d,
              const TreeLabel& t);
Mat right_tree(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d,
               const TreeLabel& t);

}  // namespace tubeduality
