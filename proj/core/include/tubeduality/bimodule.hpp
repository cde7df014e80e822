#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tubeduality/group.hpp"
#include "tubeduality/linalg.hpp"

namespace tubeduality {

// Left cosets G/H as a G-set.
struct CosetSpace {
  std::vector<int> subgroup;
  std::vector<std::vector<int>> cosets;  // sorted elements of each coset
  std::vector<std::vector<int>> act;     // act[g][p]
  int size() const { return int(cosets.size()); }
};

// A G-equivariant vector bundle over (left G-set) x (right G-set).  These are
// the 1-cells of the group-theoretical bicategory: for subgroups K, H of G,
// Bim(K, H) realizes Fun_{Rep G}(M_H, M_K), with M_G = Rep(G) itself.
// Composition is the fibre product over the middle G-set.
struct Bimodule {
  int left = 0;
  int right = 0;
  std::vector<std::pair<int, int>> grade;  // per basis vector
  std::vector<Mat> rho;                    // one per group element

  int dim() const { return int(grade.size()); }
};

// A simple 1-cell: a G-orbit on left x right together with an irrep of the
// stabilizer of the orbit representative.
struct SimpleCell {
  Bimodule object;
  int orbit = 0;
  std::pair<int, int> orbit_rep;
  std::vector<int> stabilizer;
  std::string irrep;
  double qdim = 1.0;
};

struct CellRef {
  int left = 0;
  int right = 0;
  int index = 0;
  auto operator<=>(const CellRef&) const = default;
};

class BimoduleCalculus {
 public:
  BimoduleCalculus(FiniteGroup group, std::vector<std::vector<int>> subgroups);

  const FiniteGroup& group() const { return group_; }
  int num_sets() const { return int(sets_.size()); }
  const CosetSpace& coset_space(int i) const { return sets_.at(i); }
  // index of the coset space of the given subgroup, -1 when absent
  int set_of(const std::vector<int>& subgroup) const;

  const std::vector<SimpleCell>& simples(int left, int right) const;
  const Bimodule& object(CellRef c) const { return simples(c.left, c.right).at(c.index).object; }
  double qdim(CellRef c) const { return simples(c.left, c.right).at(c.index).qdim; }
  CellRef unit(int set) const { return {set, set, 0}; }
  CellRef dual(CellRef c) const;

  static std::vector<std::pair<int, int>> composite_pairs(const Bimodule& a, const Bimodule& b);
  Bimodule compose(const Bimodule& a, const Bimodule& b) const;
  // id_e o f : e o v -> e o w
  Mat whisker_left(const Bimodule& e, const Bimodule& v, const Bimodule& w, const Mat& f) const;
  // f o id_e : v o e -> w o e
  Mat whisker_right(const Mat& f, const Bimodule& v, const Bimodule& w, const Bimodule& e) const;

  // Canonical isomorphisms e -> e o 1 and e -> 1 o e.
  Mat right_unitor(const Bimodule& e) const;
  Mat left_unitor(const Bimodule& e) const;

  // Orthonormal basis of equivariant grade-preserving maps from -> to, in the
  // pairing Tr(a^dagger b)/dim(from).  Lexicographic in elementary matrices.
  std::vector<Mat> hom_basis(const Bimodule& from, const Bimodule& to) const;
  int hom_dim(const Bimodule& from, const Bimodule& to) const {
    return int(hom_basis(from, to).size());
  }

  // Isometric splitting maps z -> x o y (cached).
  const std::vector<Mat>& splitting(CellRef z, CellRef x, CellRef y) const;
  int multiplicity(CellRef z, CellRef x, CellRef y) const { return int(splitting(z, x, y).size()); }
  // Replace the cached basis (used to install printed Clebsch-Gordan data).
  void set_splitting(CellRef z, CellRef x, CellRef y, std::vector<Mat> basis);
  // Rescale one splitting vector by a phase (gauge fixing).
  void rephase_splitting(CellRef z, CellRef x, CellRef y, int k, cplx phase);
  // Simple constituents of x o y, in index order.
  std::vector<int> channels(CellRef x, CellRef y) const;

 private:
  std::vector<SimpleCell> build_simples(int left, int right) const;

  FiniteGroup group_;
  std::vector<CosetSpace> sets_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<std::vector<SimpleCell>>> simples_;
  mutable std::map<std::tuple<CellRef, CellRef, CellRef>, std::unique_ptr<std::vector<Mat>>> split_;
};

}  // namespace tubeduality
