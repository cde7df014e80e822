#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "tubeduality/family.hpp"
#include "tubeduality/tube.hpp"

namespace tubeduality {

using Coeffs = std::vector<std::pair<int, cplx>>;

// Finite *-algebra spanned by the (intertwining) tubes between the boundary
// simples of the given module categories.  With a single set this is the
// ordinary tube algebra; with two sets it also holds the intertwiners.
class TubeAlgebra {
 public:
  TubeAlgebra(const BimoduleCalculus& calc, std::vector<int> sets);

  const BimoduleCalculus& calc() const { return *calc_; }
  const std::vector<int>& sets() const { return sets_; }
  int size() const { return int(basis_.size()); }
  const TubeLabel& label(int i) const { return basis_.at(i); }
  int index_of(const TubeLabel& t) const;
  int identity_tube(CellRef boundary) const;
  const std::vector<CellRef>& boundaries() const { return boundaries_; }
  // tubes with the given source and target
  const std::vector<int>& between(CellRef source, CellRef target) const;

  // Coefficients of "first, then second", i.e. of O(second) O(first).
  const Coeffs& compose(int first, int second) const;
  // Coefficients of O(t)^dagger.
  const Coeffs& dagger(int t) const;

  // Expansion of a 2-cell mpo o source -> target o mpo in the tube basis.
  Coeffs expand(CellRef source, CellRef target, CellRef mpo, const Mat& cell) const;

  Vec mul(const Vec& a, const Vec& b) const;  // O(a) O(b)
  Vec adjoint(const Vec& a) const;
  Vec unit() const;
  Vec basis_vector(int i) const;

 private:
  const FMove& move(CellRef a, CellRef b, CellRef c, CellRef d) const;
  Coeffs compute_compose(int first, int second) const;
  Coeffs compute_dagger(int t) const;

  const BimoduleCalculus* calc_;
  std::vector<int> sets_;
  std::vector<CellRef> boundaries_;
  std::vector<TubeLabel> basis_;
  std::map<TubeLabel, int> index_;
  std::map<std::pair<CellRef, CellRef>, std::vector<int>> between_;
  std::map<CellRef, std::vector<int>> into_;
  mutable std::map<std::pair<int, int>, Coeffs> compose_;
  mutable std::map<int, Coeffs> dagger_;
  mutable std::map<std::array<CellRef, 4>, FMove> moves_;
};

// One slot of a simple block: a boundary simple and a degeneracy index.
struct SectorSlot {
  CellRef boundary;
  int copy = 0;
  auto operator<=>(const SectorSlot&) const = default;
};

// A simple block of the algebra with a full system of matrix units.
struct SectorBlock {
  Vec central;
  std::vector<SectorSlot> slots;
  std::vector<Vec> units;  // row-major, units[r * slots.size() + c]

  const Vec& unit(int r, int c) const { return units.at(std::size_t(r) * slots.size() + c); }
  int multiplicity(CellRef boundary) const;
  int slot_of(CellRef boundary, int copy) const;
};

// Deterministic decomposition into simple blocks and matrix units.
std::vector<SectorBlock> decompose(const TubeAlgebra& alg, std::uint64_t seed = 20231116);

// Scalar by which x acts on a slot projector: e x e = value e.
cplx slot_value(const TubeAlgebra& alg, const SectorBlock& block, int slot, const Vec& x);

// Twist element: the tube with mpo = boundary and identity crossing.
Vec twist_element(const TubeAlgebra& alg, CellRef boundary);

}  // namespace tubeduality
