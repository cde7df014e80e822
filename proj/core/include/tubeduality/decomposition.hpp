#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tubeduality/doubles.hpp"
#include "tubeduality/hamiltonian.hpp"
#include "tubeduality/sectors.hpp"
#include "tubeduality/tubealg.hpp"

namespace tubeduality {

// Tube algebra of one or more module categories of a family together with its
// simple blocks and their sector labels.
struct SectorSystem {
  const GroupFamily* family = nullptr;
  TubeAlgebra algebra;
  std::vector<DualDescription> duals;  // one per set
  std::vector<SectorBlock> blocks;
  std::vector<std::vector<SectorLabel>> labels;  // [block][set]; module -1 when absent

  int set_position(int set) const;
  // Label of a block as seen from `set`; throws when the block has no slot there.
  const SectorLabel& label(int block, int set) const;
};

// Cached per family and set list.
std::shared_ptr<const SectorSystem> sector_system(const GroupFamily& family, const std::vector<int>& sets,
                                                  const std::vector<DualKind>& kinds);
std::shared_ptr<const SectorSystem> sector_system(const ModelSpec& model);
std::shared_ptr<const SectorSystem> sector_system(const ModelSpec& source, const ModelSpec& target);

SparseOperator tube_to_operator(const StateSpace& space, const TubeLabel& t);
// Operator of an algebra element from `in` to `out`; tubes whose boundaries
// do not occur in the spaces contribute nothing.
SparseOperator element_operator(const TubeAlgebra& alg, const Vec& x, const StateSpace& in, const StateSpace& out);

struct MatrixUnit {
  std::string sector;
  SectorSlot source, target;
  Vec coefficients;
  double normalization = 0.0;  // length of Z over FPdim of the input category
};
// Complete system of matrix units of the blocks touching `set`.
std::vector<MatrixUnit> matrix_units(const SectorSystem& sys, int set);

// Image of one slot projector e^{Z,A_i,A_i} on one boundary component.
struct SectorPiece {
  int block = 0;
  int slot = 0;
  int component = 0;
  SectorLabel label;
  CellRef boundary;
  int copy = 0;
  Mat basis;  // orthonormal columns, in the order of the projector columns

  int dim() const { return int(basis.cols()); }
  Mat projector() const { return basis * basis.adjoint(); }
};

// Orthonormal basis of the image of one slot projector on every boundary
// component carrying the slot's simple.
Mat slot_basis(const SectorSystem& sys, int block, int slot, const StateSpace& space);

std::vector<SectorPiece> sector_pieces(const SectorSystem& sys, const StateSpace& space);

struct SectorDecomposition {
  std::vector<SectorPiece> pieces;
  std::vector<Mat> blocks;      // basis^dagger H basis
  double completeness = 0.0;    // ||sum of projectors - 1||_max
  double commutator = 0.0;      // max ||[H, O(t)]|| over boundary-preserving tubes
  double reconstruction = 0.0;  // ||H - sum_Z V B V^dagger||_max
};

// Throws std::runtime_error when H does not commute with the
// boundary-preserving tubes (tolerance kDerivedTol).
SectorDecomposition sector_decompose(const SectorSystem& sys, const StateSpace& space, const SparseOperator& h);

// Slot projector of Z(Rep G) built from a half-braiding on the Rep(G) chain
// (set 0): e = l(Z)/|G| sum_{W,U} (d_W / d_V) Omega(V, V, W, U) T(V, V, W, U).
Vec half_braiding_projector(const TubeAlgebra& alg, const DoubleModule& z, const RepHalfBraiding& hb, RepSlot slot);

}  // namespace tubeduality
