#pragma once

#include "tubeduality/operator.hpp"
#include "tubeduality/statespace.hpp"

namespace tubeduality {

// Generator of the (intertwining) tube algebra: an MPO labelled `mpo` closed
// around the chain, with boundary `source` turned into `target` through the
// 2-cell k o k'^dagger, k in Hom(fused, target o mpo), k' in Hom(fused, mpo o source).
// For symmetry tubes all four cells live in Bim(H,H); for intertwiners
// mpo, fused are in Bim(K,H), source in Bim(H,H) and target in Bim(K,K).
struct TubeLabel {
  CellRef source, target, mpo, fused;
  int k = 0;
  int kp = 0;
  auto operator<=>(const TubeLabel&) const = default;
};

// Rectangular operator from `in` to `out`.  Acts on every component of `in`
// whose simple is `source`, landing in the component of `out` whose simple is
// `target` and whose copy index agrees.
SparseOperator closed_mpo_operator(const StateSpace& in, const StateSpace& out, const TubeLabel& t);

// All tube labels between the given boundary simples (k, k' over full bases).
std::vector<TubeLabel> tube_labels(const BimoduleCalculus& calc, int source_set, int target_set,
                                   const std::vector<int>& sources, const std::vector<int>& targets);

}  // namespace tubeduality
