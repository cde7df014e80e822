#pragma once

#include <array>
#include <map>

#include "tubeduality/operator.hpp"
#include "tubeduality/statespace.hpp"

namespace tubeduality {

// G-equivariant map on two adjacent D strands, blocks keyed by
// (Y_left, Y_right, Y_left', Y_right').
struct PairTerm {
  std::map<std::array<int, 4>, Mat> blocks;

  PairTerm& add(const PairTerm& other, cplx coeff = 1.0);
};

// Ladder with a rung: (id o g)(f o id), f a splitting Y_l -> Y_l' o R and g the
// adjoint of a splitting Y_r' -> R o Y_r.
PairTerm ladder(const BimoduleCalculus& calc, int yl, int yl2, int yr, int yr2, int rung, int kf = 0,
                int kg = 0);
// Sum of all ladders with the given rung between allowed legs.
PairTerm rung_term(const BimoduleCalculus& calc, const std::vector<int>& allowed, int rung);

// Acts on D strands j and j+1 (0-based, j+1 < L) through the shared module strand.
SparseOperator pair_operator(const StateSpace& space, const PairTerm& term, int j);

// Moves the first D strand through the boundary object to the end of the chain.
SparseOperator translation_operator(const StateSpace& space);

// Pair term acting across the boundary object: strands L and 1.
SparseOperator seam_operator(const StateSpace& space, const PairTerm& term);

}  // namespace tubeduality
