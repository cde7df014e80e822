#pragma once

// Residual checks shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <vector>

#include "tubeduality/decomposition.hpp"

namespace checks {

using namespace tubeduality;

// Space twisted by the direct sum of every boundary simple of the model.
inline StateSpace all_boundaries(const ModelSpec& m, int L) {
  std::vector<BoundaryComponent> comps;
  for (int a = 0; a < int(boundary_names(m).size()); ++a) comps.push_back({a, 0});
  return enumerate(make_config(m, L, comps));
}

struct Faithfulness {
  double product = 0.0;
  double adjoint = 0.0;
  int tubes = 0;
};

// Abstract products and adjoints of all tube pairs against dense operators.
inline Faithfulness tube_faithfulness(const ModelSpec& m, int L) {
  auto sys = sector_system(m);
  const TubeAlgebra& alg = sys->algebra;
  const StateSpace space = all_boundaries(m, L);
  std::vector<Mat> ops;
  for (int i = 0; i < alg.size(); ++i) ops.push_back(tube_to_operator(space, alg.label(i)).dense());
  Faithfulness out;
  out.tubes = alg.size();
  for (int i = 0; i < alg.size(); ++i) {
    Mat d = Mat::Zero(space.dim(), space.dim());
    for (auto [t, c] : alg.dagger(i)) d += c * ops[t];
    out.adjoint = std::max(out.adjoint, max_abs(d - ops[i].adjoint()));
    for (int j = 0; j < alg.size(); ++j) {
      Mat p = Mat::Zero(space.dim(), space.dim());
      for (auto [t, c] : alg.compose(i, j)) p += c * ops[t];
      out.product = std::max(out.product, max_abs(ops[j] * ops[i] - p));
    }
  }
  return out;
}

// max ||[H, O(t)]|| over boundary-preserving tubes of every simple boundary.
inline double symmetry_commutation(const ModelSpec& m, int L) {
  auto sys = sector_system(m);
  const TubeAlgebra& alg = sys->algebra;
  double worst = 0.0;
  for (int a = 0; a < int(boundary_names(m).size()); ++a) {
    const AssembledModel model = assemble(m, L, {{a, 0}});
    const Mat h = model.hamiltonian.dense();
    const CellRef ca{m.module_set, m.module_set, a};
    for (int t : alg.between(ca, ca)) {
      const Mat o = tube_to_operator(model.space, alg.label(t)).dense();
      worst = std::max(worst, max_abs(h * o - o * h));
    }
  }
  return worst;
}

// Models with distinct module categories, one per built-in dual.
inline std::vector<const ModelSpec*> distinct_duals() {
  std::vector<const ModelSpec*> out;
  for (const char* n : {"ising", "kw", "xxz", "rep_z2", "rep_z3", "rep_s3"}) out.push_back(&model_by_name(n));
  return out;
}

}  // namespace checks
