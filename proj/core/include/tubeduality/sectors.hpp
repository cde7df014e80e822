#pragma once

#include <map>
#include <string>
#include <vector>

#include "tubeduality/doubles.hpp"
#include "tubeduality/tubealg.hpp"

namespace tubeduality {

// How the simples of D*_M = Bim(H,H) are identified with a known fusion
// category: group-like (Vect_G, simple -> element) or Rep(G) (simple -> irrep).
enum class DualKind { Group, Rep };

struct DualDescription {
  DualKind kind = DualKind::Group;
  int set = 0;
  std::vector<int> image;  // simple index -> element / irrep index
  std::vector<std::string> names;
};

// Lexicographically smallest fusion-ring isomorphism onto G or Rep(G).
// Throws when none exists.
DualDescription describe_dual(const BimoduleCalculus& calc, int set, DualKind kind);

struct SectorLabel {
  int module = -1;  // index into double_simples(G)
  std::string label;
  cplx twist = 1.0;
  std::map<int, int> content;  // boundary simple -> multiplicity
};

// Label the part of `block` living on boundaries of dual.set.  The twist is
// the conjugate of the value of the twist tube on a slot projector.
SectorLabel identify_sector(const TubeAlgebra& alg, const SectorBlock& block, const DualDescription& dual,
                            const std::vector<DoubleModule>& doubles);

// Quantum dimension of Z as an object of D*_M: sum over boundaries of
// multiplicity times qdim.
double sector_length(const TubeAlgebra& alg, const SectorBlock& block, int set);

}  // namespace tubeduality
