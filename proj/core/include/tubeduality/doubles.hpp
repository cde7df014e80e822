#pragma once

#include <complex>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tubeduality/bimodule.hpp"

namespace tubeduality {

// Simple module ([c], V^) of the quantum double D(G).  Basis |c_i, v> with
// index i * dim V^ + v.
struct DoubleModule {
  int class_index = 0;
  std::string class_name;
  Irrep irrep;  // of the centralizer of c_1
  std::string label;
  cplx twist = 1.0;  // chi(c_1) / dim V^

  const FiniteGroup* group = nullptr;

  int dim() const;
  // rho(a (x) delta_g)
  Mat action(int a, int g) const;
  // rho(sum_g a (x) delta_g): the G-action on the module
  Mat group_action(int a) const;
  // rho(1 (x) delta_g): projector on the g-graded part
  Mat grading(int g) const;
};

std::vector<DoubleModule> double_simples(const FiniteGroup& g);
std::string double_label(const std::string& class_name, const std::string& irrep_name);

// Index of (a, g) in D(G) product: (a d_g)(b d_h) = delta(a^-1 g a, h) (ab d_g).
// Returns {ab, g} or {-1, -1} when the product vanishes.
std::pair<int, int> double_product(const FiniteGroup& g, std::pair<int, int> x, std::pair<int, int> y);

// Half-braiding of Z(Vect_G): R_a = rho(sum_g a d_g), mapping grade a^-1 g a to g.
Mat vect_half_braiding(const DoubleModule& z, int a);

// Decomposition slot of a D(G) module restricted to G: irrep and copy.
struct RepSlot {
  int irrep = 0;
  int copy = 0;
  auto operator<=>(const RepSlot&) const = default;
};

// Half-braiding of Z(Rep G) expanded on the resolution basis
// s^{U -> V' W} (s^{U -> W V})^dagger of Rep(G) = Bim(0,0), i.e. the tube
// basis of the Rep(G) chain.  Keys: (slot V, slot V', W, U).
struct RepHalfBraiding {
  std::vector<RepSlot> slots;
  std::vector<Mat> embeddings;  // isometric G-maps V -> module, one per slot
  std::map<std::tuple<RepSlot, RepSlot, int, int>, cplx> omega;

  cplx at(RepSlot v, RepSlot vp, int w, int u) const;
};

// `calc` must realize Rep(G) on coset space 0 (G/G) with the same group.
RepHalfBraiding rep_half_braiding(const DoubleModule& z, const BimoduleCalculus& calc);

// Printed entries of the Z(Rep S3) half-braiding tensors, keyed by sector
// label and (V, V', W, U) with irreps 0, 1, 2 (all slots multiplicity one).
using PrintedOmega = std::map<std::tuple<int, int, int, int>, cplx>;
std::map<std::string, PrintedOmega> printed_s3_half_braidings();

}  // namespace tubeduality
