#pragma once

#include <map>
#include <string>
#include <vector>

#include "tubeduality/family.hpp"

namespace tubeduality {

// One summand of a (possibly direct-sum) boundary object.
struct BoundaryComponent {
  int simple = 0;  // simple of Bim(H,H) = D*_M
  int copy = 0;    // copy index for repeated simples
  auto operator<=>(const BoundaryComponent&) const = default;
};

struct ChainConfig {
  const GroupFamily* family = nullptr;
  int module_set = 0;           // M = Bim(module_set, G)
  int length = 2;               // L: number of D strands; module strands 1..L+1
  std::vector<int> allowed_y;   // allowed irreps of G on the D strands
  std::vector<BoundaryComponent> boundary;

  const BimoduleCalculus& calc() const { return *family->calc; }
  CellRef module_object(int m) const { return {module_set, 0, m}; }
  CellRef boundary_object(int component) const {
    return {module_set, module_set, boundary.at(component).simple};
  }
};

// m: M_1..M_{L+1}; y: D strands Y_1..Y_L (strand j sits between M_j and M_{j+1});
// v: hom index of Hom(M_{j+1}, M_j o Y_j); a: hom index of Hom(M_1, A o M_{L+1}).
struct BasisState {
  int component = 0;
  std::vector<int> m;
  std::vector<int> y;
  std::vector<int> v;
  int a = 0;

  std::vector<int> key() const;
  auto operator<=>(const BasisState&) const = default;
};

class StateSpace {
 public:
  explicit StateSpace(ChainConfig config);

  const ChainConfig& config() const { return config_; }
  int dim() const { return int(states_.size()); }
  int length() const { return config_.length; }
  const BasisState& state(int i) const { return states_.at(i); }
  const std::vector<BasisState>& states() const { return states_; }
  int index_of(const BasisState& s) const;
  // indices of states on a given boundary component
  std::vector<int> component_indices(int component) const;

 private:
  ChainConfig config_;
  std::vector<BasisState> states_;
  std::map<std::vector<int>, int> index_;
};

// Lexicographic enumeration over (component, M_1, Y_1, M_2, v_1, ..., a).
// Throws std::runtime_error when the space is empty.
StateSpace enumerate(const ChainConfig& config);

}  // namespace tubeduality
