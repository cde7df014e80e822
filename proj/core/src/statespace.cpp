#include "tubeduality/statespace.hpp"

#include <functional>
#include <stdexcept>

namespace tubeduality {

std::vector<int> BasisState::key() const {
  std::vector<int> k{component, a};
  k.insert(k.end(), m.begin(), m.end());
  k.insert(k.end(), y.begin(), y.end());
  k.insert(k.end(), v.begin(), v.end());
  return k;
}

StateSpace::StateSpace(ChainConfig config) : config_(std::move(config)) {
  if (config_.length < 1) throw std::invalid_argument("chain length must be positive");
  if (config_.allowed_y.empty()) throw std::invalid_argument("no allowed D labels");
  if (config_.boundary.empty()) throw std::invalid_argument("no boundary object");
  const auto& calc = config_.calc();
  const int L = config_.length;
  const int nm = int(calc.simples(config_.module_set, 0).size());
  BasisState cur;
  cur.m.assign(L + 1, 0);
  cur.y.assign(L, 0);
  cur.v.assign(L, 0);
  std::function<void(int)> grow = [&](int j) {
    // j: number of D strands already placed
    if (j == L) {
      CellRef a = config_.boundary_object(cur.component);
      int mult = calc.multiplicity(config_.module_object(cur.m[0]), a, config_.module_object(cur.m[L]));
      for (int k = 0; k < mult; ++k) {
        cur.a = k;
        index_[cur.key()] = int(states_.size());
        states_.push_back(cur);
      }
      return;
    }
    for (int y : config_.allowed_y) {
      cur.y[j] = y;
      for (int next = 0; next < nm; ++next) {
        int mult = calc.multiplicity(config_.module_object(next), config_.module_object(cur.m[j]),
                                     {0, 0, y});
        cur.m[j + 1] = next;
        for (int k = 0; k < mult; ++k) {
          cur.v[j] = k;
          grow(j + 1);
        }
      }
    }
  };
  for (int c = 0; c < int(config_.boundary.size()); ++c) {
    cur.component = c;
    for (int m1 = 0; m1 < nm; ++m1) {
      cur.m[0] = m1;
      grow(0);
    }
  }
}

int StateSpace::index_of(const BasisState& s) const {
  auto it = index_.find(s.key());
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> StateSpace::component_indices(int component) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (states_[i].component == component) out.push_back(i);
  return out;
}

StateSpace enumerate(const ChainConfig& config) {
  StateSpace s(config);
  if (s.dim() == 0) throw std::runtime_error("empty state space for this boundary/constraint combination");
  return s;
}

}  // namespace tubeduality
