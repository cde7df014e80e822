#include "tubeduality/sectors.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace tubeduality {

DualDescription describe_dual(const BimoduleCalculus& calc, int set, DualKind kind) {
  const FiniteGroup& g = calc.group();
  const int n = int(calc.simples(set, set).size());
  const int m = kind == DualKind::Group ? g.order() : int(g.irreps().size());
  if (n != m) throw std::invalid_argument("dual has the wrong number of simples");

  auto target_mult = [&](int a, int b, int c) {
    if (kind == DualKind::Group) return g.mul(a, b) == c ? 1 : 0;
    return calc.multiplicity({0, 0, c}, {0, 0, a}, {0, 0, b});
  };
  auto source_mult = [&](int a, int b, int c) { return calc.multiplicity({set, set, c}, {set, set, a}, {set, set, b}); };
  auto target_dim = [&](int a) { return kind == DualKind::Group ? 1.0 : double(g.irreps()[a].dim); };

  std::vector<int> image(n, -1);
  std::vector<bool> used(m, false);
  std::function<bool(int)> extend = [&](int i) -> bool {
    if (i == n) return true;
    for (int t = 0; t < m; ++t) {
      if (used[t]) continue;
      if (std::abs(target_dim(t) - calc.qdim({set, set, i})) > 1e-9) continue;
      image[i] = t;
      bool ok = true;
      for (int a = 0; a <= i && ok; ++a)
        for (int b = 0; b <= i && ok; ++b)
          for (int c = 0; c <= i && ok; ++c)
            if (source_mult(a, b, c) != target_mult(image[a], image[b], image[c])) ok = false;
      if (ok) {
        used[t] = true;
        if (extend(i + 1)) return true;
        used[t] = false;
      }
    }
    image[i] = -1;
    return false;
  };
  if (!extend(0)) throw std::runtime_error("no fusion-ring isomorphism found");

  DualDescription d{kind, set, image, {}};
  for (int t : image) d.names.push_back(kind == DualKind::Group ? g.element_name(t) : g.irreps()[t].name);
  return d;
}

double sector_length(const TubeAlgebra& alg, const SectorBlock& block, int set) {
  double l = 0.0;
  for (const auto& s : block.slots)
    if (s.boundary.left == set) l += alg.calc().qdim(s.boundary);
  return l;
}

SectorLabel identify_sector(const TubeAlgebra& alg, const SectorBlock& block, const DualDescription& dual,
                            const std::vector<DoubleModule>& doubles) {
  const auto& calc = alg.calc();
  const FiniteGroup& g = calc.group();
  SectorLabel out;
  int first = -1;
  for (std::size_t s = 0; s < block.slots.size(); ++s) {
    const auto& sl = block.slots[s];
    if (sl.boundary.left != dual.set) continue;
    out.content[sl.boundary.index] += 1;
    if (first < 0) first = int(s);
  }
  if (first < 0) throw std::invalid_argument("block has no slot on this module");
  out.twist = std::conj(slot_value(alg, block, first, twist_element(alg, block.slots[first].boundary)));

  std::vector<int> candidates;
  if (dual.kind == DualKind::Group) {
    int cls = -1;
    int mult = -1;
    for (auto [a, k] : out.content) {
      int c = -1;
      for (int q = 0; q < int(g.classes().size()); ++q) {
        const auto& el = g.classes()[q].elements;
        if (std::find(el.begin(), el.end(), dual.image[a]) != el.end()) c = q;
      }
      if ((cls >= 0 && c != cls) || (mult >= 0 && k != mult)) throw std::runtime_error("inconsistent group-like content");
      cls = c;
      mult = k;
    }
    if (int(out.content.size()) != int(g.classes()[cls].elements.size()))
      throw std::runtime_error("block does not cover a whole conjugacy class");
    // characters of the symmetry tubes on the unit boundary
    std::vector<cplx> chi;
    if (cls == 0) {
      CellRef unit = calc.unit(dual.set);
      for (int e = 0; e < g.order(); ++e) {
        int x = int(std::find(dual.image.begin(), dual.image.end(), e) - dual.image.begin());
        CellRef X{dual.set, dual.set, x};
        int t = alg.index_of({unit, unit, X, X, 0, 0});
        cplx acc = 0;
        for (std::size_t s = 0; s < block.slots.size(); ++s)
          if (block.slots[s].boundary == unit) acc += slot_value(alg, block, int(s), alg.basis_vector(t));
        chi.push_back(std::conj(acc));
      }
    }
    for (int i = 0; i < int(doubles.size()); ++i) {
      const auto& d = doubles[i];
      if (d.class_index != cls || d.irrep.dim != mult) continue;
      if (std::abs(d.twist - out.twist) > 1e-6) continue;
      if (cls == 0) {
        bool ok = true;
        for (int e = 0; e < g.order(); ++e)
          if (std::abs(d.irrep(e).trace() - chi[e]) > 1e-6) ok = false;
        if (!ok) continue;
      }
      candidates.push_back(i);
    }
  } else {
    std::vector<int> content(g.irreps().size(), 0);
    for (auto [a, k] : out.content) content[dual.image[a]] = k;
    for (int i = 0; i < int(doubles.size()); ++i) {
      const auto& d = doubles[i];
      if (std::abs(d.twist - out.twist) > 1e-6) continue;
      if (induce_decompose(g, g.classes()[d.class_index].centralizer, d.irrep) != content) continue;
      candidates.push_back(i);
    }
  }
  if (candidates.size() != 1) throw std::runtime_error("sector label is not determined by content and twist");
  out.module = candidates[0];
  out.label = doubles[out.module].label;
  return out;
}

}  // namespace tubeduality
