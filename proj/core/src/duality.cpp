#include "tubeduality/duality.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "tubeduality/catdata.hpp"
#include "tubeduality/spectra.hpp"

namespace tubeduality {

std::vector<std::pair<std::string, std::string>> builtin_dual_pairs() {
  return {{"ising", "kw"}, {"rep_z2", "xxz"}, {"rep_z3", "xxz"}, {"rep_s3", "xxz"}};
}

std::vector<std::string> functor_names(const ModelSpec& source, const ModelSpec& target) {
  if (source.family != target.family) throw std::invalid_argument("models do not share the input category");
  const auto& calc = *source.family->calc;
  std::vector<std::string> out;
  const int n = int(calc.simples(target.module_set, source.module_set).size());
  for (int i = 0; i < n; ++i) out.push_back(simple_name(*source.family, {target.module_set, source.module_set, i}));
  return out;
}

std::vector<TubeLabel> intertwiner_labels(const ModelSpec& source, const ModelSpec& target, int a, int b,
                                          int functor) {
  auto sys = sector_system(source, target);
  const CellRef ca{source.module_set, source.module_set, a}, cb{target.module_set, target.module_set, b};
  std::vector<TubeLabel> out;
  for (int i : sys->algebra.between(ca, cb)) {
    const TubeLabel& t = sys->algebra.label(i);
    if (functor < 0 || t.mpo.index == functor) out.push_back(t);
  }
  return out;
}

SparseOperator intertwiner_to_operator(const StateSpace& source, const StateSpace& target, const TubeLabel& t) {
  return closed_mpo_operator(source, target, t);
}

namespace {

std::optional<StateSpace> twisted_space(const ModelSpec& m, int length, int simple) {
  try {
    return enumerate(make_config(m, length, {{simple, 0}}));
  } catch (const std::runtime_error&) {
    return std::nullopt;  // no states for this boundary at this length
  }
}

std::set<std::string> all_sectors(const SectorSystem& sys, int set) {
  std::set<std::string> out;
  const int pos = sys.set_position(set);
  for (const auto& row : sys.labels)
    if (row[pos].module >= 0) out.insert(row[pos].label);
  return out;
}

}  // namespace

SectorMap sector_map(const ModelSpec& source, const ModelSpec& target, int functor, int max_length) {
  const auto names = functor_names(source, target);
  if (functor < 0 || functor >= int(names.size())) throw std::invalid_argument("functor index out of range");
  SectorMap out;
  out.functor = names[functor];
  auto ssys = sector_system(source);
  auto tsys = sector_system(target);
  const auto sb = boundary_names(source), tb = boundary_names(target);

  std::map<std::pair<std::string, std::string>, SectorMapEntry> found;
  for (int len = 2; len <= max_length; ++len) {
    for (int a = 0; a < int(sb.size()); ++a) {
      auto sspace = twisted_space(source, len, a);
      if (!sspace) continue;
      const auto spieces = sector_pieces(*ssys, *sspace);
      for (int b = 0; b < int(tb.size()); ++b) {
        const auto labels = intertwiner_labels(source, target, a, b, functor);
        if (labels.empty()) continue;
        auto tspace = twisted_space(target, len, b);
        if (!tspace) continue;
        const auto tpieces = sector_pieces(*tsys, *tspace);
        for (const auto& t : labels) {
          const Mat o = intertwiner_to_operator(*sspace, *tspace, t).dense();
          for (const auto& sp : spieces) {
            if (sp.dim() == 0) continue;
            const Mat os = o * sp.basis;
            for (const auto& tp : tpieces) {
              if (tp.dim() == 0) continue;
              const double ov = max_abs(tp.basis.adjoint() * os);
              if (ov <= kOverlapThreshold) continue;
              auto key = std::make_pair(sp.label.label, tp.label.label);
              auto it = found.find(key);
              if (it == found.end()) {
                found[key] = {sp.label.label, tp.label.label, sb[a], tb[b], len, ov};
              } else {
                it->second.overlap = std::max(it->second.overlap, ov);
              }
            }
          }
        }
      }
    }
  }

  std::map<std::string, std::set<std::string>> images, preimages;
  for (auto& [key, e] : found) {
    out.entries.push_back(e);
    images[key.first].insert(key.second);
    preimages[key.second].insert(key.first);
  }
  const auto sources = all_sectors(*ssys, source.module_set);
  const auto targets = all_sectors(*tsys, target.module_set);
  bool bij = sources.size() == targets.size();
  for (const auto& z : sources) {
    auto it = images.find(z);
    if (it == images.end()) {
      out.unresolved.push_back(z);
      bij = false;
      continue;
    }
    if (it->second.size() != 1) bij = false;
    out.mapping[z] = *it->second.begin();
  }
  for (const auto& [z, pre] : preimages)
    if (pre.size() != 1) bij = false;
  out.bijective = bij && preimages.size() == targets.size();
  return out;
}

std::map<std::string, std::string> compose_maps(const std::map<std::string, std::string>& first,
                                                const std::map<std::string, std::string>& second) {
  std::map<std::string, std::string> out;
  for (const auto& [z, w] : first) {
    auto it = second.find(w);
    if (it != second.end()) out[z] = it->second;
  }
  return out;
}

Mat transport_block(const Mat& source_hamiltonian, const Mat& cross_unit, const Mat& target_basis) {
  const Mat w = cross_unit * target_basis;
  return w.adjoint() * source_hamiltonian * w;
}

DualityReport verify_duality(const ModelSpec& source, const ModelSpec& target, int length,
                             const Couplings& couplings, double tol) {
  if (source.family != target.family) throw std::invalid_argument("models do not share the input category");
  DualityReport rep;
  rep.source_model = source.name;
  rep.target_model = target.name;
  rep.length = length;
  rep.couplings = resolve_couplings(source, couplings);
  if (resolve_couplings(target, couplings) != rep.couplings)
    throw std::invalid_argument("dual models resolve the couplings differently");
  auto sys = sector_system(source, target);
  const auto& alg = sys->algebra;
  const int hs = source.module_set, ht = target.module_set;
  const auto sb = boundary_names(source), tb = boundary_names(target);

  struct Side {
    std::optional<StateSpace> space;
    Mat h;
  };
  auto build = [&](const ModelSpec& m, int simple) {
    Side s;
    s.space = twisted_space(m, length, simple);
    if (s.space) s.h = assemble(m, length, {{simple, 0}}, couplings).hamiltonian.dense();
    return s;
  };
  std::vector<Side> src, tgt;
  for (int a = 0; a < int(sb.size()); ++a) src.push_back(build(source, a));
  for (int b = 0; b < int(tb.size()); ++b) tgt.push_back(build(target, b));

  for (int a = 0; a < int(sb.size()); ++a)
    for (int b = 0; b < int(tb.size()); ++b) {
      if (!src[a].space || !tgt[b].space) continue;
      for (const auto& t : intertwiner_labels(source, target, a, b)) {
        const Mat o = intertwiner_to_operator(*src[a].space, *tgt[b].space, t).dense();
        rep.intertwining = std::max(rep.intertwining, max_abs(o * src[a].h - tgt[b].h * o));
      }
    }

  rep.ok = rep.intertwining <= kDerivedTol;
  for (int bi = 0; bi < int(sys->blocks.size()); ++bi) {
    const SectorBlock& blk = sys->blocks[bi];
    std::vector<int> ss, ts;
    for (int s = 0; s < int(blk.slots.size()); ++s) {
      if (blk.slots[s].boundary.left == hs) ss.push_back(s);
      if (blk.slots[s].boundary.left == ht) ts.push_back(s);
    }
    if (ss.empty() || ts.empty()) continue;
    std::set<std::pair<int, int>> pairs;
    for (int s : ss) pairs.insert({s, ts.front()});
    for (int u : ts) pairs.insert({ss.front(), u});
    for (auto [s, u] : pairs) {
      const SectorSlot& sslot = blk.slots[s];
      const SectorSlot& tslot = blk.slots[u];
      const Side& S = src[sslot.boundary.index];
      const Side& T = tgt[tslot.boundary.index];
      if (!S.space || !T.space) continue;
      SectorMatch m;
      m.source = sys->label(bi, hs).label;
      m.target = sys->label(bi, ht).label;
      m.source_boundary = sb[sslot.boundary.index];
      m.target_boundary = tb[tslot.boundary.index];
      m.source_copy = sslot.copy;
      m.target_copy = tslot.copy;

      const Mat vs = slot_basis(*sys, bi, s, *S.space);
      const Mat vt = slot_basis(*sys, bi, u, *T.space);
      m.source_spectrum = eigenvalues(vs.adjoint() * S.h * vs);
      m.target_spectrum = eigenvalues(vt.adjoint() * T.h * vt);
      m.gap = compare_spectra(m.source_spectrum, m.target_spectrum, tol).max_gap;

      // cross unit mapping the target slot into the source slot
      Mat e = element_operator(alg, blk.unit(s, u), *T.space, *S.space).dense();
      if (max_abs(e) < kOverlapThreshold) e = element_operator(alg, blk.unit(u, s), *T.space, *S.space).dense();
      const Mat pt = vt * vt.adjoint(), ps = vs * vs.adjoint();
      m.isometry_defect = max_abs(e.adjoint() * e - pt) + max_abs(e * e.adjoint() - ps);
      m.transported_spectrum = eigenvalues(transport_block(S.h, e, vt));
      m.transport_gap = compare_spectra(m.transported_spectrum, m.target_spectrum, tol).max_gap;

      m.match = m.source_spectrum.size() == m.target_spectrum.size() && m.gap <= tol && m.transport_gap <= tol &&
                m.isometry_defect <= kDerivedTol;
      rep.ok = rep.ok && m.match;
      rep.matches.push_back(std::move(m));
    }
  }
  return rep;
}

}  // namespace tubeduality
