#include "tubeduality/decomposition.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tubeduality {

int SectorSystem::set_position(int set) const {
  const auto& s = algebra.sets();
  auto it = std::find(s.begin(), s.end(), set);
  return it == s.end() ? -1 : int(it - s.begin());
}

const SectorLabel& SectorSystem::label(int block, int set) const {
  const int p = set_position(set);
  if (p < 0) throw std::invalid_argument("set is not part of this sector system");
  const SectorLabel& l = labels.at(block).at(p);
  if (l.module < 0) throw std::invalid_argument("block has no slot on this set");
  return l;
}

namespace {

std::shared_ptr<SectorSystem> build_system(const GroupFamily& family, const std::vector<int>& sets,
                                           const std::vector<DualKind>& kinds) {
  auto sys = std::shared_ptr<SectorSystem>(new SectorSystem{&family, TubeAlgebra(*family.calc, sets), {}, {}, {}});
  const auto doubles = double_simples(family.calc->group());
  for (std::size_t i = 0; i < sets.size(); ++i) sys->duals.push_back(describe_dual(*family.calc, sets[i], kinds[i]));
  sys->blocks = decompose(sys->algebra);
  for (const auto& b : sys->blocks) {
    std::vector<SectorLabel> row;
    for (const auto& d : sys->duals) {
      bool present = std::any_of(b.slots.begin(), b.slots.end(),
                                 [&](const SectorSlot& s) { return s.boundary.left == d.set; });
      row.push_back(present ? identify_sector(sys->algebra, b, d, doubles) : SectorLabel{});
    }
    sys->labels.push_back(std::move(row));
  }
  return sys;
}

}  // namespace

std::shared_ptr<const SectorSystem> sector_system(const GroupFamily& family, const std::vector<int>& sets,
                                                  const std::vector<DualKind>& kinds) {
  if (sets.size() != kinds.size() || sets.empty()) throw std::invalid_argument("one dual kind per set");
  static std::mutex mutex;
  static std::map<std::tuple<std::string, std::vector<int>, std::vector<DualKind>>, std::shared_ptr<SectorSystem>>
      cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(family.name, sets, kinds);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_system(family, sets, kinds)).first;
  return it->second;
}

namespace {

// For abelian groups Rep(G) and Vect_G coincide and content plus twist only
// separate sectors in the group-like description.
DualKind sector_kind(const ModelSpec& model) {
  const FiniteGroup& g = model.family->calc->group();
  return int(g.irreps().size()) == g.order() ? DualKind::Group : model.dual;
}

}  // namespace

std::shared_ptr<const SectorSystem> sector_system(const ModelSpec& model) {
  return sector_system(*model.family, {model.module_set}, {sector_kind(model)});
}

std::shared_ptr<const SectorSystem> sector_system(const ModelSpec& source, const ModelSpec& target) {
  if (source.family != target.family) throw std::invalid_argument("models do not share the input category");
  if (source.module_set == target.module_set) return sector_system(source);
  return sector_system(*source.family, {source.module_set, target.module_set},
                       {sector_kind(source), sector_kind(target)});
}

SparseOperator tube_to_operator(const StateSpace& space, const TubeLabel& t) {
  return closed_mpo_operator(space, space, t);
}

SparseOperator element_operator(const TubeAlgebra& alg, const Vec& x, const StateSpace& in, const StateSpace& out) {
  SparseOperator acc(out.dim(), in.dim());
  const int hin = in.config().module_set, hout = out.config().module_set;
  for (int i = 0; i < alg.size(); ++i) {
    if (std::abs(x[i]) < 1e-15) continue;
    const TubeLabel& t = alg.label(i);
    if (t.source.left != hin || t.target.left != hout) continue;
    SparseOperator o = closed_mpo_operator(in, out, t);
    for (const auto& tr : o.triplets) acc.add(tr.row(), tr.col(), x[i] * tr.value());
  }
  return acc.normalized();
}

std::vector<MatrixUnit> matrix_units(const SectorSystem& sys, int set) {
  const int pos = sys.set_position(set);
  if (pos < 0) throw std::invalid_argument("set is not part of this sector system");
  const double fpdim = double(sys.family->calc->group().order());
  std::vector<MatrixUnit> out;
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    const auto& blk = sys.blocks[b];
    const SectorLabel& lab = sys.labels[b][pos];
    if (lab.module < 0) continue;
    const double len = sector_length(sys.algebra, blk, set);
    for (std::size_t r = 0; r < blk.slots.size(); ++r) {
      if (blk.slots[r].boundary.left != set) continue;
      for (std::size_t c = 0; c < blk.slots.size(); ++c) {
        if (blk.slots[c].boundary.left != set) continue;
        out.push_back({lab.label, blk.slots[r], blk.slots[c], blk.unit(int(r), int(c)), len / fpdim});
      }
    }
  }
  return out;
}

namespace {

// Orthonormal basis of the column span, Gram-Schmidt in column order.
Mat column_basis(const Mat& p, double tol = 1e-8) {
  std::vector<Vec> cols;
  for (int c = 0; c < p.cols(); ++c) {
    Vec v = p.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : cols) v -= q * q.dot(v);
    const double n = v.norm();
    if (n > tol) cols.push_back(v / n);
  }
  Mat out(p.rows(), Eigen::Index(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(Eigen::Index(i)) = cols[i];
  return out;
}

}  // namespace

Mat slot_basis(const SectorSystem& sys, int block, int slot, const StateSpace& space) {
  const SectorBlock& blk = sys.blocks.at(block);
  return column_basis(element_operator(sys.algebra, blk.unit(slot, slot), space, space).dense());
}

std::vector<SectorPiece> sector_pieces(const SectorSystem& sys, const StateSpace& space) {
  const ChainConfig& cfg = space.config();
  const int set = cfg.module_set;
  const int pos = sys.set_position(set);
  if (pos < 0) throw std::invalid_argument("space does not belong to this sector system");
  std::vector<SectorPiece> out;
  for (int comp = 0; comp < int(cfg.boundary.size()); ++comp) {
    const CellRef a = cfg.boundary_object(comp);
    const auto idx = space.component_indices(comp);
    for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
      const auto& blk = sys.blocks[b];
      for (std::size_t s = 0; s < blk.slots.size(); ++s) {
        if (blk.slots[s].boundary != a) continue;
        Mat p = element_operator(sys.algebra, blk.unit(int(s), int(s)), space, space).dense();
        Mat pc = Mat::Zero(space.dim(), space.dim());
        for (int r : idx)
          for (int c : idx) pc(r, c) = p(r, c);
        SectorPiece piece;
        piece.block = int(b);
        piece.slot = int(s);
        piece.component = comp;
        piece.label = sys.labels[b][pos];
        piece.boundary = a;
        piece.copy = blk.slots[s].copy;
        piece.basis = column_basis(pc);
        out.push_back(std::move(piece));
      }
    }
  }
  return out;
}

SectorDecomposition sector_decompose(const SectorSystem& sys, const StateSpace& space, const SparseOperator& h) {
  SectorDecomposition out;
  const Mat hd = h.dense();
  const int n = space.dim();
  const ChainConfig& cfg = space.config();

  std::vector<CellRef> present;
  for (int c = 0; c < int(cfg.boundary.size()); ++c) present.push_back(cfg.boundary_object(c));
  for (int i = 0; i < sys.algebra.size(); ++i) {
    const TubeLabel& t = sys.algebra.label(i);
    if (t.source != t.target || std::find(present.begin(), present.end(), t.source) == present.end()) continue;
    Mat o = tube_to_operator(space, t).dense();
    out.commutator = std::max(out.commutator, max_abs(hd * o - o * hd));
  }
  if (out.commutator > kDerivedTol)
    throw std::runtime_error("Hamiltonian does not commute with the boundary-preserving tubes");

  out.pieces = sector_pieces(sys, space);
  Mat sum = Mat::Zero(n, n), rebuilt = Mat::Zero(n, n);
  for (const auto& p : out.pieces) {
    Mat blk = p.basis.adjoint() * hd * p.basis;
    sum += p.projector();
    rebuilt += p.basis * blk * p.basis.adjoint();
    out.blocks.push_back(std::move(blk));
  }
  out.completeness = max_abs(sum - Mat::Identity(n, n));
  out.reconstruction = max_abs(hd - rebuilt);
  return out;
}

Vec half_braiding_projector(const TubeAlgebra& alg, const DoubleModule& z, const RepHalfBraiding& hb, RepSlot slot) {
  const auto& calc = alg.calc();
  const FiniteGroup& g = calc.group();
  const CellRef v{0, 0, slot.irrep};
  const double dv = g.irreps().at(slot.irrep).dim;
  Vec e = Vec::Zero(alg.size());
  for (int i : alg.between(v, v)) {
    const TubeLabel& t = alg.label(i);
    const double dw = g.irreps().at(t.mpo.index).dim;
    e[i] = double(z.dim()) / double(g.order()) * (dw / dv) * hb.at(slot, slot, t.mpo.index, t.fused.index);
  }
  return e;
}

}  // namespace tubeduality
