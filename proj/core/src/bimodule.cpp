#include "tubeduality/bimodule.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace tubeduality {

namespace {

CosetSpace make_cosets(const FiniteGroup& g, std::vector<int> subgroup) {
  std::sort(subgroup.begin(), subgroup.end());
  CosetSpace cs;
  cs.subgroup = subgroup;
  std::vector<int> coset_of(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    std::vector<int> c;
    for (int h : subgroup) c.push_back(g.mul(x, h));
    std::sort(c.begin(), c.end());
    for (int y : c) coset_of[y] = cs.size();
    cs.cosets.push_back(c);
  }
  cs.act.assign(g.order(), std::vector<int>(cs.size()));
  for (int x = 0; x < g.order(); ++x)
    for (int p = 0; p < cs.size(); ++p) cs.act[x][p] = coset_of[g.mul(x, cs.cosets[p][0])];
  return cs;
}

}  // namespace

BimoduleCalculus::BimoduleCalculus(FiniteGroup group, std::vector<std::vector<int>> subgroups)
    : group_(std::move(group)) {
  for (auto& h : subgroups) {
    if (!group_.is_subgroup(h)) throw std::invalid_argument("not a subgroup");
    sets_.push_back(make_cosets(group_, h));
  }
}

int BimoduleCalculus::set_of(const std::vector<int>& subgroup) const {
  std::vector<int> h = subgroup;
  std::sort(h.begin(), h.end());
  for (int i = 0; i < num_sets(); ++i)
    if (sets_[i].subgroup == h) return i;
  return -1;
}

std::vector<SimpleCell> BimoduleCalculus::build_simples(int left, int right) const {
  const CosetSpace& ls = sets_.at(left);
  const CosetSpace& rs = sets_.at(right);
  const int n = group_.order();
  std::vector<SimpleCell> out;
  std::set<std::pair<int, int>> seen;
  int orbit_index = 0;
  for (int p = 0; p < ls.size(); ++p)
    for (int q = 0; q < rs.size(); ++q) {
      if (seen.count({p, q})) continue;
      // orbit points in lexicographic order with their first transporting element
      std::map<std::pair<int, int>, int> transport;
      for (int g = 0; g < n; ++g) {
        std::pair<int, int> o{ls.act[g][p], rs.act[g][q]};
        if (!transport.count(o)) transport[o] = g;
      }
      std::vector<std::pair<int, int>> points;
      for (auto& [o, g] : transport) {
        points.push_back(o);
        seen.insert(o);
      }
      std::vector<int> stab;
      for (int g = 0; g < n; ++g)
        if (ls.act[g][p] == p && rs.act[g][q] == q) stab.push_back(g);
      for (const Irrep& ir : group_.subgroup_irreps(stab)) {
        SimpleCell cell;
        cell.orbit = orbit_index;
        cell.orbit_rep = {p, q};
        cell.stabilizer = stab;
        cell.irrep = ir.name;
        Bimodule& b = cell.object;
        b.left = left;
        b.right = right;
        const int d = ir.dim;
        for (auto& o : points)
          for (int i = 0; i < d; ++i) b.grade.push_back(o);
        const int dim = int(points.size()) * d;
        b.rho.assign(n, Mat::Zero(dim, dim));
        for (int g = 0; g < n; ++g)
          for (std::size_t a = 0; a < points.size(); ++a) {
            std::pair<int, int> go{ls.act[g][points[a].first], rs.act[g][points[a].second]};
            std::size_t c = std::find(points.begin(), points.end(), go) - points.begin();
            int k = group_.mul(group_.mul(group_.inv(transport[go]), g), transport[points[a]]);
            b.rho[g].block(c * d, a * d, d, d) = ir(k);
          }
        cell.qdim = double(dim) / std::sqrt(double(ls.size()) * double(rs.size()));
        out.push_back(std::move(cell));
      }
      ++orbit_index;
    }
  return out;
}

const std::vector<SimpleCell>& BimoduleCalculus::simples(int left, int right) const {
  std::lock_guard lock(mutex_);
  auto& slot = simples_[{left, right}];
  if (!slot) slot = std::make_unique<std::vector<SimpleCell>>(build_simples(left, right));
  return *slot;
}

std::vector<std::pair<int, int>> BimoduleCalculus::composite_pairs(const Bimodule& a, const Bimodule& b) {
  if (a.right != b.left) throw std::invalid_argument("composing non-composable 1-cells");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      if (a.grade[i].second == b.grade[j].first) pairs.emplace_back(i, j);
  return pairs;
}

Bimodule BimoduleCalculus::compose(const Bimodule& a, const Bimodule& b) const {
  auto pairs = composite_pairs(a, b);
  Bimodule c;
  c.left = a.left;
  c.right = b.right;
  for (auto [i, j] : pairs) c.grade.emplace_back(a.grade[i].first, b.grade[j].second);
  const int d = int(pairs.size());
  c.rho.assign(group_.order(), Mat::Zero(d, d));
  for (int g = 0; g < group_.order(); ++g)
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        cplx x = a.rho[g](pairs[r].first, pairs[s].first);
        if (x == cplx(0)) continue;
        c.rho[g](r, s) = x * b.rho[g](pairs[r].second, pairs[s].second);
      }
  return c;
}

Mat BimoduleCalculus::whisker_left(const Bimodule& e, const Bimodule& v, const Bimodule& w,
                                   const Mat& f) const {
  auto cols = composite_pairs(e, v);
  auto rows = composite_pairs(e, w);
  Mat m = Mat::Zero(Eigen::Index(rows.size()), Eigen::Index(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (rows[r].first == cols[c].first) m(r, c) = f(rows[r].second, cols[c].second);
  return m;
}

Mat BimoduleCalculus::whisker_right(const Mat& f, const Bimodule& v, const Bimodule& w,
                                    const Bimodule& e) const {
  auto cols = composite_pairs(v, e);
  auto rows = composite_pairs(w, e);
  Mat m = Mat::Zero(Eigen::Index(rows.size()), Eigen::Index(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (rows[r].second == cols[c].second) m(r, c) = f(rows[r].first, cols[c].first);
  return m;
}

Mat BimoduleCalculus::right_unitor(const Bimodule& e) const {
  const Bimodule& u = object(unit(e.right));
  auto pairs = composite_pairs(e, u);
  Mat m = Mat::Zero(Eigen::Index(pairs.size()), e.dim());
  for (std::size_t r = 0; r < pairs.size(); ++r) m(r, pairs[r].first) = 1.0;
  return m;
}

Mat BimoduleCalculus::left_unitor(const Bimodule& e) const {
  const Bimodule& u = object(unit(e.left));
  auto pairs = composite_pairs(u, e);
  Mat m = Mat::Zero(Eigen::Index(pairs.size()), e.dim());
  for (std::size_t r = 0; r < pairs.size(); ++r) m(r, pairs[r].second) = 1.0;
  return m;
}

std::vector<Mat> BimoduleCalculus::hom_basis(const Bimodule& from, const Bimodule& to) const {
  if (from.left != to.left || from.right != to.right) return {};
  const int n = group_.order();
  std::vector<Mat> inv_from(n);
  for (int g = 0; g < n; ++g) inv_from[g] = from.rho[group_.inv(g)];
  std::vector<Mat> basis;
  std::set<std::pair<int, int>> covered;
  for (int i = 0; i < to.dim(); ++i)
    for (int j = 0; j < from.dim(); ++j) {
      if (to.grade[i] != from.grade[j]) continue;
      Mat avg = Mat::Zero(to.dim(), from.dim());
      for (int g = 0; g < n; ++g) avg += to.rho[g].col(i) * inv_from[g].row(j);
      avg /= double(n);
      auto next = gram_schmidt({avg});
      if (next.empty()) continue;
      std::vector<Mat> trial = basis;
      trial.push_back(avg);
      trial = gram_schmidt(trial);
      if (trial.size() > basis.size()) basis = std::move(trial);
    }
  for (Mat& b : basis) clean_inplace(b, 1e-15);
  return basis;
}

const std::vector<Mat>& BimoduleCalculus::splitting(CellRef z, CellRef x, CellRef y) const {
  std::lock_guard lock(mutex_);
  auto key = std::make_tuple(z, x, y);
  auto it = split_.find(key);
  if (it != split_.end()) return *it->second;
  std::vector<Mat> basis;
  if (x.right == y.left && z.left == x.left && z.right == y.right)
    basis = hom_basis(object(z), compose(object(x), object(y)));
  auto& slot = split_[key];
  slot = std::make_unique<std::vector<Mat>>(std::move(basis));
  return *slot;
}

void BimoduleCalculus::set_splitting(CellRef z, CellRef x, CellRef y, std::vector<Mat> basis) {
  std::lock_guard lock(mutex_);
  split_[std::make_tuple(z, x, y)] = std::make_unique<std::vector<Mat>>(std::move(basis));
}

void BimoduleCalculus::rephase_splitting(CellRef z, CellRef x, CellRef y, int k, cplx phase) {
  std::lock_guard lock(mutex_);
  splitting(z, x, y);
  (*split_[std::make_tuple(z, x, y)])[k] *= phase;
}

std::vector<int> BimoduleCalculus::channels(CellRef x, CellRef y) const {
  std::vector<int> out;
  const int n = int(simples(x.left, y.right).size());
  for (int z = 0; z < n; ++z)
    if (multiplicity({x.left, y.right, z}, x, y) > 0) out.push_back(z);
  return out;
}

CellRef BimoduleCalculus::dual(CellRef c) const {
  const Bimodule& b = object(c);
  Bimodule conj;
  conj.left = b.right;
  conj.right = b.left;
  for (auto [p, q] : b.grade) conj.grade.emplace_back(q, p);
  for (const Mat& m : b.rho) conj.rho.push_back(m.conjugate());
  const auto& cand = simples(b.right, b.left);
  for (int i = 0; i < int(cand.size()); ++i)
    if (hom_dim(cand[i].object, conj) > 0) return {b.right, b.left, i};
  throw std::logic_error("no dual found");
}

}  // namespace tubeduality
