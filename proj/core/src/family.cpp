#include "tubeduality/family.hpp"

#include <cmath>
#include <stdexcept>

namespace tubeduality {

std::map<CGKey, std::map<CGKey, double>> s3_clebsch_gordan() {
  const double h = 1.0 / std::sqrt(2.0);
  std::map<CGKey, std::map<CGKey, double>> c;
  // unit rows
  c[{0, 0, 0}][{0, 0, 0}] = 1;
  c[{0, 1, 1}][{0, 0, 0}] = 1;
  c[{1, 0, 1}][{0, 0, 0}] = 1;
  c[{1, 1, 0}][{0, 0, 0}] = -1;
  c[{2, 0, 2}][{0, 0, 0}] = 1;
  c[{2, 0, 2}][{1, 0, 1}] = 1;
  c[{0, 2, 2}][{0, 0, 0}] = 1;
  c[{0, 2, 2}][{0, 1, 1}] = 1;
  c[{1, 2, 2}][{0, 0, 0}] = 1;
  c[{1, 2, 2}][{0, 1, 1}] = -1;
  c[{2, 1, 2}][{1, 0, 1}] = 1;
  c[{2, 1, 2}][{0, 0, 0}] = -1;
  c[{2, 2, 0}][{0, 1, 0}] = h;
  c[{2, 2, 0}][{1, 0, 0}] = h;
  c[{2, 2, 1}][{0, 1, 0}] = -h;
  c[{2, 2, 1}][{1, 0, 0}] = h;
  c[{2, 2, 2}][{0, 0, 1}] = 1;
  c[{2, 2, 2}][{1, 1, 0}] = 1;
  return c;
}

namespace {

void install_clebsch_gordan(BimoduleCalculus& calc) {
  const auto& irreps = calc.group().irreps();
  for (auto& [wvu, entries] : s3_clebsch_gordan()) {
    const int dw = irreps[wvu[0]].dim, dv = irreps[wvu[1]].dim, du = irreps[wvu[2]].dim;
    // fusion map W (x) V -> U has entries C; the splitting map is its adjoint
    Mat fuse = Mat::Zero(du, dw * dv);
    for (auto& [idx, val] : entries) fuse(idx[2], idx[0] * dv + idx[1]) = val;
    calc.set_splitting({0, 0, wvu[2]}, {0, 0, wvu[0]}, {0, 0, wvu[1]}, {fuse.adjoint()});
  }
}

GroupFamily make_z2() {
  FiniteGroup g = cyclic_group(2);
  GroupFamily f;
  f.name = "z2";
  f.calc = std::make_shared<BimoduleCalculus>(g, std::vector<std::vector<int>>{{0, 1}, {0}});
  f.sets = {{"G", 0}, {"1", 1}};
  return f;
}

GroupFamily make_s3() {
  FiniteGroup g = s3_group();
  std::vector<int> z2{g.find("1"), g.find("r")};
  std::vector<int> z3{g.find("1"), g.find("s"), g.find("s2")};
  GroupFamily f;
  f.name = "s3";
  f.calc = std::make_shared<BimoduleCalculus>(
      g, std::vector<std::vector<int>>{g.all_elements(), {g.identity()}, z2, z3});
  f.sets = {{"G", 0}, {"1", 1}, {"Z2", 2}, {"Z3", 3}};
  install_clebsch_gordan(*f.calc);
  return f;
}

}  // namespace

const GroupFamily& z2_family() {
  static const GroupFamily f = make_z2();
  return f;
}

const GroupFamily& s3_family() {
  static const GroupFamily f = make_s3();
  return f;
}

const GroupFamily& family_by_name(const std::string& name) {
  if (name == "z2") return z2_family();
  if (name == "s3") return s3_family();
  throw std::invalid_argument("unknown group family: " + name);
}

int FMove::left_index(const TreeLabel& t) const {
  for (std::size_t i = 0; i < left.size(); ++i)
    if (left[i] == t) return int(i);
  return -1;
}

int FMove::right_index(const TreeLabel& t) const {
  for (std::size_t i = 0; i < right.size(); ++i)
    if (right[i] == t) return int(i);
  return -1;
}

Mat left_tree(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d,
              const TreeLabel& t) {
  CellRef e{a.left, b.right, t.mid};
  const Mat& s_ab = calc.splitting(e, a, b)[t.inner];
  const Mat& s_ec = calc.splitting(d, e, c)[t.outer];
  Bimodule ab = calc.compose(calc.object(a), calc.object(b));
  return calc.whisker_right(s_ab, calc.object(e), ab, calc.object(c)) * s_ec;
}

Mat right_tree(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d,
               const TreeLabel& t) {
  CellRef f{b.left, c.right, t.mid};
  const Mat& s_bc = calc.splitting(f, b, c)[t.inner];
  const Mat& s_af = calc.splitting(d, a, f)[t.outer];
  Bimodule bc = calc.compose(calc.object(b), calc.object(c));
  return calc.whisker_left(calc.object(a), calc.object(f), bc, s_bc) * s_af;
}

FMove fmove(const BimoduleCalculus& calc, CellRef a, CellRef b, CellRef c, CellRef d) {
  if (a.right != b.left || b.right != c.left || d.left != a.left || d.right != c.right)
    throw std::invalid_argument("fmove: labels not composable");
  FMove fm{a, b, c, d, {}, {}, Mat()};
  const int ne = int(calc.simples(a.left, b.right).size());
  for (int e = 0; e < ne; ++e) {
    CellRef ce{a.left, b.right, e};
    int m1 = calc.multiplicity(ce, a, b);
    int m2 = m1 ? calc.multiplicity(d, ce, c) : 0;
    for (int i = 0; i < m1; ++i)
      for (int k = 0; k < m2; ++k) fm.left.push_back({e, i, k});
  }
  const int nf = int(calc.simples(b.left, c.right).size());
  for (int f = 0; f < nf; ++f) {
    CellRef cf{b.left, c.right, f};
    int m1 = calc.multiplicity(cf, b, c);
    int m2 = m1 ? calc.multiplicity(d, a, cf) : 0;
    for (int l = 0; l < m1; ++l)
      for (int j = 0; j < m2; ++j) fm.right.push_back({f, l, j});
  }
  std::vector<Mat> lt, rt;
  for (auto& t : fm.left) lt.push_back(left_tree(calc, a, b, c, d, t));
  for (auto& t : fm.right) rt.push_back(right_tree(calc, a, b, c, d, t));
  fm.matrix = Mat::Zero(Eigen::Index(rt.size()), Eigen::Index(lt.size()));
  for (std::size_t r = 0; r < rt.size(); ++r)
    for (std::size_t col = 0; col < lt.size(); ++col) fm.matrix(r, col) = clean(hs_inner(rt[r], lt[col]));
  return fm;
}

}  // namespace tubeduality
