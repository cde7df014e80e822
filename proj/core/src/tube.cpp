#include "tubeduality/tube.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace tubeduality {

namespace {

struct Step {
  int n_next, x_next, w;
  cplx val;
};

}  // namespace

SparseOperator closed_mpo_operator(const StateSpace& in, const StateSpace& out, const TubeLabel& t) {
  const ChainConfig& ci = in.config();
  const ChainConfig& co = out.config();
  const auto& calc = ci.calc();
  if (&co.calc() != &calc) throw std::invalid_argument("spaces from different families");
  const int L = ci.length;
  if (co.length != L) throw std::invalid_argument("spaces of different length");
  if (t.mpo.right != ci.module_set || t.mpo.left != co.module_set || t.fused.left != t.mpo.left ||
      t.fused.right != t.mpo.right || t.source.left != ci.module_set || t.target.left != co.module_set)
    throw std::invalid_argument("tube label does not match the module categories");
  const auto& ksplit = calc.splitting(t.fused, t.target, t.mpo);
  const auto& kpsplit = calc.splitting(t.fused, t.mpo, t.source);
  SparseOperator op(out.dim(), in.dim());
  if (t.k >= int(ksplit.size()) || t.kp >= int(kpsplit.size())) return op;

  // component map
  std::map<int, int> comp_map;
  for (int c = 0; c < int(ci.boundary.size()); ++c) {
    if (ci.boundary[c].simple != t.source.index) continue;
    for (int d = 0; d < int(co.boundary.size()); ++d)
      if (co.boundary[d].simple == t.target.index && co.boundary[d].copy == ci.boundary[c].copy) comp_map[c] = d;
  }
  if (comp_map.empty()) return op;

  const int nn = int(calc.simples(co.module_set, 0).size());
  const Bimodule& X = calc.object(t.mpo);
  auto Mref = [&](int m) { return ci.module_object(m); };
  auto Nref = [&](int n) { return co.module_object(n); };

  std::map<std::array<int, 6>, std::vector<Step>> steps;
  auto transitions = [&](int mj, int y, int mj1, int vj, int nj, int xj) -> const std::vector<Step>& {
    std::array<int, 6> key{mj, y, mj1, vj, nj, xj};
    auto it = steps.find(key);
    if (it != steps.end()) return it->second;
    std::vector<Step> res;
    CellRef Y{0, 0, y};
    const Bimodule& oY = calc.object(Y);
    const Bimodule& Mj = calc.object(Mref(mj));
    Bimodule XMj = calc.compose(X, Mj);
    Bimodule MjY = calc.compose(Mj, oY);
    const Mat& v = calc.splitting(Mref(mj1), Mref(mj), Y)[vj];
    const Mat& x = calc.splitting(Nref(nj), t.mpo, Mref(mj))[xj];
    Mat Xv = calc.whisker_left(X, calc.object(Mref(mj1)), MjY, v);
    Mat xY = calc.whisker_right(x, calc.object(Nref(nj)), XMj, oY);
    for (int n1 = 0; n1 < nn; ++n1) {
      const auto& ws = calc.splitting(Nref(n1), Nref(nj), Y);
      if (ws.empty()) continue;
      const auto& xs = calc.splitting(Nref(n1), t.mpo, Mref(mj1));
      for (int x1 = 0; x1 < int(xs.size()); ++x1) {
        Mat tree2 = Xv * xs[x1];
        for (int w = 0; w < int(ws.size()); ++w) {
          cplx val = clean(hs_inner(xY * ws[w], tree2), 1e-14);
          if (val != cplx(0)) res.push_back({n1, x1, w, val});
        }
      }
    }
    return steps.emplace(key, std::move(res)).first->second;
  };

  Mat phi = ksplit[t.k] * kpsplit[t.kp].adjoint();  // mpo o source -> target o mpo
  Bimodule XA = calc.compose(X, calc.object(t.source));
  Bimodule AX = calc.compose(calc.object(t.target), X);
  std::map<std::array<int, 7>, std::vector<cplx>> bcache;
  auto boundary = [&](int m1, int ml, int a, int n1, int x1, int nl, int xl) -> const std::vector<cplx>& {
    std::array<int, 7> key{m1, ml, a, n1, x1, nl, xl};
    auto it = bcache.find(key);
    if (it != bcache.end()) return it->second;
    const Bimodule& oML = calc.object(Mref(ml));
    Bimodule AML = calc.compose(calc.object(t.source), oML);
    Mat rhs = calc.whisker_right(phi, XA, AX, oML) *
              calc.whisker_left(X, calc.object(Mref(m1)), AML, calc.splitting(Mref(m1), t.source, Mref(ml))[a]) *
              calc.splitting(Nref(n1), t.mpo, Mref(m1))[x1];
    Bimodule XML = calc.compose(X, oML);
    Mat lift = calc.whisker_left(calc.object(t.target), calc.object(Nref(nl)), XML,
                                 calc.splitting(Nref(nl), t.mpo, Mref(ml))[xl]);
    std::vector<cplx> vals;
    for (const Mat& a2 : calc.splitting(Nref(n1), t.target, Nref(nl))) vals.push_back(clean(hs_inner(lift * a2, rhs), 1e-14));
    return bcache.emplace(key, std::move(vals)).first->second;
  };

  BasisState o;
  o.m.assign(L + 1, 0);
  o.y.assign(L, 0);
  o.v.assign(L, 0);
  for (int col = 0; col < in.dim(); ++col) {
    const BasisState& s = in.state(col);
    auto cm = comp_map.find(s.component);
    if (cm == comp_map.end()) continue;
    o.component = cm->second;
    o.y = s.y;
    int first_x = 0;
    std::function<void(int, int, int, cplx)> walk = [&](int j, int nj, int xj, cplx amp) {
      if (j == L) {
        const auto& bv = boundary(s.m[0], s.m[L], s.a, o.m[0], first_x, nj, xj);
        for (int a2 = 0; a2 < int(bv.size()); ++a2) {
          if (bv[a2] == cplx(0)) continue;
          o.a = a2;
          int row = out.index_of(o);
          if (row < 0) throw std::logic_error("tube left the target space");
          op.add(row, col, amp * bv[a2]);
        }
        return;
      }
      for (const Step& st : transitions(s.m[j], s.y[j], s.m[j + 1], s.v[j], nj, xj)) {
        o.m[j + 1] = st.n_next;
        o.v[j] = st.w;
        walk(j + 1, st.n_next, st.x_next, amp * st.val);
      }
    };
    for (int n1 = 0; n1 < nn; ++n1) {
      int mult = calc.multiplicity(Nref(n1), t.mpo, Mref(s.m[0]));
      for (int x1 = 0; x1 < mult; ++x1) {
        o.m[0] = n1;
        first_x = x1;
        walk(0, n1, x1, 1.0);
      }
    }
  }
  return op.normalized();
}

std::vector<TubeLabel> tube_labels(const BimoduleCalculus& calc, int source_set, int target_set,
                                   const std::vector<int>& sources, const std::vector<int>& targets) {
  std::vector<TubeLabel> out;
  const int nx = int(calc.simples(target_set, source_set).size());
  for (int a : sources)
    for (int b : targets)
      for (int x = 0; x < nx; ++x)
        for (int xf = 0; xf < nx; ++xf) {
          TubeLabel t{{source_set, source_set, a}, {target_set, target_set, b}, {target_set, source_set, x},
                      {target_set, source_set, xf}, 0, 0};
          int nk = calc.multiplicity(t.fused, t.target, t.mpo);
          int nkp = calc.multiplicity(t.fused, t.mpo, t.source);
          for (int k = 0; k < nk; ++k)
            for (int kp = 0; kp < nkp; ++kp) {
              t.k = k;
              t.kp = kp;
              out.push_back(t);
            }
        }
  return out;
}

}  // namespace tubeduality
