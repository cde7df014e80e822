#include "tubeduality/chain.hpp"

#include <stdexcept>
#include <tuple>

namespace tubeduality {

PairTerm& PairTerm::add(const PairTerm& other, cplx coeff) {
  for (auto& [key, m] : other.blocks) {
    auto it = blocks.find(key);
    if (it == blocks.end())
      blocks[key] = coeff * m;
    else
      it->second += coeff * m;
  }
  return *this;
}

PairTerm ladder(const BimoduleCalculus& calc, int yl, int yl2, int yr, int yr2, int rung, int kf, int kg) {
  PairTerm t;
  CellRef l{0, 0, yl}, l2{0, 0, yl2}, r{0, 0, yr}, r2{0, 0, yr2}, R{0, 0, rung};
  const auto& fs = calc.splitting(l, l2, R);
  const auto& gs = calc.splitting(r2, R, r);
  if (kf >= int(fs.size()) || kg >= int(gs.size())) return t;
  const Bimodule& ol = calc.object(l);
  const Bimodule& ol2 = calc.object(l2);
  const Bimodule& or_ = calc.object(r);
  const Bimodule& or2 = calc.object(r2);
  Bimodule l2R = calc.compose(ol2, calc.object(R));
  Bimodule Rr = calc.compose(calc.object(R), or_);
  Mat first = calc.whisker_right(fs[kf], ol, l2R, or_);
  Mat second = calc.whisker_left(ol2, Rr, or2, gs[kg].adjoint());
  t.blocks[{yl, yr, yl2, yr2}] = second * first;
  return t;
}

PairTerm rung_term(const BimoduleCalculus& calc, const std::vector<int>& allowed, int rung) {
  PairTerm t;
  for (int yl : allowed)
    for (int yr : allowed)
      for (int yl2 : allowed)
        for (int yr2 : allowed) {
          int nf = calc.multiplicity({0, 0, yl}, {0, 0, yl2}, {0, 0, rung});
          int ng = calc.multiplicity({0, 0, yr2}, {0, 0, rung}, {0, 0, yr});
          for (int kf = 0; kf < nf; ++kf)
            for (int kg = 0; kg < ng; ++kg) t.add(ladder(calc, yl, yl2, yr, yr2, rung, kf, kg));
        }
  return t;
}

namespace {

struct PairOut {
  int y1, v1, m, y2, v2;
  cplx val;
};

// composite (v_j o id) v_{j+1} : M_{j+2} -> M_j o Y_j o Y_{j+1}
Mat two_vertex(const ChainConfig& cfg, int m0, int y1, int v1, int m1, int y2, int v2, int m2) {
  const auto& calc = cfg.calc();
  const Bimodule& M0 = calc.object(cfg.module_object(m0));
  const Bimodule& M1 = calc.object(cfg.module_object(m1));
  const Mat& s1 = calc.splitting(cfg.module_object(m1), cfg.module_object(m0), {0, 0, y1})[v1];
  const Mat& s2 = calc.splitting(cfg.module_object(m2), cfg.module_object(m1), {0, 0, y2})[v2];
  Bimodule M0Y = calc.compose(M0, calc.object({0, 0, y1}));
  return calc.whisker_right(s1, M1, M0Y, calc.object({0, 0, y2})) * s2;
}

}  // namespace

SparseOperator pair_operator(const StateSpace& space, const PairTerm& term, int j) {
  const ChainConfig& cfg = space.config();
  const int L = cfg.length;
  if (j < 0 || j + 1 >= L) throw std::out_of_range("pair_operator: site out of range");
  const auto& calc = cfg.calc();
  const int nm = int(calc.simples(cfg.module_set, 0).size());
  std::map<std::array<int, 7>, std::vector<PairOut>> cache;
  SparseOperator op(space.dim(), space.dim());
  for (int col = 0; col < space.dim(); ++col) {
    const BasisState& s = space.state(col);
    std::array<int, 7> key{s.m[j], s.y[j], s.v[j], s.m[j + 1], s.y[j + 1], s.v[j + 1], s.m[j + 2]};
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<PairOut> outs;
      Mat in = two_vertex(cfg, key[0], key[1], key[2], key[3], key[4], key[5], key[6]);
      const Bimodule& M0 = calc.object(cfg.module_object(key[0]));
      Bimodule YY = calc.compose(calc.object({0, 0, key[1]}), calc.object({0, 0, key[4]}));
      for (auto& [labels, T] : term.blocks) {
        if (labels[0] != key[1] || labels[1] != key[4]) continue;
        Bimodule YY2 = calc.compose(calc.object({0, 0, labels[2]}), calc.object({0, 0, labels[3]}));
        Mat applied = calc.whisker_left(M0, YY, YY2, T) * in;
        for (int mm = 0; mm < nm; ++mm) {
          int n1 = calc.multiplicity(cfg.module_object(mm), cfg.module_object(key[0]), {0, 0, labels[2]});
          int n2 = calc.multiplicity(cfg.module_object(key[6]), cfg.module_object(mm), {0, 0, labels[3]});
          for (int w1 = 0; w1 < n1; ++w1)
            for (int w2 = 0; w2 < n2; ++w2) {
              Mat out = two_vertex(cfg, key[0], labels[2], w1, mm, labels[3], w2, key[6]);
              cplx val = clean(hs_inner(out, applied), 1e-14);
              if (val != cplx(0)) outs.push_back({labels[2], w1, mm, labels[3], w2, val});
            }
        }
      }
      it = cache.emplace(key, std::move(outs)).first;
    }
    for (const PairOut& o : it->second) {
      BasisState t = s;
      t.y[j] = o.y1;
      t.v[j] = o.v1;
      t.m[j + 1] = o.m;
      t.y[j + 1] = o.y2;
      t.v[j + 1] = o.v2;
      int row = space.index_of(t);
      if (row < 0) throw std::logic_error("pair_operator left the state space");
      op.add(row, col, o.val);
    }
  }
  return op.normalized();
}

SparseOperator translation_operator(const StateSpace& space) {
  const ChainConfig& cfg = space.config();
  const int L = cfg.length;
  const auto& calc = cfg.calc();
  const int nm = int(calc.simples(cfg.module_set, 0).size());
  struct Out {
    int m, v, a;
    cplx val;
  };
  std::map<std::array<int, 7>, std::vector<Out>> cache;
  SparseOperator op(space.dim(), space.dim());
  for (int col = 0; col < space.dim(); ++col) {
    const BasisState& s = space.state(col);
    std::array<int, 7> key{s.component, s.m[0], s.y[0], s.v[0], s.m[1], s.a, s.m[L]};
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<Out> outs;
      CellRef A = cfg.boundary_object(s.component);
      CellRef M1 = cfg.module_object(s.m[0]), M2 = cfg.module_object(s.m[1]), ML = cfg.module_object(s.m[L]);
      CellRef Y{0, 0, s.y[0]};
      const Bimodule& oA = calc.object(A);
      Bimodule AML = calc.compose(oA, calc.object(ML));
      Mat in = calc.whisker_right(calc.splitting(M1, A, ML)[s.a], calc.object(M1), AML, calc.object(Y)) *
               calc.splitting(M2, M1, Y)[s.v[0]];
      Bimodule MLY = calc.compose(calc.object(ML), calc.object(Y));
      for (int mm = 0; mm < nm; ++mm) {
        CellRef Mn = cfg.module_object(mm);
        const auto& vs = calc.splitting(Mn, ML, Y);
        const auto& as = calc.splitting(M2, A, Mn);
        for (int v = 0; v < int(vs.size()); ++v)
          for (int a = 0; a < int(as.size()); ++a) {
            Mat out = calc.whisker_left(oA, calc.object(Mn), MLY, vs[v]) * as[a];
            cplx val = clean(hs_inner(out, in), 1e-14);
            if (val != cplx(0)) outs.push_back({mm, v, a, val});
          }
      }
      it = cache.emplace(key, std::move(outs)).first;
    }
    for (const Out& o : it->second) {
      BasisState t = s;
      for (int j = 0; j < L; ++j) t.m[j] = s.m[j + 1];
      t.m[L] = o.m;
      for (int j = 0; j + 1 < L; ++j) {
        t.y[j] = s.y[j + 1];
        t.v[j] = s.v[j + 1];
      }
      t.y[L - 1] = s.y[0];
      t.v[L - 1] = o.v;
      t.a = o.a;
      int row = space.index_of(t);
      if (row < 0) throw std::logic_error("translation left the state space");
      op.add(row, col, o.val);
    }
  }
  return op.normalized();
}

SparseOperator seam_operator(const StateSpace& space, const PairTerm& term) {
  const int L = space.length();
  SparseOperator t = translation_operator(space);
  if (L < 2) throw std::invalid_argument("seam_operator needs L >= 2");
  return (adjoint(t) * (pair_operator(space, term, L - 2) * t)).normalized();
}

}  // namespace tubeduality
