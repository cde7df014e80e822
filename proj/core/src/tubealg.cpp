#include "tubeduality/tubealg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace tubeduality {

TubeAlgebra::TubeAlgebra(const BimoduleCalculus& calc, std::vector<int> sets) : calc_(&calc), sets_(std::move(sets)) {
  for (int s : sets_) {
    const int n = int(calc.simples(s, s).size());
    for (int a = 0; a < n; ++a) boundaries_.push_back({s, s, a});
  }
  for (int s : sets_) {
    std::vector<int> src(calc.simples(s, s).size());
    for (std::size_t i = 0; i < src.size(); ++i) src[i] = int(i);
    for (int t : sets_) {
      std::vector<int> dst(calc.simples(t, t).size());
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = int(i);
      for (const TubeLabel& l : tube_labels(calc, s, t, src, dst)) basis_.push_back(l);
    }
  }
  for (int i = 0; i < size(); ++i) {
    index_[basis_[i]] = i;
    between_[{basis_[i].source, basis_[i].target}].push_back(i);
    into_[basis_[i].target].push_back(i);
  }
}

int TubeAlgebra::index_of(const TubeLabel& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? -1 : it->second;
}

int TubeAlgebra::identity_tube(CellRef boundary) const {
  return index_of({boundary, boundary, calc_->unit(boundary.left), boundary, 0, 0});
}

const std::vector<int>& TubeAlgebra::between(CellRef source, CellRef target) const {
  static const std::vector<int> none;
  auto it = between_.find({source, target});
  return it == between_.end() ? none : it->second;
}

const FMove& TubeAlgebra::move(CellRef a, CellRef b, CellRef c, CellRef d) const {
  std::array<CellRef, 4> key{a, b, c, d};
  auto it = moves_.find(key);
  if (it != moves_.end()) return it->second;
  return moves_.emplace(key, fmove(*calc_, a, b, c, d)).first->second;
}

const Coeffs& TubeAlgebra::compose(int first, int second) const {
  auto key = std::make_pair(first, second);
  auto it = compose_.find(key);
  if (it != compose_.end()) return it->second;
  return compose_.emplace(key, compute_compose(first, second)).first->second;
}

// first: A -> A' through X1 (fused X1'), second: A' -> A'' through X2.  The
// product crossing is resolved on X3 in X2 o X1 and recoupled three times.
Coeffs TubeAlgebra::compute_compose(int first, int second) const {
  const TubeLabel& t1 = basis_[first];
  const TubeLabel& t2 = basis_[second];
  std::map<int, cplx> acc;
  if (t1.target != t2.source) return {};
  const auto& calc = *calc_;
  const CellRef A = t1.source, A1 = t1.target, A2 = t2.target;
  const CellRef X1 = t1.mpo, X2 = t2.mpo;
  const int l = X2.left, r = X1.right;
  const int n3 = int(calc.simples(l, r).size());
  for (int x3p = 0; x3p < n3; ++x3p) {
    CellRef X3p{l, r, x3p};
    const FMove& f1 = move(X2, X1, A, X3p);
    const FMove& f2 = move(X2, A1, X1, X3p);
    const FMove& f3 = move(A2, X2, X1, X3p);
    const int nj = calc.multiplicity(X3p, X2, t1.fused);
    const int nk = calc.multiplicity(X3p, t2.fused, X1);
    if (nj == 0 || nk == 0) continue;
    for (int x3 = 0; x3 < n3; ++x3) {
      CellRef X3{l, r, x3};
      const int nsig = calc.multiplicity(X3, X2, X1);
      const int nk3 = calc.multiplicity(X3p, A2, X3);
      const int nk3p = calc.multiplicity(X3p, X3, A);
      if (nsig == 0 || nk3 == 0 || nk3p == 0) continue;
      for (int k3 = 0; k3 < nk3; ++k3)
        for (int k3p = 0; k3p < nk3p; ++k3p) {
          cplx total = 0.0;
          for (int sig = 0; sig < nsig; ++sig) {
            int c1 = f1.left_index({x3, sig, k3p});
            int r3 = f3.right_index({x3, sig, k3});
            for (int j = 0; j < nj; ++j) {
              int r1 = f1.right_index({t1.fused.index, t1.kp, j});
              int r2 = f2.right_index({t1.fused.index, t1.k, j});
              cplx a1 = f1.matrix(r1, c1);
              if (a1 == cplx(0)) continue;
              for (int k = 0; k < nk; ++k) {
                int c2 = f2.left_index({t2.fused.index, t2.kp, k});
                int c3 = f3.left_index({t2.fused.index, t2.k, k});
                total += f3.matrix(r3, c3) * std::conj(f2.matrix(r2, c2)) * a1;
              }
            }
          }
          total = clean(total, 1e-13);
          if (total == cplx(0)) continue;
          int idx = index_of({A, A2, X3, X3p, k3, k3p});
          if (idx < 0) throw std::logic_error("product tube outside the algebra");
          acc[idx] += total;
        }
    }
  }
  Coeffs out;
  for (auto& [i, v] : acc)
    if (std::abs(v) > 1e-13) out.push_back({i, v});
  return out;
}

Coeffs TubeAlgebra::expand(CellRef source, CellRef target, CellRef mpo, const Mat& cell) const {
  Coeffs out;
  const auto& calc = *calc_;
  const int nf = int(calc.simples(mpo.left, mpo.right).size());
  for (int f = 0; f < nf; ++f) {
    CellRef F{mpo.left, mpo.right, f};
    const auto& ks = calc.splitting(F, target, mpo);
    const auto& kps = calc.splitting(F, mpo, source);
    for (int k = 0; k < int(ks.size()); ++k)
      for (int kp = 0; kp < int(kps.size()); ++kp) {
        cplx c = clean(hs_inner(ks[k], cell * kps[kp]), 1e-13);
        if (c == cplx(0)) continue;
        int idx = index_of({source, target, mpo, F, k, kp});
        if (idx < 0) throw std::logic_error("expanded tube outside the algebra");
        out.push_back({idx, c});
      }
  }
  return out;
}

const Coeffs& TubeAlgebra::dagger(int t) const {
  auto it = dagger_.find(t);
  if (it != dagger_.end()) return it->second;
  return dagger_.emplace(t, compute_dagger(t)).first->second;
}

// Mate of the adjoint crossing: bend the mpo strand around with the unit
// splittings, normalized so the zigzag is the identity.
Coeffs TubeAlgebra::compute_dagger(int idx) const {
  const TubeLabel& t = basis_[idx];
  const auto& calc = *calc_;
  const CellRef X = t.mpo, Xd = calc.dual(X);
  const int s = X.right, u = X.left;
  const Bimodule& oX = calc.object(X);
  const Bimodule& oXd = calc.object(Xd);
  const Bimodule& oA = calc.object(t.source);
  const Bimodule& oB = calc.object(t.target);
  const Bimodule& oU = calc.object(calc.unit(u));
  const Bimodule& oS = calc.object(calc.unit(s));
  const Mat coev = calc.splitting(calc.unit(u), X, Xd).at(0);              // 1_u -> X Xd
  const Mat ev = calc.splitting(calc.unit(s), Xd, X).at(0).adjoint();      // Xd X -> 1_s
  Bimodule XXd = calc.compose(oX, oXd);
  Bimodule XdX = calc.compose(oXd, oX);

  Mat zig = calc.right_unitor(oX).adjoint() * calc.whisker_left(oX, XdX, oS, ev) *
            calc.whisker_right(coev, oU, XXd, oX) * calc.left_unitor(oX);
  cplx lambda = zig.trace() / double(zig.rows());

  const Mat phi = calc.splitting(t.fused, t.target, X)[t.k] * calc.splitting(t.fused, X, t.source)[t.kp].adjoint();
  Bimodule XdB = calc.compose(oXd, oB);
  Bimodule BX = calc.compose(oB, oX);
  Bimodule XA = calc.compose(oX, oA);
  Bimodule AXd = calc.compose(oA, oXd);
  Mat step1 = calc.whisker_left(XdB, oU, XXd, coev) * calc.right_unitor(XdB);
  Mat step2 = calc.whisker_left(oXd, calc.compose(BX, oXd), calc.compose(XA, oXd),
                                calc.whisker_right(Mat(phi.adjoint()), BX, XA, oXd));
  Mat step3 = calc.whisker_right(ev, XdX, oS, AXd);
  Mat mate = calc.left_unitor(AXd).adjoint() * step3 * step2 * step1 / lambda;
  return expand(t.target, t.source, Xd, mate);
}

Vec TubeAlgebra::mul(const Vec& a, const Vec& b) const {
  Vec out = Vec::Zero(size());
  for (int i = 0; i < size(); ++i) {
    if (std::abs(a[i]) < 1e-15) continue;
    for (int j : into_.at(basis_[i].source)) {
      if (std::abs(b[j]) < 1e-15) continue;
      for (const auto& [k, v] : compose(j, i)) out[k] += a[i] * b[j] * v;
    }
  }
  return out;
}

Vec TubeAlgebra::adjoint(const Vec& a) const {
  Vec out = Vec::Zero(size());
  for (int i = 0; i < size(); ++i) {
    if (std::abs(a[i]) < 1e-15) continue;
    for (const auto& [k, v] : dagger(i)) out[k] += std::conj(a[i]) * v;
  }
  return out;
}

Vec TubeAlgebra::unit() const {
  Vec out = Vec::Zero(size());
  for (CellRef c : boundaries_) out[identity_tube(c)] = 1.0;
  return out;
}

Vec TubeAlgebra::basis_vector(int i) const {
  Vec out = Vec::Zero(size());
  out[i] = 1.0;
  return out;
}

}  // namespace tubeduality

namespace tubeduality {

int SectorBlock::multiplicity(CellRef boundary) const {
  int n = 0;
  for (const auto& s : slots)
    if (s.boundary == boundary) ++n;
  return n;
}

int SectorBlock::slot_of(CellRef boundary, int copy) const {
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i].boundary == boundary && slots[i].copy == copy) return int(i);
  return -1;
}

cplx slot_value(const TubeAlgebra& alg, const SectorBlock& block, int slot, const Vec& x) {
  const Vec& e = block.unit(slot, slot);
  Vec exe = alg.mul(e, alg.mul(x, e));
  return e.dot(exe) / e.squaredNorm();
}

Vec twist_element(const TubeAlgebra& alg, CellRef boundary) {
  Vec out = Vec::Zero(alg.size());
  for (int i : alg.between(boundary, boundary)) {
    const TubeLabel& t = alg.label(i);
    if (t.mpo == boundary && t.k == t.kp) out[i] = 1.0;
  }
  return out;
}

namespace {

Mat kernel(const Mat& m, double rel_tol) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * std::max(top, 1.0)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Orthonormal basis (Euclidean) of the span of the columns.
Mat range(const Mat& m, double tol) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

Vec scale_idempotent(const TubeAlgebra& alg, Vec p) {
  Vec pp = alg.mul(p, p);
  cplx mu = p.dot(pp) / p.squaredNorm();
  return p / mu;
}

// Distinct eigenvalue clusters (ascending real part) with their multiplicity.
std::vector<cplx> clusters(const Eigen::VectorXcd& ev, double tol) {
  std::vector<cplx> vals(ev.data(), ev.data() + ev.size());
  std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  std::vector<cplx> out;
  for (cplx v : vals)
    if (out.empty() || std::abs(v - out.back()) > tol) out.push_back(v);
  return out;
}

void fix_phase(Vec& u) {
  for (int i = 0; i < u.size(); ++i)
    if (std::abs(u[i]) > 1e-9) {
      u *= std::conj(u[i]) / std::abs(u[i]);
      return;
    }
}

}  // namespace

std::vector<SectorBlock> decompose(const TubeAlgebra& alg, std::uint64_t seed) {
  const int n = alg.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  // center: boundary-preserving combinations commuting with every tube
  std::vector<int> diag;
  for (CellRef c : alg.boundaries())
    for (int i : alg.between(c, c)) diag.push_back(i);
  std::sort(diag.begin(), diag.end());
  const int nd = int(diag.size());
  Mat comm = Mat::Zero(Eigen::Index(n) * n, nd);
  for (int j = 0; j < n; ++j) {
    Vec tj = alg.basis_vector(j);
    for (int c = 0; c < nd; ++c) {
      Vec ti = alg.basis_vector(diag[c]);
      comm.block(Eigen::Index(j) * n, c, n, 1) = alg.mul(ti, tj) - alg.mul(tj, ti);
    }
  }
  Mat zsmall = kernel(comm, 1e-9);
  const int m = int(zsmall.cols());
  Mat zb = Mat::Zero(n, m);
  for (int c = 0; c < nd; ++c) zb.row(diag[c]) = zsmall.row(c);

  // minimal central idempotents from a generic central element
  Vec h = Vec::Zero(n);
  for (int a = 0; a < m; ++a) h += cplx(unif(rng), unif(rng)) * zb.col(a);
  h = 0.5 * (h + alg.adjoint(h));
  Eigen::ColPivHouseholderQR<Mat> qr(zb);
  Mat action(m, m);
  for (int b = 0; b < m; ++b) action.col(b) = qr.solve(alg.mul(h, zb.col(b)));
  Eigen::ComplexEigenSolver<Mat> es(action);

  std::vector<SectorBlock> blocks;
  for (int k = 0; k < m; ++k) {
    SectorBlock blk;
    blk.central = scale_idempotent(alg, zb * es.eigenvectors().col(k));
    for (int i = 0; i < n; ++i)
      if (std::abs(blk.central[i]) < 1e-13) blk.central[i] = 0.0;

    // minimal idempotents in each boundary corner
    std::vector<Vec> projectors;
    for (CellRef c : alg.boundaries()) {
      Vec corner_unit = alg.mul(blk.central, alg.basis_vector(alg.identity_tube(c)));
      if (corner_unit.norm() < 1e-9) continue;
      const auto& local = alg.between(c, c);
      Mat span(n, Eigen::Index(local.size()));
      for (std::size_t q = 0; q < local.size(); ++q)
        span.col(q) = alg.mul(corner_unit, alg.mul(alg.basis_vector(local[q]), corner_unit));
      Mat basis = range(span, 1e-9);
      const int d = int(basis.cols());
      const int na = int(std::lround(std::sqrt(double(d))));
      if (na * na != d) throw std::runtime_error("corner is not a full matrix algebra");
      if (na == 1) {
        blk.slots.push_back({c, 0});
        projectors.push_back(corner_unit);
        continue;
      }
      Vec hc = Vec::Zero(n);
      for (int q = 0; q < d; ++q) hc += cplx(unif(rng), unif(rng)) * basis.col(q);
      hc = alg.mul(corner_unit, alg.mul(hc, corner_unit));
      hc = 0.5 * (hc + alg.adjoint(hc));
      Mat act(d, d);
      for (int q = 0; q < d; ++q) act.col(q) = basis.adjoint() * alg.mul(hc, basis.col(q));
      Eigen::ComplexEigenSolver<Mat> ces(act, false);
      auto vals = clusters(ces.eigenvalues(), 1e-6);
      if (int(vals.size()) != na) throw std::runtime_error("degenerate corner element");
      for (int i = 0; i < na; ++i) {
        Vec e = corner_unit;
        for (int j = 0; j < na; ++j) {
          if (j == i) continue;
          e = alg.mul(hc - vals[j] * corner_unit, e) / (vals[i] - vals[j]);
        }
        blk.slots.push_back({c, i});
        projectors.push_back(e);
      }
    }

    // matrix units relative to the first slot
    const int ns = int(blk.slots.size());
    std::vector<Vec> down(ns);  // e_{s,0}
    down[0] = projectors[0];
    for (int s = 1; s < ns; ++s) {
      Vec u;
      for (int i : alg.between(blk.slots[0].boundary, blk.slots[s].boundary)) {
        u = alg.mul(projectors[s], alg.mul(alg.basis_vector(i), projectors[0]));
        if (u.norm() > 1e-8) break;
      }
      if (u.size() == 0 || u.norm() <= 1e-8) throw std::runtime_error("no tube links two slots of a block");
      Vec uu = alg.mul(alg.adjoint(u), u);
      cplx mu = projectors[0].dot(uu) / projectors[0].squaredNorm();
      u /= std::sqrt(mu.real());
      fix_phase(u);
      down[s] = u;
    }
    blk.units.resize(std::size_t(ns) * ns);
    for (int r = 0; r < ns; ++r)
      for (int c = 0; c < ns; ++c) {
        Vec e = r == c && r == 0 ? projectors[0] : alg.mul(down[r], alg.adjoint(down[c]));
        for (int i = 0; i < n; ++i)
          if (std::abs(e[i]) < 1e-14) e[i] = 0.0;
        blk.units[std::size_t(r) * ns + c] = e;
      }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

}  // namespace tubeduality
