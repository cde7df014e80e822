#include "tubeduality/doubles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tubeduality {

std::string double_label(const std::string& class_name, const std::string& irrep_name) {
  return "([" + class_name + "]," + irrep_name + ")";
}

int DoubleModule::dim() const {
  return int(group->classes().at(class_index).elements.size()) * irrep.dim;
}

Mat DoubleModule::action(int a, int g) const {
  const auto& cls = group->classes().at(class_index);
  const int n = int(cls.elements.size());
  const int dv = irrep.dim;
  Mat m = Mat::Zero(n * dv, n * dv);
  for (int j = 0; j < n; ++j) {
    int target = group->mul(group->mul(a, cls.elements[j]), group->inv(a));
    if (target != g) continue;
    int i = int(std::find(cls.elements.begin(), cls.elements.end(), target) - cls.elements.begin());
    int z = group->mul(group->mul(group->inv(cls.transversal[i]), a), cls.transversal[j]);
    m.block(i * dv, j * dv, dv, dv) = irrep(z);
  }
  return m;
}

Mat DoubleModule::group_action(int a) const {
  Mat m = Mat::Zero(dim(), dim());
  for (int g = 0; g < group->order(); ++g) m += action(a, g);
  return m;
}

Mat DoubleModule::grading(int g) const { return action(group->identity(), g); }

std::vector<DoubleModule> double_simples(const FiniteGroup& g) {
  std::vector<DoubleModule> out;
  for (int c = 0; c < int(g.classes().size()); ++c) {
    const auto& cls = g.classes()[c];
    for (const Irrep& ir : g.subgroup_irreps(cls.centralizer)) {
      DoubleModule m;
      m.class_index = c;
      m.class_name = cls.name;
      m.irrep = ir;
      m.label = double_label(cls.name, ir.name);
      m.twist = ir(cls.elements[0]).trace() / double(ir.dim);
      m.group = &g;
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::pair<int, int> double_product(const FiniteGroup& g, std::pair<int, int> x, std::pair<int, int> y) {
  auto [a, ga] = x;
  auto [b, hb] = y;
  if (g.mul(g.mul(g.inv(a), ga), a) != hb) return {-1, -1};
  return {g.mul(a, b), ga};
}

Mat vect_half_braiding(const DoubleModule& z, int a) { return z.group_action(a); }

cplx RepHalfBraiding::at(RepSlot v, RepSlot vp, int w, int u) const {
  auto it = omega.find({v, vp, w, u});
  return it == omega.end() ? cplx(0) : it->second;
}

RepHalfBraiding rep_half_braiding(const DoubleModule& z, const BimoduleCalculus& calc) {
  const FiniteGroup& g = *z.group;
  const auto& irreps = g.irreps();
  const int nz = z.dim();
  const auto& cls = g.classes().at(z.class_index);
  RepHalfBraiding hb;

  // isometric embeddings of each irrep into the module, by averaging
  std::vector<Mat> act(g.order());
  for (int a = 0; a < g.order(); ++a) act[a] = z.group_action(a);
  auto mults = induce_decompose(g, cls.centralizer, z.irrep);
  for (int v = 0; v < int(irreps.size()); ++v) {
    if (mults[v] == 0) continue;
    const int dv = irreps[v].dim;
    std::vector<Mat> cands;
    for (int r = 0; r < nz; ++r)
      for (int c = 0; c < dv; ++c) {
        Mat seed = Mat::Zero(nz, dv);
        seed(r, c) = 1.0;
        Mat avg = Mat::Zero(nz, dv);
        for (int a = 0; a < g.order(); ++a) avg += act[a] * seed * irreps[v](a).adjoint();
        cands.push_back(avg / double(g.order()));
      }
    auto basis = gram_schmidt(cands);
    if (int(basis.size()) != mults[v]) throw std::logic_error("induced decomposition mismatch");
    for (int k = 0; k < mults[v]; ++k) {
      hb.slots.push_back({v, k});
      hb.embeddings.push_back(basis[k]);
    }
  }

  // R_{W,V}(w (x) |c_j, x>) = |c_j, x> (x) c_j . w
  for (int w = 0; w < int(irreps.size()); ++w) {
    const int dw = irreps[w].dim;
    Mat r = Mat::Zero(nz * dw, dw * nz);
    const int dv = z.irrep.dim;
    for (int j = 0; j < int(cls.elements.size()); ++j) {
      const Mat& rho = irreps[w](cls.elements[j]);
      for (int x = 0; x < dv; ++x) {
        int nu = j * dv + x;
        for (int wi = 0; wi < dw; ++wi)
          for (int wo = 0; wo < dw; ++wo) r(nu * dw + wo, wi * nz + nu) += rho(wo, wi);
      }
    }
    CellRef W{0, 0, w};
    for (std::size_t si = 0; si < hb.slots.size(); ++si)
      for (std::size_t so = 0; so < hb.slots.size(); ++so) {
        const Mat& in = hb.embeddings[si];
        const Mat& out = hb.embeddings[so];
        // W (x) V -> V' (x) W
        Mat block = kron(out.adjoint(), Mat::Identity(dw, dw)) * r * kron(Mat::Identity(dw, dw), in);
        CellRef V{0, 0, hb.slots[si].irrep}, Vp{0, 0, hb.slots[so].irrep};
        for (int u = 0; u < int(irreps.size()); ++u) {
          CellRef U{0, 0, u};
          const auto& split_out = calc.splitting(U, Vp, W);
          const auto& split_in = calc.splitting(U, W, V);
          if (split_out.empty() || split_in.empty()) continue;
          Mat res = split_out[0] * split_in[0].adjoint();
          cplx c = clean((res.adjoint() * block).trace() / double(irreps[u].dim), 1e-13);
          if (c != cplx(0)) hb.omega[{hb.slots[si], hb.slots[so], w, u}] = c;
        }
      }
  }
  return hb;
}

std::map<std::string, PrintedOmega> printed_s3_half_braidings() {
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const cplx wb = std::conj(w);
  const cplx i(0.0, 1.0);
  const double h3 = std::sqrt(3.0) / 2.0;
  const int tensor_sign[3] = {1, 0, 2};  // W (x) 1
  const double tr_s[3] = {1.0, 1.0, -1.0};
  const double tr_r[3] = {1.0, -1.0, 0.0};
  const double dims[3] = {1.0, 1.0, 2.0};
  std::map<std::string, PrintedOmega> out;
  auto matrix22 = [](PrintedOmega& o, const cplx (&m)[3][3]) {
    for (int W = 0; W < 3; ++W)
      for (int U = 0; U < 3; ++U)
        if (m[W][U] != cplx(0)) o[{2, 2, W, U}] = m[W][U];
  };
  {
    PrintedOmega o;
    for (int W = 0; W < 3; ++W) o[{0, 0, W, W}] = 1.0;
    out["([1],0)"] = o;
  }
  {
    PrintedOmega o;
    for (int W = 0; W < 3; ++W) o[{1, 1, W, tensor_sign[W]}] = tr_s[W];
    out["([1],1)"] = o;
  }
  {
    PrintedOmega o;
    const cplx m[3][3] = {{0, 0, 1}, {0, 0, -1}, {1, -1, 1}};
    matrix22(o, m);
    out["([1],2)"] = o;
  }
  {
    PrintedOmega o;
    const cplx m[3][3] = {{0, 0, 1}, {0, 0, -1}, {wb, -wb, w}};
    matrix22(o, m);
    out["([s],1)"] = o;
  }
  {
    PrintedOmega o;
    const cplx m[3][3] = {{0, 0, 1}, {0, 0, -1}, {w, -w, wb}};
    matrix22(o, m);
    out["([s],1*)"] = o;
  }
  {
    PrintedOmega o;
    for (int W = 0; W < 3; ++W) {
      o[{0, 0, W, W}] = tr_s[W] / dims[W];
      o[{1, 1, W, tensor_sign[W]}] = 1.0 / dims[W];
    }
    o[{1, 0, 2, 2}] = -i * h3;
    o[{0, 1, 2, 2}] = i * h3;
    out["([s],0)"] = o;
  }
  {
    PrintedOmega o;
    for (int W = 0; W < 2; ++W) o[{1, 1, W, tensor_sign[W]}] = tr_r[W];
    const cplx m[3][3] = {{0, 0, 1}, {0, 0, 1}, {-1, -1, 0}};
    matrix22(o, m);
    o[{2, 1, 2, 2}] = 1.0;
    o[{1, 2, 2, 2}] = -1.0;
    out["([r],1)"] = o;
  }
  {
    PrintedOmega o;
    for (int W = 0; W < 2; ++W) o[{0, 0, W, W}] = tr_r[W];
    const cplx m[3][3] = {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}};
    matrix22(o, m);
    o[{2, 0, 2, 2}] = 1.0;
    o[{0, 2, 2, 2}] = 1.0;
    out["([r],0)"] = o;
  }
  return out;
}

}  // namespace tubeduality
