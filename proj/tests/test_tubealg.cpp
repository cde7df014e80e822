#include <set>

#include <gtest/gtest.h>

#include "checks.hpp"
#include "oracle.hpp"

using namespace tubeduality;

namespace {

std::set<std::string> sector_labels(const std::string& model, int L, const std::string& bc) {
  const ModelSpec& m = model_by_name(model);
  auto sys = sector_system(m);
  const AssembledModel a = assemble(m, L, parse_boundary(m, bc));
  std::set<std::string> out;
  for (const auto& p : sector_pieces(*sys, a.space))
    if (p.dim() > 0) out.insert(p.label.label);
  return out;
}

int tube(const TubeAlgebra& alg, CellRef a, CellRef b, CellRef x, CellRef f) {
  return alg.index_of(TubeLabel{a, b, x, f, 0, 0});
}

}  // namespace

TEST(TubeOperator, IsingFluxTubeIsGlobalFlip) {
  const ModelSpec& m = model_by_name("ising");
  auto sys = sector_system(m);
  const AssembledModel a = assemble(m, 4, parse_boundary(m, "1"));
  const Encoding e = effective_encoding(m, a.space);
  const CellRef one{0, 0, 0}, mm{0, 0, 1};
  const TubeLabel t = sys->algebra.label(tube(sys->algebra, one, one, mm, mm));
  std::vector<std::pair<int, Mat>> flips;
  for (int i = 0; i < 4; ++i) flips.emplace_back(i, oracle::pauli('x'));
  EXPECT_LT(max_abs(e.embed(tube_to_operator(a.space, t).dense()) - oracle::on_sites(4, flips)), 1e-14);
}

TEST(TubeOperator, IdentityTubesAreIdentities) {
  for (const ModelSpec* m : checks::distinct_duals()) {
    auto sys = sector_system(*m);
    for (int b = 0; b < int(boundary_names(*m).size()); ++b) {
      const AssembledModel a = assemble(*m, 3, {{b, 0}});
      const CellRef cb{m->module_set, m->module_set, b};
      const Mat o = tube_to_operator(a.space, sys->algebra.label(sys->algebra.identity_tube(cb))).dense();
      EXPECT_LT(max_abs(o - Mat::Identity(a.space.dim(), a.space.dim())), 1e-13) << m->name << " " << b;
    }
  }
}

TEST(TubeOperator, XxzUnitTubesAreRepresentationProducts) {
  const ModelSpec& m = model_by_name("xxz");
  auto sys = sector_system(m);
  const TubeAlgebra& alg = sys->algebra;
  const AssembledModel a = assemble(m, 3, parse_boundary(m, "1"));
  const int h = m.module_set;
  const CellRef u{h, h, 0};
  const int r = simple_of(m, "r"), s = simple_of(m, "s"), s2 = simple_of(m, "s2"), rs = simple_of(m, "rs");
  auto op = [&](int x) {
    return tube_to_operator(a.space, alg.label(tube(alg, u, u, {h, h, x}, {h, h, x}))).dense();
  };
  // group law of the operators and of the abstract product
  EXPECT_LT(max_abs(op(r) * op(s) - op(rs)), 1e-13);
  const Vec prod = alg.mul(alg.basis_vector(tube(alg, u, u, {h, h, r}, {h, h, r})),
                           alg.basis_vector(tube(alg, u, u, {h, h, s}, {h, h, s})));
  EXPECT_LT((prod - alg.basis_vector(tube(alg, u, u, {h, h, rs}, {h, h, rs}))).cwiseAbs().maxCoeff(), 1e-13);
  // adjoint of s is s^2
  const Vec d = alg.adjoint(alg.basis_vector(tube(alg, u, u, {h, h, s}, {h, h, s})));
  EXPECT_LT((d - alg.basis_vector(tube(alg, u, u, {h, h, s2}, {h, h, s2}))).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TubeAlgebra, VectZ2FluxSquaresToIdentity) {
  auto sys = sector_system(model_by_name("ising"));
  const TubeAlgebra& alg = sys->algebra;
  const CellRef one{0, 0, 0}, mm{0, 0, 1};
  const Vec t = alg.basis_vector(tube(alg, one, one, mm, mm));
  const Vec id = alg.basis_vector(tube(alg, one, one, one, one));
  EXPECT_LT((alg.mul(t, t) - id).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((alg.adjoint(t) - t).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((alg.adjoint(id) - id).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TubeAlgebra, RepS3DoubletSquareStaysOnUnitBoundary) {
  auto sys = sector_system(model_by_name("rep_z2"));
  const TubeAlgebra& alg = sys->algebra;
  const int h = model_by_name("rep_z2").module_set;
  const CellRef u{h, h, 0}, two{h, h, 2};
  const Vec t = alg.basis_vector(tube(alg, u, u, two, two));
  const Vec sq = alg.mul(t, t);
  std::set<int> mpos;
  for (int i = 0; i < alg.size(); ++i) {
    if (std::abs(sq[i]) < 1e-12) continue;
    const TubeLabel& l = alg.label(i);
    EXPECT_EQ(l.source, u);
    EXPECT_EQ(l.target, u);
    mpos.insert(l.mpo.index);
  }
  EXPECT_EQ(mpos, (std::set<int>{0, 1, 2}));
}

TEST(TubeAlgebra, ProductsAndAdjointsAreFaithful) {
  for (const ModelSpec* m : checks::distinct_duals())
    for (int L = 2; L <= 3; ++L) {
      const auto f = checks::tube_faithfulness(*m, L);
      EXPECT_LT(f.product, 1e-10) << m->name << " L=" << L;
      EXPECT_LT(f.adjoint, 1e-10) << m->name << " L=" << L;
    }
}

TEST(MatrixUnits, FormACompleteSystem) {
  for (const ModelSpec* m : checks::distinct_duals()) {
    auto sys = sector_system(*m);
    const TubeAlgebra& alg = sys->algebra;
    Vec total = Vec::Zero(alg.size());
    double rel = 0.0;
    for (std::size_t b = 0; b < sys->blocks.size(); ++b) {
      const SectorBlock& blk = sys->blocks[b];
      const int n = int(blk.slots.size());
      for (int r = 0; r < n; ++r) {
        total += blk.unit(r, r);
        for (int c = 0; c < n; ++c) {
          rel = std::max(rel, (alg.adjoint(blk.unit(r, c)) - blk.unit(c, r)).cwiseAbs().maxCoeff());
          for (int c2 = 0; c2 < n; ++c2)
            for (int d = 0; d < n; ++d) {
              const Vec want = c == c2 ? blk.unit(r, d) : Vec::Zero(alg.size());
              rel = std::max(rel, (alg.mul(blk.unit(r, c), blk.unit(c2, d)) - want).cwiseAbs().maxCoeff());
            }
        }
      }
      if (b + 1 < sys->blocks.size())
        rel = std::max(rel, alg.mul(blk.central, sys->blocks[b + 1].central).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(rel, 1e-10) << m->name;
    EXPECT_LT((total - alg.unit()).cwiseAbs().maxCoeff(), 1e-10) << m->name;
  }
}

TEST(MatrixUnits, VectZ2ChargeProjectors) {
  const ModelSpec& m = model_by_name("ising");
  auto sys = sector_system(m);
  const TubeAlgebra& alg = sys->algebra;
  const CellRef one{0, 0, 0}, mm{0, 0, 1};
  const Vec want = 0.5 * (alg.basis_vector(tube(alg, one, one, one, one)) -
                          alg.basis_vector(tube(alg, one, one, mm, mm)));
  bool found = false;
  for (const MatrixUnit& u : matrix_units(*sys, m.module_set)) {
    if (u.sector != "([1],1)") continue;
    found = true;
    EXPECT_EQ(u.source.boundary, one);
    EXPECT_LT((u.coefficients - want).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_DOUBLE_EQ(u.normalization, 0.5);
  }
  EXPECT_TRUE(found);
}

TEST(SectorDecompose, IsingPeriodicSplitsIntoCharges) {
  for (int L = 3; L <= 6; ++L) {
    const ModelSpec& m = model_by_name("ising");
    auto sys = sector_system(m);
    const AssembledModel a = assemble(m, L, parse_boundary(m, "1"));
    const SectorDecomposition d = sector_decompose(*sys, a.space, a.hamiltonian);
    ASSERT_EQ(d.pieces.size(), 2u);
    std::set<std::string> labels;
    for (const auto& p : d.pieces) {
      labels.insert(p.label.label);
      EXPECT_EQ(p.dim(), 1 << (L - 1));
    }
    EXPECT_EQ(labels, (std::set<std::string>{"([1],0)", "([1],1)"}));
    EXPECT_LT(d.completeness, 1e-10);
    EXPECT_LT(d.reconstruction, 1e-10);
  }
}

TEST(SectorDecompose, XxzFluxBoundaryCarriesCentralizerCharges) {
  EXPECT_EQ(sector_labels("xxz", 4, "r"), (std::set<std::string>{"([r],0)", "([r],1)"}));
  EXPECT_EQ(sector_labels("xxz", 4, "s"), (std::set<std::string>{"([s],0)", "([s],1)", "([s],1*)"}));
}

TEST(SectorDecompose, RepZ2NonAbelianBoundary) {
  EXPECT_EQ(sector_labels("rep_z2", 4, "2"),
            (std::set<std::string>{"([1],2)", "([r],0)", "([r],1)", "([s],1)", "([s],1*)"}));
  EXPECT_EQ(sector_labels("rep_z2", 4, "1"), (std::set<std::string>{"([1],1)", "([r],1)", "([s],0)"}));
}

TEST(SectorDecompose, RejectsNonSymmetricOperators) {
  const ModelSpec& m = model_by_name("ising");
  auto sys = sector_system(m);
  const AssembledModel a = assemble(m, 3, parse_boundary(m, "1"));
  Mat r = Mat::Random(a.space.dim(), a.space.dim());
  r = r + r.adjoint().eval();
  EXPECT_THROW(sector_decompose(*sys, a.space, SparseOperator::from_dense(r)), std::runtime_error);
}

TEST(Symmetry, BoundaryPreservingTubesCommuteWithHamiltonians) {
  for (const ModelSpec* m : checks::distinct_duals())
    for (int L = 3; L <= 4; ++L) EXPECT_LT(checks::symmetry_commutation(*m, L), 1e-10) << m->name << " L=" << L;
}
