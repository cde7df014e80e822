#include <set>

#include <gtest/gtest.h>

#include "checks.hpp"
#include "oracle.hpp"
#include "tubeduality/chain.hpp"
#include "tubeduality/duality.hpp"
#include "tubeduality/spectra.hpp"

using namespace tubeduality;

namespace {

const ModelSpec& M(const char* n) { return model_by_name(n); }

// Sector permutation of Z(D) as seen through one functor.
Couplings generic_couplings(const std::string& model) {
  if (model == "ising" || model == "kw") return {{"J", 1.0}, {"g", 0.7}};
  return {{"J1", 0.61}, {"J2", 1.0}};
}

std::map<std::string, std::string> sigma(const char* a, const char* b, int functor = 0) {
  return sector_map(M(a), M(b), functor).mapping;
}

}  // namespace

TEST(Functors, NamesOfTheBuiltinPairs) {
  EXPECT_EQ(functor_names(M("ising"), M("kw")), (std::vector<std::string>{"1"}));
  EXPECT_EQ(functor_names(M("rep_z2"), M("xxz")), (std::vector<std::string>{"0_Z3", "1*_Z3", "1_Z3"}));
  EXPECT_THROW(functor_names(M("ising"), M("xxz")), std::invalid_argument);
}

TEST(Intertwiner, EveryIsingBoundaryReachesEveryDualBoundary) {
  // each twist of the dual receives one charge sector of periodic Ising
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_FALSE(intertwiner_labels(M("ising"), M("kw"), a, b).empty()) << a << b;
}

TEST(Intertwiner, IsingToKramersWannierTransmutesLocalTerms) {
  const int L = 4;
  const auto src = assemble("ising", L, "1"), tgt = assemble("kw", L, "0");
  const Encoding es = effective_encoding(*src.spec, src.space), et = effective_encoding(*tgt.spec, tgt.space);
  const auto labels = intertwiner_labels(M("ising"), M("kw"), 0, 0);
  ASSERT_FALSE(labels.empty());
  const Mat t = intertwiner_to_operator(src.space, tgt.space, labels.front()).dense();
  ASSERT_GT(max_abs(t), 1e-6);
  const Mat z = oracle::pauli('z'), x = oracle::pauli('x');
  // Z_i Z_{i+1} lands on a single Z of the dual, X_i on a pair of X
  for (int i = 0; i < L; ++i) {
    const Mat zz = es.restrict(oracle::on_sites(L, {{i, z}, {(i + 1) % L, z}}));
    const Mat xi = es.restrict(oracle::on_sites(L, {{i, x}}));
    double best_z = 1e9, best_x = 1e9;
    for (int j = 0; j < L; ++j) {
      const Mat zj = et.restrict(oracle::on_sites(L, {{j, z}}));
      const Mat xx = et.restrict(oracle::on_sites(L, {{j, x}, {(j + 1) % L, x}}));
      best_z = std::min(best_z, max_abs(t * zz - zj * t));
      best_x = std::min(best_x, max_abs(t * xi - xx * t));
    }
    EXPECT_LT(best_z, 1e-12) << i;
    EXPECT_LT(best_x, 1e-12) << i;
  }
}

TEST(Intertwiner, BondTermsAreTransmuted) {
  for (const auto& [a, b] : builtin_dual_pairs()) {
    const ModelSpec &ms = M(a.c_str()), &mt = M(b.c_str());
    const auto src = assemble(ms, 4, {{0, 0}}), tgt = assemble(mt, 4, {{0, 0}});
    const auto& calc = *ms.family->calc;
    for (const auto& t : intertwiner_labels(ms, mt, 0, 0)) {
      const Mat o = intertwiner_to_operator(src.space, tgt.space, t).dense();
      for (int rung = 0; rung < int(calc.simples(0, 0).size()); ++rung) {
        const PairTerm ts = rung_term(calc, ms.allowed_y, rung), tt = rung_term(calc, mt.allowed_y, rung);
        if (ts.blocks.empty() || tt.blocks.empty()) continue;
        for (int j = 0; j + 1 < 4; ++j) {
          const Mat bs = pair_operator(src.space, ts, j).dense(), bt = pair_operator(tgt.space, tt, j).dense();
          EXPECT_LT(max_abs(o * bs - bt * o), 1e-10) << a << "->" << b << " rung " << rung << " j " << j;
        }
      }
    }
  }
}

TEST(Intertwiner, JointAlgebraIsFaithful) {
  for (const auto& [a, b] : builtin_dual_pairs()) {
    const ModelSpec &ms = M(a.c_str()), &mt = M(b.c_str());
    auto sys = sector_system(ms, mt);
    const TubeAlgebra& alg = sys->algebra;
    for (int L = 2; L <= 3; ++L) {
      std::map<int, StateSpace> spaces;
      spaces.emplace(ms.module_set, checks::all_boundaries(ms, L));
      spaces.emplace(mt.module_set, checks::all_boundaries(mt, L));
      std::vector<Mat> ops;
      for (int i = 0; i < alg.size(); ++i) {
        const TubeLabel& t = alg.label(i);
        ops.push_back(closed_mpo_operator(spaces.at(t.source.left), spaces.at(t.target.left), t).dense());
      }
      double prod = 0.0, adj = 0.0;
      for (int i = 0; i < alg.size(); ++i) {
        const TubeLabel& ti = alg.label(i);
        Mat d = Mat::Zero(ops[i].cols(), ops[i].rows());
        for (auto [k, c] : alg.dagger(i)) d += c * ops[k];
        adj = std::max(adj, max_abs(d - ops[i].adjoint()));
        for (int j = 0; j < alg.size(); ++j) {
          const TubeLabel& tj = alg.label(j);
          if (tj.source.left != ti.target.left) {
            EXPECT_TRUE(alg.compose(i, j).empty());
            continue;
          }
          Mat p = Mat::Zero(ops[j].rows(), ops[i].cols());
          for (auto [k, c] : alg.compose(i, j)) p += c * ops[k];
          prod = std::max(prod, max_abs(ops[j] * ops[i] - p));
        }
      }
      EXPECT_LT(prod, 1e-10) << a << "->" << b << " L=" << L;
      EXPECT_LT(adj, 1e-10) << a << "->" << b << " L=" << L;
    }
  }
}

TEST(Intertwiner, KramersWannierTwiceIsTheSymmetrizer) {
  const int L = 4;
  const auto src = assemble("ising", L, "1"), tgt = assemble("kw", L, "0");
  const Encoding es = effective_encoding(*src.spec, src.space);
  const TubeLabel fwd = intertwiner_labels(M("ising"), M("kw"), 0, 0).front();
  const TubeLabel back = intertwiner_labels(M("kw"), M("ising"), 0, 0).front();
  const Mat round = intertwiner_to_operator(tgt.space, src.space, back).dense() *
                    intertwiner_to_operator(src.space, tgt.space, fwd).dense();
  std::vector<std::pair<int, Mat>> flips;
  for (int i = 0; i < L; ++i) flips.emplace_back(i, oracle::pauli('x'));
  const Mat sym = es.restrict(Mat::Identity(1 << L, 1 << L) + oracle::on_sites(L, flips));
  const cplx scale = (sym.adjoint() * round).trace() / (sym.adjoint() * sym).trace();
  EXPECT_GT(std::abs(scale), 1e-6);
  EXPECT_LT(max_abs(round - scale * sym), 1e-12);
}

TEST(Intertwiner, CommutesWithHamiltonians) {
  for (const auto& [a, b] : builtin_dual_pairs())
    for (int L = 3; L <= 4; ++L) {
      const DualityReport r = verify_duality(M(a.c_str()), M(b.c_str()), L, generic_couplings(a));
      EXPECT_LT(r.intertwining, 1e-10) << a << "->" << b;
    }
}

TEST(SectorMap, IsingKramersWannierSwapsTwoSectors) {
  const SectorMap m = sector_map(M("ising"), M("kw"), 0);
  EXPECT_TRUE(m.bijective);
  EXPECT_TRUE(m.unresolved.empty());
  EXPECT_EQ(m.mapping, (std::map<std::string, std::string>{
                           {"([1],0)", "([1],0)"}, {"([1],1)", "([m],0)"}, {"([m],0)", "([1],1)"}, {"([m],1)", "([m],1)"}}));
}

TEST(SectorMap, RepZ2ToXxzMovesTheDoubletCharge) {
  const std::map<std::string, std::string> want{
      {"([1],0)", "([1],0)"}, {"([1],1)", "([1],1)"}, {"([1],2)", "([s],0)"}, {"([r],0)", "([r],0)"},
      {"([r],1)", "([r],1)"}, {"([s],0)", "([1],2)"}, {"([s],1)", "([s],1)"}, {"([s],1*)", "([s],1*)"}};
  for (int f = 0; f < 3; ++f) {
    const SectorMap m = sector_map(M("rep_z2"), M("xxz"), f);
    EXPECT_TRUE(m.bijective) << f;
    EXPECT_EQ(m.mapping, want) << f;
    for (const auto& e : m.entries) EXPECT_GT(e.overlap, kOverlapThreshold);
  }
}

TEST(SectorMap, RoundTripsAreBraidedAutoEquivalences) {
  for (const auto& [a, b] : builtin_dual_pairs()) {
    const auto fwd = sigma(a.c_str(), b.c_str());
    const auto back = sigma(b.c_str(), a.c_str());
    // M -> N -> M is the identity on labels
    for (const auto& [z, w] : compose_maps(fwd, back)) EXPECT_EQ(z, w) << a << "->" << b;
    // the induced permutation of Z(D) labels squares to the identity
    for (const auto& [z, w] : compose_maps(fwd, fwd)) EXPECT_EQ(z, w) << a << "->" << b;
  }
  const auto s = sigma("rep_z2", "xxz");
  int moved = 0;
  for (const auto& [z, w] : s) moved += z != w;
  EXPECT_EQ(moved, 2);
  EXPECT_EQ(sigma("rep_s3", "xxz"), sigma("xxz", "rep_s3"));
}

TEST(Verify, AllPairsAreIsospectralPerSector) {
  for (const auto& [a, b] : builtin_dual_pairs())
    for (int L = 3; L <= 4; ++L) {
      const DualityReport r = verify_duality(M(a.c_str()), M(b.c_str()), L, generic_couplings(a));
      EXPECT_TRUE(r.ok) << a << "->" << b << " L=" << L;
      EXPECT_FALSE(r.matches.empty());
      for (const auto& m : r.matches) {
        EXPECT_TRUE(m.match) << m.source << " -> " << m.target;
        EXPECT_LT(m.isometry_defect, 1e-10);
      }
    }
}

TEST(Verify, IsingVacuumGroundStatesAgree) {
  const DualityReport r = verify_duality(M("ising"), M("kw"), 6, {{"J", 1.0}, {"g", 0.7}});
  ASSERT_TRUE(r.ok);
  std::set<std::string> pairs;
  for (const auto& m : r.matches) {
    pairs.insert(m.source + "->" + m.target);
    if (m.source == "([1],0)") EXPECT_NEAR(m.source_spectrum.front(), m.target_spectrum.front(), 1e-10);
  }
  EXPECT_EQ(pairs, (std::set<std::string>{"([1],0)->([1],0)", "([1],1)->([m],0)", "([m],0)->([1],1)",
                                          "([m],1)->([m],1)"}));
}

TEST(Verify, TransportedOddIsingBlockIsTheDualBlock) {
  const ModelSpec &ms = M("ising"), &mt = M("kw");
  const DualityReport r = verify_duality(ms, mt, 4);
  bool seen = false;
  for (const auto& m : r.matches) {
    if (m.source != "([1],1)") continue;
    seen = true;
    EXPECT_EQ(m.source_boundary, "1");
    EXPECT_EQ(m.target_boundary, "1");
    EXPECT_LT(oracle::max_gap(m.transported_spectrum, m.target_spectrum), 1e-10);
    // dual odd periodic block against the brute-force antiperiodic even block
    const Mat x = oracle::on_sites(4, {{0, oracle::pauli('z')}, {1, oracle::pauli('z')}, {2, oracle::pauli('z')},
                                       {3, oracle::pauli('z')}});
    const auto even = oracle::charge_spectrum(oracle::kramers_wannier(4, 1.0, 1.0, true), x, 0);
    EXPECT_LT(oracle::max_gap(m.target_spectrum, even), 1e-10);
    const Mat flip = oracle::on_sites(4, {{0, oracle::pauli('x')}, {1, oracle::pauli('x')}, {2, oracle::pauli('x')},
                                          {3, oracle::pauli('x')}});
    const auto odd = oracle::charge_spectrum(oracle::ising(4, 1.0, 1.0, false), flip, 1);
    EXPECT_LT(oracle::max_gap(m.source_spectrum, odd), 1e-10);
  }
  EXPECT_TRUE(seen);
}
