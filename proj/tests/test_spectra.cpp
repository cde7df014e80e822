#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tubeduality/decomposition.hpp"
#include "tubeduality/spectra.hpp"

using namespace tubeduality;

TEST(Eigensolve, IdentityHasUnitEigenvalues) {
  const Eigensystem es = eigensolve(SparseOperator::identity(5));
  ASSERT_EQ(es.values.size(), 5u);
  for (double v : es.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Eigensolve, TwoSiteIsingMatchesBruteForce) {
  const AssembledModel m = assemble("ising", 2, "1", {{"J", 1.0}, {"g", 1.0}});
  const auto got = eigensolve(m.hamiltonian).values;
  const auto want = oracle::spectrum(oracle::ising(2, 1.0, 1.0, false));
  EXPECT_LT(oracle::max_gap(got, want), 1e-12);
  const double r8 = 2.0 * std::sqrt(2.0);
  EXPECT_LT(oracle::max_gap(got, {-r8, -2.0, 2.0, r8}), 1e-12);
}

TEST(Eigensolve, TwoSiteXxMatchesBruteForce) {
  const AssembledModel m = assemble("xxz", 2, "1", {{"J2", 1.0}, {"J1", 0.0}});
  const auto got = eigensolve(m.hamiltonian).values;
  EXPECT_LT(oracle::max_gap(got, oracle::spectrum(oracle::xxz(2, 1.0, 0.0))), 1e-12);
  EXPECT_LT(oracle::max_gap(got, {-2.0, 0.0, 0.0, 2.0}), 1e-12);
}

TEST(Eigensolve, VectorsAreOrthonormalWithFixedPhase) {
  const AssembledModel m = assemble("rep_z2", 4, "2");
  const Eigensystem es = eigensolve(m.hamiltonian);
  const long n = es.vectors.cols();
  EXPECT_LT(max_abs(es.vectors.adjoint() * es.vectors - Mat::Identity(n, n)), 1e-12);
  EXPECT_LT(es.residual, 1e-10);
  for (long c = 0; c < n; ++c) {
    Eigen::Index piv = 0;
    es.vectors.col(c).cwiseAbs().maxCoeff(&piv);
    EXPECT_NEAR(es.vectors(piv, c).imag(), 0.0, 1e-15);
    EXPECT_GT(es.vectors(piv, c).real(), 0.0);
  }
  EXPECT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
}

TEST(Eigensolve, RejectsNonHermitianInput) {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eigensolve(m), std::invalid_argument);
  EXPECT_THROW(eigensolve(Mat(Mat::Zero(2, 3))), std::invalid_argument);
}

TEST(Eigensolve, TraceEqualsEigenvalueSum) {
  for (const char* model : {"ising", "kw", "xxz", "rep_z2", "rep_z3", "rep_s3"}) {
    const ModelSpec& m = model_by_name(model);
    const AssembledModel a = assemble(m, 5, {{int(boundary_names(m).size()) - 1, 0}});
    const Mat h = a.hamiltonian.dense();
    const auto ev = eigenvalues(h);
    EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), h.trace().real(), 1e-9) << model;
  }
}

TEST(Eigensolve, SectorSpectraTileTheFullSpectrum) {
  for (const auto& [model, bc] : std::vector<std::pair<std::string, std::string>>{
           {"ising", "1"}, {"rep_z2", "2"}, {"xxz", "s+s2"}, {"rep_s3", "2"}}) {
    const ModelSpec& m = model_by_name(model);
    const AssembledModel a = assemble(m, 4, parse_boundary(m, bc));
    const SectorDecomposition d = sector_decompose(*sector_system(m), a.space, a.hamiltonian);
    std::vector<double> joined;
    for (const Mat& b : d.blocks) {
      const auto ev = eigenvalues(b);
      joined.insert(joined.end(), ev.begin(), ev.end());
    }
    const auto full = eigenvalues(a.hamiltonian.dense());
    EXPECT_TRUE(compare_spectra(joined, full, 1e-9).match) << model << " " << bc;
  }
}

TEST(CompareSpectra, Examples) {
  const std::vector<double> a{-1.0, 0.5, 2.0};
  const SpectrumComparison same = compare_spectra(a, a);
  EXPECT_TRUE(same.match);
  EXPECT_EQ(same.max_gap, 0.0);

  const SpectrumComparison close = compare_spectra(a, {2.0, -1.0 + 1e-12, 0.5}, 1e-9);
  EXPECT_TRUE(close.match);
  EXPECT_NEAR(close.max_gap, 1e-12, 1e-15);

  const SpectrumComparison shorter = compare_spectra(a, {-1.0, 0.5});
  EXPECT_FALSE(shorter.match);
  EXPECT_EQ(shorter.size_a, 3u);
  EXPECT_EQ(shorter.size_b, 2u);
}

TEST(Degeneracies, GroupsCloseLevels) {
  const auto d = degeneracies({-2.0, 0.0, 1e-10, 2.0, 2.0 + 5e-9, 3.0});
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d[1].second, 2);
  EXPECT_EQ(d[2].second, 2);
  EXPECT_EQ(d[3].second, 1);
}
