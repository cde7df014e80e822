#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tubeduality/hamiltonian.hpp"

using namespace tubeduality;

namespace {

StateSpace space(const std::string& model, int L, const std::string& bc) {
  const ModelSpec& m = model_by_name(model);
  return enumerate(make_config(m, L, parse_boundary(m, bc)));
}

// Closed paths of length L on the fusion graph of the 2-dim irrep of S3.
long anyon_chain_dim(int L) {
  Eigen::Matrix3d a;
  a << 0, 0, 1, 0, 0, 1, 1, 1, 1;
  Eigen::Matrix3d p = Eigen::Matrix3d::Identity();
  for (int i = 0; i < L; ++i) p = p * a;
  return std::lround(p.trace());
}

}  // namespace

TEST(Enumerate, IsingAndXxzAreSixteenDimensionalAtFourSites) {
  EXPECT_EQ(space("ising", 4, "1").dim(), 16);
  EXPECT_EQ(space("ising", 4, "m").dim(), 16);
  EXPECT_EQ(space("kw", 4, "0").dim(), 16);
  EXPECT_EQ(space("xxz", 4, "1").dim(), 16);
  EXPECT_EQ(space("vect", 4, "r").dim(), 16);
}

TEST(Enumerate, RepZ3CountsCyclicDistinctStrings) {
  for (int L = 2; L <= 7; ++L) EXPECT_EQ(space("rep_z3", L, "1").dim(), oracle::cyclic_distinct_strings(L, 3)) << L;
  EXPECT_EQ(space("rep_z3", 4, "1").dim(), 18);
}

TEST(Enumerate, RepS3ChainCountsClosedFusionPaths) {
  for (int L = 2; L <= 8; ++L) EXPECT_EQ(space("rep_s3", L, "0").dim(), anyon_chain_dim(L)) << L;
}

TEST(Enumerate, NonAbelianBoundaryDoublesTheLastSpin) {
  for (int L = 3; L <= 8; ++L) {
    EXPECT_EQ(space("rep_z2", L, "0").dim(), 1 << L);
    EXPECT_EQ(space("rep_z2", L, "1").dim(), 1 << L);
    EXPECT_EQ(space("rep_z2", L, "2").dim(), 1 << (L + 1));
  }
}

TEST(Enumerate, DirectSumBoundaryStacksComponents) {
  const StateSpace s = space("xxz", 3, "s+s2");
  EXPECT_EQ(s.dim(), space("xxz", 3, "s").dim() + space("xxz", 3, "s2").dim());
  EXPECT_EQ(s.component_indices(0).size() + s.component_indices(1).size(), std::size_t(s.dim()));
  EXPECT_EQ(s.state(0).component, 0);
  EXPECT_EQ(s.state(s.dim() - 1).component, 1);
}

TEST(Enumerate, IsDeterministicAndIndexed) {
  const StateSpace a = space("rep_z2", 4, "2");
  const StateSpace b = space("rep_z2", 4, "2");
  ASSERT_EQ(a.dim(), b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    EXPECT_EQ(a.state(i), b.state(i));
    EXPECT_EQ(a.index_of(a.state(i)), i);
  }
  for (int i = 1; i < a.dim(); ++i) EXPECT_LT(a.state(i - 1).key(), a.state(i).key());
}

TEST(Enumerate, RejectsBadInput) {
  const ModelSpec& ising = model_by_name("ising");
  EXPECT_THROW(parse_boundary(ising, "q"), std::invalid_argument);
  EXPECT_THROW(model_by_name("potts"), std::invalid_argument);
  EXPECT_THROW(enumerate(make_config(ising, 0, parse_boundary(ising, "1"))), std::exception);
}

TEST(Encoding, SpinLabelsFollowTheModuleObjects) {
  {
    const StateSpace s = space("ising", 3, "1");
    const Encoding e = effective_encoding(model_by_name("ising"), s);
    ASSERT_TRUE(e.product);
    ASSERT_EQ(e.sites.size(), 3u);
    EXPECT_EQ(e.sites[0].labels, (std::vector<std::string>{"1", "m"}));
    EXPECT_EQ(e.product_dim, 8);
  }
  {
    const StateSpace s = space("rep_z2", 3, "0");
    const Encoding e = effective_encoding(model_by_name("rep_z2"), s);
    ASSERT_TRUE(e.product);
    EXPECT_EQ(e.sites[0].labels, (std::vector<std::string>{"0_Z2", "1_Z2"}));
  }
  {
    const StateSpace s = space("rep_z2", 3, "2");
    const Encoding e = effective_encoding(model_by_name("rep_z2"), s);
    EXPECT_EQ(e.sites.size(), 4u);
    EXPECT_EQ(e.product_dim, 16);
  }
  {
    const StateSpace s = space("rep_s3", 4, "0");
    const Encoding e = effective_encoding(model_by_name("rep_s3"), s);
    EXPECT_FALSE(e.product);
    EXPECT_EQ(e.product_dim, s.dim());
  }
}

TEST(Encoding, EmbedThenRestrictIsIdentity) {
  for (const auto& [model, bc] : std::vector<std::pair<std::string, std::string>>{
           {"ising", "m"}, {"kw", "1"}, {"xxz", "r"}, {"rep_z2", "2"}, {"rep_z3", "1"}}) {
    const StateSpace s = space(model, 4, bc);
    const Encoding e = effective_encoding(model_by_name(model), s);
    const Mat m = Mat::Random(s.dim(), s.dim());
    EXPECT_LT(max_abs(e.restrict(e.embed(m)) - m), 1e-15) << model;
  }
}
