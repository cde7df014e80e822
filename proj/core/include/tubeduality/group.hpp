#pragma once

#include <string>
#include <vector>

#include "tubeduality/linalg.hpp"

namespace tubeduality {

// Irreducible representation of a subgroup K of a finite group G.  Matrices are
// indexed by G elements; entries for elements outside K are empty.
struct Irrep {
  std::string name;
  int dim = 0;
  std::vector<Mat> mats;

  const Mat& operator()(int g) const { return mats[g]; }
};

struct ConjugacyClass {
  std::vector<int> elements;     // c_1, c_2, ... ; c_1 is the representative
  std::vector<int> transversal;  // q_{c_i} with q^{-1} c_i q = c_1, q_{c_1} = identity
  std::vector<int> centralizer;  // sorted element list of the centralizer of c_1
  std::string name;
};

class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::vector<std::string> element_names,
              std::vector<std::vector<int>> table);

  const std::string& name() const { return name_; }
  int order() const { return int(names_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int element_order(int a) const;
  int find(const std::string& element) const;
  const std::string& element_name(int a) const { return names_[a]; }
  std::vector<int> all_elements() const;

  bool is_subgroup(const std::vector<int>& elements) const;
  std::vector<int> centralizer(int a) const;

  // Classes sorted by the smallest element index they contain.
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  void set_transversal(int class_index, std::vector<int> transversal);

  // Irreps of the whole group (registered for S3, generated for cyclic groups).
  const std::vector<Irrep>& irreps() const { return irreps_; }
  void set_irreps(std::vector<Irrep> irreps) { irreps_ = std::move(irreps); }

  // Irreps of a subgroup: the registered list when K = G, characters of a
  // generator when K is cyclic.
  std::vector<Irrep> subgroup_irreps(const std::vector<int>& subgroup) const;

 private:
  void build_classes();

  std::string name_;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::vector<ConjugacyClass> classes_;
  std::vector<Irrep> irreps_;
};

FiniteGroup cyclic_group(int n);
// Elements ordered {1, r, rs, rs^2, s, s^2} with r^2 = s^3 = 1, r s r = s^2.
FiniteGroup s3_group();

// Multiplicities of G irreps in Ind_K^G(irrep), by Frobenius reciprocity.
std::vector<int> induce_decompose(const FiniteGroup& g, const std::vector<int>& subgroup,
                                  const Irrep& irrep);

}  // namespace tubeduality
