#pragma once

#include <map>
#include <string>
#include <vector>

#include "tubeduality/chain.hpp"
#include "tubeduality/sectors.hpp"
#include "tubeduality/tube.hpp"

namespace tubeduality {

using Couplings = std::map<std::string, double>;

// A built-in lattice model: a module category of a group family together with
// the kinematic constraint on the D strands and the bond term.
struct ModelSpec {
  std::string name;
  std::string bundle;  // built-in bundle holding the symbol data
  const GroupFamily* family = nullptr;
  int module_set = 0;
  std::vector<int> allowed_y;
  DualKind dual = DualKind::Group;  // how simples of D*_M are named
  Couplings defaults;
  std::string description;
};

// ising, kw (Z2 family); xxz (alias vect), rep_z2, rep_z3, rep_s3 (S3 family).
const std::vector<ModelSpec>& model_registry();
const ModelSpec& model_by_name(const std::string& name);  // throws std::invalid_argument

// Names of the simples of D*_M in index order.
std::vector<std::string> boundary_names(const ModelSpec& model);
// "m", "2", "s+s2" (direct sum) or a numeric index.  Throws std::invalid_argument.
std::vector<BoundaryComponent> parse_boundary(const ModelSpec& model, const std::string& label);
std::string boundary_label(const ModelSpec& model, const std::vector<BoundaryComponent>& boundary);
int simple_of(const ModelSpec& model, const std::string& name);  // -1 when unknown

ChainConfig make_config(const ModelSpec& model, int length, const std::vector<BoundaryComponent>& boundary);

// Merge user couplings over the defaults; unknown keys throw std::invalid_argument.
Couplings resolve_couplings(const ModelSpec& model, const Couplings& user);
// "J2=1,J1=0.5"
Couplings parse_couplings(const std::string& text);

// Bond term acting on two neighbouring D strands.  Z2 models:
// -J (b_m + g Z), S3 models: J2 b_2 - J1 b_1.
PairTerm bond_term(const ModelSpec& model, const Couplings& couplings);

SparseOperator build_local_operator(const StateSpace& space, const PairTerm& term, int site);
SparseOperator build_boundary_operator(const StateSpace& space, const PairTerm& term);

struct AssembledModel {
  const ModelSpec* spec = nullptr;
  Couplings couplings;
  StateSpace space;
  SparseOperator hamiltonian;
};

AssembledModel assemble(const ModelSpec& model, int length, const std::vector<BoundaryComponent>& boundary,
                        const Couplings& couplings = {});
AssembledModel assemble(const std::string& model, int length, const std::string& boundary,
                        const Couplings& couplings = {});

// Closed MPO of a simple X of D*_M threaded through every boundary component:
// sum over fusion channels A o X -> F of the boundary-preserving tubes.
SparseOperator symmetry_mpo(const StateSpace& space, int functor);

// Site-local description of the basis for models with a spin form.
struct SiteEncoding {
  std::string coordinate;  // e.g. "1", "3/2"
  int dim = 2;
  std::vector<std::string> labels;  // categorical label of each local state
};

struct Encoding {
  bool product = false;              // false: identity encoding
  std::vector<SiteEncoding> sites;
  std::vector<std::vector<int>> configs;  // per basis state, local indices
  std::vector<long> product_index;        // basis state -> tensor-product index
  long product_dim = 0;

  // Embed an operator on the chain space into the tensor-product space.
  Mat embed(const Mat& op) const;
  // Restrict a tensor-product operator to the chain space.
  Mat restrict(const Mat& op) const;
};

Encoding effective_encoding(const ModelSpec& model, const StateSpace& space);

// Closed-form spin Hamiltonians on the encoded tensor-product space.  Paulis
// are unnormalized.  Throws std::invalid_argument for models without a spin form.
Mat closed_form_hamiltonian(const ModelSpec& model, const Couplings& couplings, const Encoding& enc,
                            const std::string& boundary);

}  // namespace tubeduality
