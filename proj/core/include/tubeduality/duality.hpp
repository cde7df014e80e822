#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tubeduality/decomposition.hpp"

namespace tubeduality {

// Pairs of built-in models realizing the same input category through
// different module categories.
std::vector<std::pair<std::string, std::string>> builtin_dual_pairs();

// Simples of Fun_D(M, N) for source model M and target model N, in index order.
std::vector<std::string> functor_names(const ModelSpec& source, const ModelSpec& target);

// Intertwining tubes from boundary simple `a` of the source to `b` of the
// target with the given functor (-1: any functor).
std::vector<TubeLabel> intertwiner_labels(const ModelSpec& source, const ModelSpec& target, int a, int b,
                                          int functor = -1);

// Rectangular map from the a-twisted source space to the b-twisted target
// space.  No admissible labels gives an empty (all-zero) operator.
SparseOperator intertwiner_to_operator(const StateSpace& source, const StateSpace& target, const TubeLabel& t);

struct SectorMapEntry {
  std::string source;  // sector of Z(D*_M)
  std::string target;  // sector of Z(D*_N)
  std::string source_boundary, target_boundary;
  int length = 0;  // chain length at which the overlap was found
  double overlap = 0.0;
};

struct SectorMap {
  std::string functor;
  std::vector<SectorMapEntry> entries;  // one per nonzero (source, target) pair
  std::map<std::string, std::string> mapping;
  std::vector<std::string> unresolved;  // source sectors without a partner
  bool bijective = false;
};

inline constexpr double kOverlapThreshold = 1e-8;

// Overlaps P_target T P_source of the functor's intertwining tubes between
// all boundary pairs, for L = 2 .. max_length.
SectorMap sector_map(const ModelSpec& source, const ModelSpec& target, int functor, int max_length = 4);

// The sector permutation induced on the labels of Z(D) (identical for both
// models) and its composition with a second map.
std::map<std::string, std::string> compose_maps(const std::map<std::string, std::string>& first,
                                                const std::map<std::string, std::string>& second);

// e^dagger H_M e restricted to the target sector basis; e maps the target
// space into the source space.
Mat transport_block(const Mat& source_hamiltonian, const Mat& cross_unit, const Mat& target_basis);

struct SectorMatch {
  std::string source, target;
  std::string source_boundary, target_boundary;
  int source_copy = 0, target_copy = 0;
  std::vector<double> source_spectrum, target_spectrum, transported_spectrum;
  double gap = 0.0;               // direct blocks
  double transport_gap = 0.0;     // transported block against the direct target block
  double isometry_defect = 0.0;   // ||e^dagger e - P_N|| + ||e e^dagger - P_M||
  bool match = false;
};

struct DualityReport {
  std::string source_model, target_model;
  int length = 0;
  Couplings couplings;
  std::vector<SectorMatch> matches;
  double intertwining = 0.0;  // max ||T H_M - H_N T|| over intertwining tubes
  bool ok = false;
};

// Matched sector blocks of a dual pair on L sites, found through the joint
// tube algebra of both module categories.
DualityReport verify_duality(const ModelSpec& source, const ModelSpec& target, int length,
                             const Couplings& couplings = {}, double tol = 1e-9);

}  // namespace tubeduality
