#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tubeduality/operator.hpp"

namespace tubeduality {

struct Eigensystem {
  std::vector<double> values;  // ascending
  Mat vectors;                 // columns; largest component of each is real positive
  double residual = 0.0;       // max ||H v - lambda v||
};

// Dense Hermitian solve; throws std::invalid_argument for non-Hermitian
// input (tolerance kDerivedTol).
Eigensystem eigensolve(const Mat& h, bool with_vectors = true);
Eigensystem eigensolve(const SparseOperator& h, bool with_vectors = true);
std::vector<double> eigenvalues(const Mat& h);

struct SpectrumComparison {
  bool match = false;
  double max_gap = 0.0;
  std::size_t size_a = 0, size_b = 0;
};

// Pairs sorted lists entry by entry.
SpectrumComparison compare_spectra(std::vector<double> a, std::vector<double> b, double tol = 1e-9);

// (level, degeneracy) with levels closer than tol merged.
std::vector<std::pair<double, int>> degeneracies(const std::vector<double>& sorted, double tol = 1e-8);

}  // namespace tubeduality
