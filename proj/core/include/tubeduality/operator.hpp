#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "tubeduality/linalg.hpp"

namespace tubeduality {

using Triplet = Eigen::Triplet<cplx>;
using SparseMat = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Complex sparse matrix between two state spaces, kept as a triplet list in
// insertion order so serialized output is reproducible.
struct SparseOperator {
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> triplets;

  SparseOperator() = default;
  SparseOperator(int r, int c) : rows(r), cols(c) {}

  void add(int r, int c, cplx v) { triplets.emplace_back(r, c, v); }
  // Sum duplicates, drop |v| < tol, order row-major.
  SparseOperator normalized(double tol = 1e-14) const;
  SparseMat sparse() const;
  Mat dense() const;
  bool empty() const { return triplets.empty(); }

  static SparseOperator from_dense(const Mat& m, double tol = 1e-14);
  static SparseOperator identity(int n);
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(cplx s, const SparseOperator& a);
SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
SparseOperator adjoint(const SparseOperator& a);

}  // namespace tubeduality
