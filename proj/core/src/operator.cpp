#include "tubeduality/operator.hpp"

#include <stdexcept>

namespace tubeduality {

SparseMat SparseOperator::sparse() const {
  SparseMat m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Mat SparseOperator::dense() const {
  Mat m = Mat::Zero(rows, cols);
  for (const auto& t : triplets) m(t.row(), t.col()) += t.value();
  return m;
}

SparseOperator SparseOperator::from_dense(const Mat& m, double tol) {
  SparseOperator op(int(m.rows()), int(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > tol) op.add(int(r), int(c), m(r, c));
  return op;
}

SparseOperator SparseOperator::normalized(double tol) const {
  SparseMat m = sparse();
  SparseOperator op(rows, cols);
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMat::InnerIterator it(m, r); it; ++it)
      if (std::abs(it.value()) > tol) op.add(int(it.row()), int(it.col()), it.value());
  return op;
}

SparseOperator SparseOperator::identity(int n) {
  SparseOperator op(n, n);
  for (int i = 0; i < n; ++i) op.add(i, i, 1.0);
  return op;
}

namespace {
SparseOperator from_sparse(const SparseMat& m) {
  SparseOperator op(int(m.rows()), int(m.cols()));
  for (int r = 0; r < m.outerSize(); ++r)
    for (SparseMat::InnerIterator it(m, r); it; ++it) op.add(int(it.row()), int(it.col()), it.value());
  return op;
}
}  // namespace

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("operator shape mismatch");
  SparseOperator op(a.rows, a.cols);
  op.triplets = a.triplets;
  op.triplets.insert(op.triplets.end(), b.triplets.begin(), b.triplets.end());
  return op.normalized(0.0);
}

SparseOperator operator*(cplx s, const SparseOperator& a) {
  SparseOperator op(a.rows, a.cols);
  for (const auto& t : a.triplets) op.add(t.row(), t.col(), s * t.value());
  return op;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols != b.rows) throw std::invalid_argument("operator shape mismatch");
  SparseMat p = (a.sparse() * b.sparse()).pruned();
  return from_sparse(p);
}

SparseOperator adjoint(const SparseOperator& a) {
  SparseOperator op(a.cols, a.rows);
  for (const auto& t : a.triplets) op.add(t.col(), t.row(), std::conj(t.value()));
  return op.normalized(0.0);
}

}  // namespace tubeduality
