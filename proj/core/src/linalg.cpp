#include "tubeduality/linalg.hpp"

#include <cmath>

namespace tubeduality {

std::vector<Mat> gram_schmidt(const std::vector<Mat>& candidates, double tol) {
  std::vector<Mat> out;
  for (const Mat& c : candidates) {
    Mat v = c;
    // two passes keep the basis orthogonal to machine precision
    for (int pass = 0; pass < 2; ++pass)
      for (const Mat& u : out) v -= hs_inner(u, v) * u;
    double n = std::sqrt(std::abs(hs_inner(v, v)));
    if (n < tol) continue;
    v /= n;
    out.push_back(std::move(v));
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

cplx clean(cplx z, double tol) {
  double re = std::abs(z.real()) < tol ? 0.0 : z.real();
  double im = std::abs(z.imag()) < tol ? 0.0 : z.imag();
  return {re, im};
}

void clean_inplace(Mat& m, double tol) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = clean(m.data()[i], tol);
}

}  // namespace tubeduality
