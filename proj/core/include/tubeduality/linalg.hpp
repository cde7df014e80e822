#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace tubeduality {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kTableTol = 1e-12;
inline constexpr double kDerivedTol = 1e-10;
inline constexpr double kZeroTol = 1e-13;

// Normalized Hilbert-Schmidt pairing <a,b> = Tr(a^dagger b) / cols.
inline cplx hs_inner(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace() / double(a.cols());
}

inline double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Orthonormalize `candidates` in the normalized Hilbert-Schmidt pairing,
// dropping linearly dependent ones. Order of the input is preserved.
std::vector<Mat> gram_schmidt(const std::vector<Mat>& candidates, double tol = 1e-9);

// Kronecker product of dense matrices.
Mat kron(const Mat& a, const Mat& b);

// Round tiny real/imaginary parts to exact zero so printed tables are stable.
cplx clean(cplx z, double tol = kZeroTol);
void clean_inplace(Mat& m, double tol = kZeroTol);

}  // namespace tubeduality
