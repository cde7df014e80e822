#include "tubeduality/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace tubeduality {

Eigensystem eigensolve(const Mat& h, bool with_vectors) {
  if (h.rows() != h.cols()) throw std::invalid_argument("operator is not square");
  if (max_abs(h - h.adjoint()) > kDerivedTol) throw std::invalid_argument("operator is not Hermitian");
  Eigensystem out;
  if (h.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  if (!with_vectors) return out;
  out.vectors = es.eigenvectors();
  for (int c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index piv = 0;
    out.vectors.col(c).cwiseAbs().maxCoeff(&piv);
    const cplx z = out.vectors(piv, c);
    out.vectors.col(c) *= std::conj(z) / std::abs(z);
    const Vec r = h * out.vectors.col(c) - out.values[c] * out.vectors.col(c);
    out.residual = std::max(out.residual, r.norm());
  }
  return out;
}

Eigensystem eigensolve(const SparseOperator& h, bool with_vectors) { return eigensolve(h.dense(), with_vectors); }

std::vector<double> eigenvalues(const Mat& h) { return eigensolve(h, false).values; }

SpectrumComparison compare_spectra(std::vector<double> a, std::vector<double> b, double tol) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  SpectrumComparison out;
  out.size_a = a.size();
  out.size_b = b.size();
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    out.max_gap = std::max(out.max_gap, std::abs(a[i] - b[i]));
  out.match = a.size() == b.size() && out.max_gap <= tol;
  return out;
}

std::vector<std::pair<double, int>> degeneracies(const std::vector<double>& sorted, double tol) {
  std::vector<std::pair<double, int>> out;
  double first = 0.0;
  for (double v : sorted) {
    if (!out.empty() && v - first <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(v, 1);
      first = v;
    }
  }
  return out;
}

}  // namespace tubeduality
