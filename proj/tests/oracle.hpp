#pragma once

// Brute-force references built from Pauli strings and group tables, kept
// independent of the library's category data.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli(char which) {
  Mat m = Mat::Zero(2, 2);
  switch (which) {
    case 'x': m(0, 1) = m(1, 0) = 1.0; break;
    case 'y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case 'z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m = Mat::Identity(2, 2);
  }
  return m;
}

// Operator on n qubits, site 0 is the most significant bit.
inline Mat on_sites(int n, const std::vector<std::pair<int, Mat>>& ops) {
  const long dim = 1L << n;
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    // apply each factor to the basis state |col>, tracking a superposition
    std::vector<std::pair<long, cplx>> amp{{col, 1.0}};
    for (const auto& [site, m] : ops) {
      const int shift = n - 1 - site;
      std::vector<std::pair<long, cplx>> next;
      for (auto [s, a] : amp) {
        const int bit = int((s >> shift) & 1);
        for (int r = 0; r < 2; ++r) {
          if (m(r, bit) == 0.0) continue;
          next.emplace_back((s & ~(1L << shift)) | (long(r) << shift), a * m(r, bit));
        }
      }
      amp = std::move(next);
    }
    for (auto [s, a] : amp) out(s, col) += a;
  }
  return out;
}

// -J sum (X_i + g Z_i Z_{i+1}); the wrapping bond flips sign when twisted.
inline Mat ising(int L, double J, double g, bool twisted) {
  const Mat X = pauli('x'), Z = pauli('z');
  Mat h = Mat::Zero(1L << L, 1L << L);
  for (int i = 0; i < L; ++i) {
    h -= J * on_sites(L, {{i, X}});
    const double s = (i + 1 == L && twisted) ? -1.0 : 1.0;
    h -= J * g * s * on_sites(L, {{i, Z}, {(i + 1) % L, Z}});
  }
  return h;
}

// -J sum (X_j X_{j+1} + g Z_j) with a sign twist on the wrapping bond.
inline Mat kramers_wannier(int L, double J, double g, bool twisted) {
  const Mat X = pauli('x'), Z = pauli('z');
  Mat h = Mat::Zero(1L << L, 1L << L);
  for (int j = 0; j < L; ++j) {
    const double s = (j + 1 == L && twisted) ? -1.0 : 1.0;
    h -= J * s * on_sites(L, {{j, X}, {(j + 1) % L, X}});
    h -= J * g * on_sites(L, {{j, Z}});
  }
  return h;
}

// Periodic J2 (S+S- + S-S+) + J1 ZZ with S+- = (X +- iY)/2.
inline Mat xxz(int L, double J2, double J1) {
  const Mat X = pauli('x'), Y = pauli('y'), Z = pauli('z');
  Mat h = Mat::Zero(1L << L, 1L << L);
  for (int j = 0; j < L; ++j) {
    const int k = (j + 1) % L;
    h += J2 * 0.5 * (on_sites(L, {{j, X}, {k, X}}) + on_sites(L, {{j, Y}, {k, Y}}));
    h += J1 * on_sites(L, {{j, Z}, {k, Z}});
  }
  return h;
}

// Periodic Rep(Z2) chain: sum J2/2 (Z_{i-1} Z_{i+1} + Z_{i-1} X_i Z_{i+1}) - J1 X_i.
inline Mat rep_z2(int L, double J2, double J1) {
  const Mat X = pauli('x'), Z = pauli('z');
  Mat h = Mat::Zero(1L << L, 1L << L);
  for (int i = 0; i < L; ++i) {
    const int l = (i + L - 1) % L, r = (i + 1) % L;
    h += J2 * 0.5 * (on_sites(L, {{l, Z}, {r, Z}}) + on_sites(L, {{l, Z}, {i, X}, {r, Z}}));
    h -= J1 * on_sites(L, {{i, X}});
  }
  return h;
}

inline std::vector<double> spectrum(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

inline double max_gap(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return g;
}

// Spectrum of h restricted to the +1 (even) or -1 eigenspace of an involution p.
inline std::vector<double> charge_spectrum(const Mat& h, const Mat& p, int charge) {
  const long n = h.rows();
  const Mat proj = 0.5 * (Mat::Identity(n, n) + (charge == 0 ? 1.0 : -1.0) * p);
  Eigen::SelfAdjointEigenSolver<Mat> ps(proj);
  std::vector<int> cols;
  for (long c = 0; c < n; ++c)
    if (ps.eigenvalues()(c) > 0.5) cols.push_back(int(c));
  Mat v(n, long(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) v.col(long(c)) = ps.eigenvectors().col(cols[c]);
  return spectrum(v.adjoint() * h * v);
}

// Number of closed strings of length L over q symbols with distinct neighbours.
inline long cyclic_distinct_strings(int L, int q) {
  long count = 0;
  std::vector<int> s(L, 0);
  long total = 1;
  for (int i = 0; i < L; ++i) total *= q;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < L; ++i) {
      s[i] = int(c % q);
      c /= q;
    }
    bool ok = true;
    for (int i = 0; i < L && ok; ++i) ok = s[i] != s[(i + 1) % L];
    count += ok;
  }
  return count;
}

// S3 as permutations of {0,1,2}, in the element order {1, r, rs, rs^2, s, s^2}
// with r = (0 1) and s = (0 1 2).
struct Perm {
  std::array<int, 3> p;
  Perm operator*(const Perm& o) const { return {{p[o.p[0]], p[o.p[1]], p[o.p[2]]}}; }
  bool operator==(const Perm&) const = default;
};

inline std::vector<Perm> s3_elements() {
  const Perm e{{0, 1, 2}}, r{{1, 0, 2}}, s{{1, 2, 0}};
  return {e, r, r * s, r * s * s, s, s * s};
}

inline int s3_index(const Perm& x) {
  const auto el = s3_elements();
  return int(std::find(el.begin(), el.end(), x) - el.begin());
}

// Characters of the trivial, sign and standard irreps of S3 per element.
inline std::vector<std::array<double, 3>> s3_characters() {
  std::vector<std::array<double, 3>> out;
  for (const auto& x : s3_elements()) {
    int fixed = 0;
    for (int i = 0; i < 3; ++i) fixed += x.p[i] == i;
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) inversions += x.p[i] > x.p[j];
    const double sign = inversions % 2 ? -1.0 : 1.0;
    out.push_back({1.0, sign, double(fixed - 1)});
  }
  return out;
}

// Multiplicities of S3 irreps in the induced representation of a character of
// a subgroup, by the induced-character formula.
inline std::array<int, 3> s3_induce(const std::vector<int>& subgroup, const std::vector<cplx>& chi) {
  const auto el = s3_elements();
  const auto chars = s3_characters();
  std::array<int, 3> out{};
  for (int irrep = 0; irrep < 3; ++irrep) {
    cplx acc = 0.0;
    for (int g = 0; g < 6; ++g) {
      // Ind chi (g) = 1/|H| sum_{x} chi(x^-1 g x) over x with x^-1 g x in H
      cplx ind = 0.0;
      for (int x = 0; x < 6; ++x) {
        Perm xi{};
        for (int i = 0; i < 3; ++i) xi.p[el[x].p[i]] = i;
        const int conj = s3_index(xi * el[g] * el[x]);
        auto it = std::find(subgroup.begin(), subgroup.end(), conj);
        if (it != subgroup.end()) ind += chi[it - subgroup.begin()];
      }
      ind /= double(subgroup.size());
      acc += ind * chars[g][irrep];
    }
    out[irrep] = int(std::lround(acc.real() / 6.0));
  }
  return out;
}

}  // namespace oracle
