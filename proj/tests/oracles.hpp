#pragma once

// Reference computations for the tests, written without Eigen so that they
// check the library instead of repeating it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "opsys/matrix.hpp"

namespace oracle {

using cplx = std::complex<double>;
using CMat = std::vector<std::vector<cplx>>;
using RMat = std::vector<std::vector<double>>;

inline CMat from(const opsys::Matrix& m) {
  CMat out(m.dim(), std::vector<cplx>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
  return out;
}

inline CMat multiply(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat out(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline CMat adjoint(const CMat& a) {
  const std::size_t n = a.size();
  CMat out(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

/// Cyclic Jacobi on a real symmetric matrix; eigenvalues ascending.
inline std::vector<double> jacobi_symmetric(RMat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i][i];
  std::sort(out.begin(), out.end());
  return out;
}

/// Eigenvalues of the Hermitian part of h, ascending. H = A + iB is handled
/// through the real symmetric [[A, -B], [B, A]], whose spectrum is H's doubled.
inline std::vector<double> hermitian_eigenvalues(const CMat& h) {
  const std::size_t n = h.size();
  RMat big(2 * n, std::vector<double>(2 * n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = 0.5 * (h[i][j] + std::conj(h[j][i]));
      big[i][j] = v.real();
      big[i + n][j + n] = v.real();
      big[i][j + n] = -v.imag();
      big[i + n][j] = v.imag();
    }
  const std::vector<double> doubled = jacobi_symmetric(big);
  std::vector<double> out;
  for (std::size_t k = 0; k < doubled.size(); k += 2) out.push_back(0.5 * (doubled[k] + doubled[k + 1]));
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const opsys::Matrix& m) { return oracle::hermitian_eigenvalues(from(m)); }

inline std::vector<double> singular_values(const opsys::Matrix& m) {
  const CMat a = from(m);
  std::vector<double> ev = oracle::hermitian_eigenvalues(multiply(adjoint(a), a));
  std::vector<double> out;
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) out.push_back(std::sqrt(std::max(0.0, *it)));
  return out;
}

inline double operator_norm(const opsys::Matrix& m) { return oracle::singular_values(m).front(); }

inline double min_eigenvalue(const opsys::Matrix& m) { return oracle::hermitian_eigenvalues(m).front(); }

/// Gaussian elimination with partial pivoting.
inline cplx determinant(CMat a) {
  const std::size_t n = a.size();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

inline cplx determinant(const opsys::Matrix& m) { return oracle::determinant(from(m)); }

}  // namespace oracle
