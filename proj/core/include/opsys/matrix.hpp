#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "opsys/error.hpp"

namespace opsys {

enum class Field { Real, Complex };

using Scalar = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// The wider of two fields (Complex absorbs Real).
constexpr Field join(Field a, Field b) noexcept {
  return (a == Field::Complex || b == Field::Complex) ? Field::Complex : Field::Real;
}

const char* to_string(Field field) noexcept;

/**
 * Dense square matrix over R or C.
 *
 * Storage is always complex. A Real-tagged matrix has every imaginary part
 * exactly zero; the constructor rejects anything else and arithmetic on real
 * operands keeps the imaginary parts at +0.
 */
class Matrix {
 public:
  Matrix() = default;
  Matrix(DenseMatrix values, Field field);

  static Matrix zero(std::size_t n, Field field = Field::Complex);
  static Matrix identity(std::size_t n, Field field = Field::Complex);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows,
                          Field field = Field::Complex);
  /// Real part of `values` tagged Real, for sampling code that builds real data.
  static Matrix real(const Eigen::MatrixXd& values);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  Field field() const noexcept { return field_; }
  bool is_real() const noexcept { return field_ == Field::Real; }
  const DenseMatrix& values() const noexcept { return values_; }

  Scalar operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  /// (M + M*) / 2.
  Matrix hermitian_part() const;
  /// Retags the matrix. Complex -> Real requires every imaginary part to be 0.
  Matrix with_field(Field field) const;

  /// Largest |entry|.
  double max_abs() const;
  double trace_real() const { return values_.trace().real(); }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator-(const Matrix& m);
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend Matrix operator*(Scalar s, const Matrix& m);
  friend Matrix operator*(double s, const Matrix& m);

  /// Exact entrywise equality, field tag included.
  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  struct Unchecked {};
  Matrix(DenseMatrix values, Field field, Unchecked);

  DenseMatrix values_;
  Field field_ = Field::Complex;
};

/// max_ij |a_ij - b_ij|; DimensionMismatch if the sizes differ.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// ||M - M*||_max.
double asymmetry(const Matrix& m);

/// Eigenvalues of the Hermitian matrix M, ascending, with multiplicity.
/// Throws NotHermitian when ||M - M*||_max > tol.
std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol = 1e-9);

/// Singular values, descending.
std::vector<double> singular_values(const Matrix& m);

/// Spectral norm; identical to singular_values(m).front().
double operator_norm(const Matrix& m);

struct PsdCheck {
  bool psd = false;
  /// Smallest eigenvalue of (M + M*) / 2.
  double min_eigenvalue = 0.0;
  /// ||M - M*||_max, reported separately from positivity.
  double asymmetry = 0.0;
  bool hermitian = false;
};

PsdCheck is_psd(const Matrix& m, double tol = 1e-7);

/// Matrix unit E_ij (1-based indices, matching the usual E_ij notation).
Matrix matrix_unit(std::size_t n, std::size_t i, std::size_t j, Field field = Field::Real);

struct Blocks {
  Matrix top_left;
  Matrix top_right;
  Matrix bottom_left;
  Matrix bottom_right;
};

/// [[a, b], [c, d]]. All four blocks must share size and field.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

/// Inverse of block2x2 for even-dimensional matrices.
Blocks split_blocks(const Matrix& m);

/// Determinant by LU with partial pivoting.
Scalar determinant(const Matrix& m);

/**
 * p(lambda) = det(M*M - lambda I) for M = [[A, bI], [cI, dI]], evaluated through
 * the reduced n x n determinant
 *
 *   det( (|d|^2 - lambda) A*A - conj(b c) d A - b c conj(d) A*
 *        + (|bc|^2 - (|b|^2 + |c|^2 + |d|^2) lambda + lambda^2) I ).
 *
 * The scalar lower-right block of M*M commutes with everything, which is what
 * makes the 2n x 2n determinant collapse to this form.
 */
Scalar char_poly_block_eval(const Matrix& a, Scalar b, Scalar c, Scalar d, Scalar lambda);

/// n x k matrix with orthonormal columns.
class Isometry {
 public:
  /// Throws PreconditionViolated unless V*V = I_k within 1e-12.
  explicit Isometry(DenseMatrix v);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(v_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(v_.cols()); }
  const DenseMatrix& matrix() const noexcept { return v_; }
  /// conj(V) V^t, the projection used to compare a compression with the original.
  Matrix projection() const;

 private:
  DenseMatrix v_;
};

struct Compression {
  Matrix compressed;  // 2k x 2k
  Isometry isometry;  // n x k
};

/**
 * Compresses R = [[a I_n, B], [C, d I_n]] to the span of x1, x2, y1, y2.
 *
 * Builds V by modified Gram-Schmidt (columns whose residual norm drops below
 * 1e-10 are discarded) and returns R' = [[a I_k, V^t B conj(V)], [V^t C conj(V), d I_k]].
 * R' = W* R W with W = diag(conj(V), conj(V)) an isometry, so ||R'|| <= ||R||.
 */
Compression compress_to_span(const Matrix& r, const std::array<DenseVector, 4>& vectors);

}  // namespace opsys
