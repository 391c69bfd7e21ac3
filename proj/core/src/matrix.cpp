#include "opsys/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace opsys {

namespace {

void require_square(const DenseMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": expected a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(where) + ": " +
                                                  std::to_string(a.dim()) + " vs " +
                                                  std::to_string(b.dim()));
  }
}

bool has_zero_imaginary_part(const DenseMatrix& m) {
  return (m.imag().array() == 0.0).all();
}

}  // namespace

const char* to_string(Field field) noexcept {
  return field == Field::Real ? "real" : "complex";
}

Matrix::Matrix(DenseMatrix values, Field field) : values_(std::move(values)), field_(field) {
  require_square(values_, "Matrix");
  if (field_ == Field::Real) {
    if (!has_zero_imaginary_part(values_)) {
      throw Error(ErrorKind::FieldMismatch, "Matrix: real matrix with nonzero imaginary part");
    }
    values_.imag().setZero();
  }
}

Matrix::Matrix(DenseMatrix values, Field field, Unchecked)
    : values_(std::move(values)), field_(field) {
  if (field_ == Field::Real) values_.imag().setZero();
}

Matrix Matrix::zero(std::size_t n, Field field) {
  const auto k = static_cast<Eigen::Index>(n);
  return Matrix(DenseMatrix::Zero(k, k), field, Unchecked{});
}

Matrix Matrix::identity(std::size_t n, Field field) {
  const auto k = static_cast<Eigen::Index>(n);
  return Matrix(DenseMatrix::Identity(k, k), field, Unchecked{});
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows,
                         Field field) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  DenseMatrix values(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "Matrix::from_rows: ragged or non-square rows");
    }
    Eigen::Index j = 0;
    for (const auto& value : row) values(i, j++) = value;
    ++i;
  }
  return Matrix(std::move(values), field);
}

Matrix Matrix::real(const Eigen::MatrixXd& values) {
  require_square(values.cast<Scalar>(), "Matrix::real");
  return Matrix(values.cast<Scalar>(), Field::Real, Unchecked{});
}

Matrix Matrix::adjoint() const { return Matrix(values_.adjoint(), field_, Unchecked{}); }

Matrix Matrix::transpose() const { return Matrix(values_.transpose(), field_, Unchecked{}); }

Matrix Matrix::conjugate() const { return Matrix(values_.conjugate(), field_, Unchecked{}); }

Matrix Matrix::hermitian_part() const {
  return Matrix(0.5 * (values_ + values_.adjoint()), field_, Unchecked{});
}

Matrix Matrix::with_field(Field field) const {
  if (field == field_) return *this;
  return Matrix(values_, field);
}

double Matrix::max_abs() const {
  if (values_.size() == 0) return 0.0;
  return values_.cwiseAbs().maxCoeff();
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  values_ += rhs.values_;
  field_ = join(field_, rhs.field_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  values_ -= rhs.values_;
  field_ = join(field_, rhs.field_);
  return *this;
}

Matrix operator-(const Matrix& m) { return Matrix(-m.values_, m.field_, Matrix::Unchecked{}); }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  return Matrix(lhs.values_ * rhs.values_, join(lhs.field_, rhs.field_), Matrix::Unchecked{});
}

Matrix operator*(Scalar s, const Matrix& m) {
  const Field field = (s.imag() == 0.0) ? m.field_ : Field::Complex;
  return Matrix(s * m.values_, field, Matrix::Unchecked{});
}

Matrix operator*(double s, const Matrix& m) {
  return Matrix(s * m.values_, m.field_, Matrix::Unchecked{});
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  return lhs.field_ == rhs.field_ && lhs.values_.rows() == rhs.values_.rows() &&
         lhs.values_ == rhs.values_;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  if (a.dim() == 0) return 0.0;
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

double asymmetry(const Matrix& m) {
  if (m.dim() == 0) return 0.0;
  return (m.values() - m.values().adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol) {
  const double defect = asymmetry(m);
  if (defect > tol) {
    throw Error(ErrorKind::NotHermitian,
                "hermitian_eigenvalues: ||M - M*||_max = " + std::to_string(defect));
  }
  if (m.dim() == 0) return {};
  const DenseMatrix h = 0.5 * (m.values() + m.values().adjoint());
  Eigen::VectorXd evs;
  if (m.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real(), Eigen::EigenvaluesOnly);
    evs = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h, Eigen::EigenvaluesOnly);
    evs = solver.eigenvalues();
  }
  // Eigen returns them ascending already.
  return {evs.data(), evs.data() + evs.size()};
}

std::vector<double> singular_values(const Matrix& m) {
  if (m.dim() == 0) return {};
  Eigen::VectorXd svs;
  if (m.is_real()) {
    svs = Eigen::BDCSVD<Eigen::MatrixXd>(m.values().real()).singularValues();
  } else {
    svs = Eigen::BDCSVD<DenseMatrix>(m.values()).singularValues();
  }
  std::vector<double> out(svs.data(), svs.data() + svs.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double operator_norm(const Matrix& m) {
  const auto svs = singular_values(m);
  return svs.empty() ? 0.0 : svs.front();
}

PsdCheck is_psd(const Matrix& m, double tol) {
  PsdCheck out;
  out.asymmetry = asymmetry(m);
  out.hermitian = out.asymmetry <= tol;
  const auto evs = hermitian_eigenvalues(m.hermitian_part(), tol);
  out.min_eigenvalue = evs.empty() ? 0.0 : evs.front();
  out.psd = out.hermitian && out.min_eigenvalue >= -tol;
  return out;
}

Matrix matrix_unit(std::size_t n, std::size_t i, std::size_t j, Field field) {
  if (i < 1 || j < 1 || i > n || j > n) {
    throw Error(ErrorKind::IndexOutOfRange, "matrix_unit: (" + std::to_string(i) + "," +
                                                std::to_string(j) + ") outside 1.." +
                                                std::to_string(n));
  }
  Matrix e = Matrix::zero(n, field);
  DenseMatrix values = e.values();
  values(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = 1.0;
  return Matrix(std::move(values), field);
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const std::size_t n = a.dim();
  if (b.dim() != n || c.dim() != n || d.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "block2x2: blocks of different sizes");
  }
  const Field field = a.field();
  if (b.field() != field || c.field() != field || d.field() != field) {
    throw Error(ErrorKind::FieldMismatch, "block2x2: blocks over different fields");
  }
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix values(2 * k, 2 * k);
  values.topLeftCorner(k, k) = a.values();
  values.topRightCorner(k, k) = b.values();
  values.bottomLeftCorner(k, k) = c.values();
  values.bottomRightCorner(k, k) = d.values();
  return Matrix(std::move(values), field);
}

Blocks split_blocks(const Matrix& m) {
  if (m.dim() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "split_blocks: odd dimension " + std::to_string(m.dim()));
  }
  const auto k = static_cast<Eigen::Index>(m.dim() / 2);
  const auto& v = m.values();
  return Blocks{Matrix(v.topLeftCorner(k, k), m.field()),
                Matrix(v.topRightCorner(k, k), m.field()),
                Matrix(v.bottomLeftCorner(k, k), m.field()),
                Matrix(v.bottomRightCorner(k, k), m.field())};
}

Scalar determinant(const Matrix& m) {
  if (m.dim() == 0) return 1.0;
  return Eigen::PartialPivLU<DenseMatrix>(m.values()).determinant();
}

Scalar char_poly_block_eval(const Matrix& a, Scalar b, Scalar c, Scalar d, Scalar lambda) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  if (n == 0) {
    throw Error(ErrorKind::DimensionMismatch, "char_poly_block_eval: empty block");
  }
  const DenseMatrix& A = a.values();
  const double b2 = std::norm(b);
  const double c2 = std::norm(c);
  const double d2 = std::norm(d);
  const Scalar bc = b * c;
  const Scalar scalar_part = std::norm(bc) - (b2 + c2 + d2) * lambda + lambda * lambda;

  DenseMatrix reduced = (d2 - lambda) * (A.adjoint() * A);
  reduced -= std::conj(bc) * d * A;
  reduced -= bc * std::conj(d) * A.adjoint();
  reduced.diagonal().array() += scalar_part;
  return Eigen::PartialPivLU<DenseMatrix>(reduced).determinant();
}

Isometry::Isometry(DenseMatrix v) : v_(std::move(v)) {
  const auto k = v_.cols();
  if (k > v_.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "Isometry: more columns than rows");
  }
  const double defect = k == 0 ? 0.0
                               : (v_.adjoint() * v_ - DenseMatrix::Identity(k, k))
                                     .cwiseAbs()
                                     .maxCoeff();
  if (defect > 1e-12) {
    throw Error(ErrorKind::PreconditionViolated,
                "Isometry: ||V*V - I||_max = " + std::to_string(defect));
  }
}

Matrix Isometry::projection() const {
  return Matrix(v_.conjugate() * v_.transpose(), Field::Complex);
}

Compression compress_to_span(const Matrix& r, const std::array<DenseVector, 4>& vectors) {
  const Blocks blocks = split_blocks(r);
  const std::size_t n = blocks.top_left.dim();
  for (const auto& x : vectors) {
    if (static_cast<std::size_t>(x.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "compress_to_span: vector length != n");
    }
  }
  const Scalar a = blocks.top_left(0, 0);
  const Scalar d = blocks.bottom_right(0, 0);
  const Matrix id = Matrix::identity(n, r.field());
  if (max_abs_diff(blocks.top_left, a * id) > 1e-10 ||
      max_abs_diff(blocks.bottom_right, d * id) > 1e-10) {
    throw Error(ErrorKind::PreconditionViolated,
                "compress_to_span: diagonal blocks are not scalar multiples of I");
  }

  // Modified Gram-Schmidt with column drop.
  constexpr double kDropTolerance = 1e-10;
  std::vector<DenseVector> basis;
  for (const auto& x : vectors) {
    DenseVector residual = x;
    for (const auto& q : basis) residual -= q.dot(residual) * q;
    // Second pass restores orthogonality lost to cancellation.
    for (const auto& q : basis) residual -= q.dot(residual) * q;
    const double norm = residual.norm();
    if (norm < kDropTolerance) continue;
    basis.push_back(residual / norm);
  }
  if (basis.empty()) {
    throw Error(ErrorKind::ZeroSpan, "compress_to_span: all vectors are numerically zero");
  }

  const auto k = static_cast<Eigen::Index>(basis.size());
  DenseMatrix v(static_cast<Eigen::Index>(n), k);
  for (Eigen::Index col = 0; col < k; ++col) v.col(col) = basis[static_cast<std::size_t>(col)];
  Isometry isometry(v);

  const DenseMatrix vt = v.transpose();
  const DenseMatrix vbar = v.conjugate();
  const Matrix top_right(vt * blocks.top_right.values() * vbar, Field::Complex);
  const Matrix bottom_left(vt * blocks.bottom_left.values() * vbar, Field::Complex);
  const auto kk = static_cast<std::size_t>(k);
  const Matrix ik = Matrix::identity(kk, Field::Complex);
  Matrix compressed = block2x2(a * ik, top_right, bottom_left, d * ik);
  return Compression{std::move(compressed), std::move(isometry)};
}

}  // namespace opsys
