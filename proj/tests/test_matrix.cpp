#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "opsys/matrix.hpp"
#include "opsys/sampling.hpp"
#include "oracles.hpp"

using namespace opsys;

namespace {

const Scalar I{0.0, 1.0};

// [[I_2, C], [C^t, 0]] with C = [[1, 0], [i, 0]], and the same matrix with C and C^t swapped.
Matrix golden_m() {
  return Matrix::from_rows({{1, 0, 1, 0}, {0, 1, I, 0}, {1, I, 0, 0}, {0, 0, 0, 0}});
}
Matrix golden_n() {
  return Matrix::from_rows({{1, 0, 1, I}, {0, 1, 0, 0}, {1, 0, 0, 0}, {I, 0, 0, 0}});
}

void expect_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], tol) << "index " << k;
}

}  // namespace

TEST(Matrix, GoldenGramSpectra) {
  const Matrix m = golden_m();
  const Matrix n = golden_n();
  expect_close(hermitian_eigenvalues(m.adjoint() * m), {0, 0, 3, 3}, 1e-10);
  expect_close(hermitian_eigenvalues(n.adjoint() * n), {0, 1, 1, 4}, 1e-10);
  EXPECT_NEAR(operator_norm(m), std::numbers::sqrt3, 1e-9);
  EXPECT_NEAR(operator_norm(n), 2.0, 1e-9);
}

TEST(Matrix, EigenvaluesMatchJacobiOracle) {
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      Sampler s(derive_seed(17, n * 100 + t));
      const Matrix h = s.gaussian(n, t % 2 ? Field::Real : Field::Complex).hermitian_part();
      expect_close(hermitian_eigenvalues(h), oracle::hermitian_eigenvalues(h), 1e-10);
    }
  }
}

TEST(Matrix, SingularValuesAndDeterminantMatchOracle) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Sampler s(derive_seed(3, t));
    const Matrix a = s.gaussian(1 + t % 6, Field::Complex);
    expect_close(singular_values(a), oracle::singular_values(a), 1e-9);
    EXPECT_DOUBLE_EQ(operator_norm(a), singular_values(a).front());
    const Scalar det = determinant(a);
    const Scalar want = oracle::determinant(a);
    EXPECT_LE(std::abs(det - want), 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST(Matrix, NonHermitianInputIsRejected) {
  const Matrix a = Matrix::from_rows({{1, 1}, {0, 1}});
  try {
    hermitian_eigenvalues(a);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
  EXPECT_NO_THROW(hermitian_eigenvalues(a, 2.0));
}

TEST(Matrix, RealTagRejectsImaginaryEntries) {
  EXPECT_THROW(Matrix::from_rows({{I}}, Field::Real), Error);
  const Matrix r = Matrix::from_rows({{1, 2}, {3, 4}}, Field::Real);
  EXPECT_TRUE((r * r).is_real());
  EXPECT_FALSE((I * r).is_real());
  EXPECT_THROW(Matrix::from_rows({{I}}).with_field(Field::Real), Error);
}

TEST(Matrix, MatrixUnits) {
  const Matrix e = matrix_unit(3, 2, 3);
  EXPECT_EQ(e(1, 2), Scalar(1.0));
  EXPECT_DOUBLE_EQ(e.max_abs(), 1.0);
  EXPECT_DOUBLE_EQ((e * e).max_abs(), 0.0);
  EXPECT_EQ(matrix_unit(3, 2, 3) * matrix_unit(3, 3, 1), matrix_unit(3, 2, 1));
  EXPECT_THROW(matrix_unit(3, 0, 1), Error);
  EXPECT_THROW(matrix_unit(3, 1, 4), Error);
}

TEST(Matrix, BlockRoundTrip) {
  Sampler s(9);
  const Matrix a = s.gaussian(3, Field::Complex), b = s.gaussian(3, Field::Complex);
  const Matrix c = s.gaussian(3, Field::Complex), d = s.gaussian(3, Field::Complex);
  const Matrix m = block2x2(a, b, c, d);
  EXPECT_EQ(m.dim(), 6u);
  EXPECT_EQ(m(0, 3), b(0, 0));
  EXPECT_EQ(m(4, 1), c(1, 1));
  const Blocks parts = split_blocks(m);
  EXPECT_EQ(parts.top_left, a);
  EXPECT_EQ(parts.top_right, b);
  EXPECT_EQ(parts.bottom_left, c);
  EXPECT_EQ(parts.bottom_right, d);
  EXPECT_THROW(block2x2(a, b, c, Matrix::zero(2)), Error);
  EXPECT_THROW(split_blocks(Matrix::zero(3)), Error);
}

TEST(Matrix, PsdDecisionOnBlockwiseTransposeImage) {
  // v v* with v = e_1 + e_4 in M_4 is positive; transposing each 2x2 block of it is not.
  const Matrix p = Matrix::from_rows({{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}});
  const Matrix image = Matrix::from_rows({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  EXPECT_TRUE(is_psd(p).psd);
  const PsdCheck c = is_psd(image);
  EXPECT_FALSE(c.psd);
  EXPECT_NEAR(c.min_eigenvalue, -1.0, 1e-12);
  EXPECT_NEAR(oracle::min_eigenvalue(image), -1.0, 1e-12);
  EXPECT_TRUE(c.hermitian);
}

TEST(Matrix, PsdReportsAsymmetrySeparately) {
  const Matrix m = Matrix::from_rows({{2, 0.5}, {0, 2}});
  const PsdCheck c = is_psd(m);
  EXPECT_FALSE(c.hermitian);
  EXPECT_DOUBLE_EQ(c.asymmetry, 0.5);
  EXPECT_GT(c.min_eigenvalue, 0.0);
}

TEST(Matrix, CharPolyReducedFormMatchesDeterminant) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Sampler s(derive_seed(41, t));
    const std::size_t n = 1 + t % 4;
    const Matrix a = s.gaussian(n, Field::Complex);
    const Scalar b = s.scalar(Field::Complex, 1), c = s.scalar(Field::Complex, 1), d = s.scalar(Field::Complex, 1);
    const Matrix m = block2x2(a, b * Matrix::identity(n), c * Matrix::identity(n), d * Matrix::identity(n));
    const Scalar lambda(s.uniform(0, 2), s.uniform(0.5, 1.5));
    const Matrix shifted = m.adjoint() * m - lambda * Matrix::identity(2 * n);
    const Scalar want = oracle::determinant(shifted);
    const Scalar got = char_poly_block_eval(a, b, c, d, lambda);
    EXPECT_LE(std::abs(got - want), 1e-9 * std::max(1.0, std::abs(want))) << "trial " << t;
  }
}

TEST(Matrix, CompressionIsContractive) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Sampler s(derive_seed(5, t));
    const std::size_t n = 3 + t % 4;
    const Matrix r = block2x2(s.scalar(Field::Complex, 1) * Matrix::identity(n), s.gaussian(n, Field::Complex),
                              s.gaussian(n, Field::Complex), s.scalar(Field::Complex, 1) * Matrix::identity(n));
    const std::array<DenseVector, 4> vs = {s.gaussian_vector(n, Field::Complex), s.gaussian_vector(n, Field::Complex),
                                           s.gaussian_vector(n, Field::Complex), s.gaussian_vector(n, Field::Complex)};
    const Compression c = compress_to_span(r, vs);
    const std::size_t k = c.isometry.cols();
    EXPECT_LE(k, std::min<std::size_t>(4, n));
    EXPECT_EQ(c.compressed.dim(), 2 * k);
    EXPECT_LE(operator_norm(c.compressed), operator_norm(r) + 1e-10);
    const DenseMatrix v = c.isometry.matrix();
    EXPECT_LE((v.adjoint() * v - DenseMatrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Matrix, CompressionDropsDependentVectors) {
  const std::size_t n = 4;
  DenseVector x = DenseVector::Zero(n);
  x(0) = 1.0;
  const Matrix r = Matrix::identity(2 * n);
  const Compression c = compress_to_span(r, {x, 2.0 * x, x, -x});
  EXPECT_EQ(c.isometry.cols(), 1u);
  const std::array<DenseVector, 4> zeros = {DenseVector::Zero(n), DenseVector::Zero(n), DenseVector::Zero(n),
                                            DenseVector::Zero(n)};
  EXPECT_THROW(compress_to_span(r, zeros), Error);
}

TEST(Sampling, DeriveSeedIsStableAndSpreads) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 1));
  EXPECT_NE(derive_seed(0, 0), derive_seed(0, 1));
  Sampler a(7), b(7);
  EXPECT_EQ(a.gaussian(3, Field::Complex), b.gaussian(3, Field::Complex));
}

TEST(Sampling, PositiveSamplesArePositive) {
  Sampler s(11);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(is_psd(s.rank_one_psd(4, Field::Complex), 1e-10).psd);
    EXPECT_TRUE(is_psd(s.wishart(4, Field::Real), 1e-10).psd);
    EXPECT_NEAR(s.unit_vector(5, Field::Complex).norm(), 1.0, 1e-12);
  }
}
