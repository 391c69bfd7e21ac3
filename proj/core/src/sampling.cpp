#include "opsys/sampling.hpp"

#include <cmath>

namespace opsys {

Scalar Sampler::scalar(Field field, double scale) {
  const double re = uniform(-scale, scale);
  if (field == Field::Real) return {re, 0.0};
  return {re, uniform(-scale, scale)};
}

DenseVector Sampler::gaussian_vector(std::size_t n, Field field, double sd) {
  const auto k = static_cast<Eigen::Index>(n);
  DenseVector out(k);
  if (field == Field::Real) {
    std::normal_distribution<double> normal(0.0, sd);
    for (Eigen::Index i = 0; i < k; ++i) out(i) = normal(rng_);
  } else {
    std::normal_distribution<double> normal(0.0, sd / std::sqrt(2.0));
    for (Eigen::Index i = 0; i < k; ++i) {
      const double re = normal(rng_);
      out(i) = Scalar(re, normal(rng_));
    }
  }
  return out;
}

Matrix Sampler::gaussian(std::size_t n, Field field, double sd) {
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix values(k, k);
  for (Eigen::Index i = 0; i < k; ++i) values.row(i) = gaussian_vector(n, field, sd).transpose();
  return Matrix(std::move(values), field);
}

DenseVector Sampler::unit_vector(std::size_t n, Field field) {
  DenseVector v = gaussian_vector(n, field);
  while (v.norm() == 0.0) v = gaussian_vector(n, field);
  return v / v.norm();
}

Matrix Sampler::rank_one_psd(std::size_t n, Field field) {
  const DenseVector v = unit_vector(n, field);
  return Matrix(v * v.adjoint(), Field::Complex).with_field(field).hermitian_part();
}

Matrix Sampler::wishart(std::size_t n, Field field) {
  const Matrix g = gaussian(n, field);
  return ((1.0 / static_cast<double>(n)) * (g * g.adjoint())).hermitian_part();
}

}  // namespace opsys
