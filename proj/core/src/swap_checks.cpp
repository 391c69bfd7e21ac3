#include <algorithm>
#include <cmath>

#include "opsys/maps.hpp"
#include "opsys/sampling.hpp"

namespace opsys {

namespace {

struct SwapPair {
  Matrix a;
  Scalar b, c, d;
  Matrix m;  // [[A, bI], [cI, dI]]
  Matrix n;  // [[A, cI], [bI, dI]]
};

SwapPair random_swap_pair(std::size_t n, std::uint64_t seed) {
  Sampler sampler(seed);
  Matrix a = sampler.gaussian(n, Field::Complex);
  const Scalar b = sampler.scalar(Field::Complex, 1.0);
  const Scalar c = sampler.scalar(Field::Complex, 1.0);
  const Scalar d = sampler.scalar(Field::Complex, 1.0);
  Matrix m = embed(make_free_corner(SystemKind::FreeCorner, a, b, c, d));
  Matrix swapped = embed(make_free_corner(SystemKind::FreeCorner, a, c, b, d));
  return SwapPair{std::move(a), b, c, d, std::move(m), std::move(swapped)};
}

}  // namespace

double swap_bc_singular_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SwapPair pair = random_swap_pair(n, derive_seed(seed, t));
    const auto lhs = singular_values(pair.m);
    const auto rhs = singular_values(pair.n);
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
  }
  return worst;
}

double swap_bc_charpoly_check(std::size_t n, std::size_t trials, std::uint64_t seed,
                              std::size_t lambdas) {
  double worst = 0.0;
  const std::size_t dim = 2 * n;
  for (std::size_t t = 0; t < trials; ++t) {
    const SwapPair pair = random_swap_pair(n, derive_seed(seed, t));
    const double scale = std::pow(operator_norm(pair.m), 2);
    const Matrix mm = pair.m.adjoint() * pair.m;
    const Matrix nn = pair.n.adjoint() * pair.n;
    Sampler sampler(derive_seed(seed ^ 0x2545f4914f6cdd1dULL, t));
    for (std::size_t k = 0; k < lambdas; ++k) {
      const double re = sampler.uniform(0.0, scale);
      const double im = sampler.uniform(0.1, 1.0) * scale * (sampler.coin(0.5) ? 1.0 : -1.0);
      const Scalar lambda(re, im);
      const Matrix shift = lambda * Matrix::identity(dim);
      const Scalar direct_m = determinant(mm - shift);
      const Scalar direct_n = determinant(nn - shift);
      const Scalar reduced_m = char_poly_block_eval(pair.a, pair.b, pair.c, pair.d, lambda);
      const Scalar reduced_n = char_poly_block_eval(pair.a, pair.c, pair.b, pair.d, lambda);
      const double denom = std::abs(direct_m);
      const double dev = std::max({std::abs(direct_m - direct_n), std::abs(reduced_m - direct_n),
                                   std::abs(reduced_n - direct_m)});
      worst = std::max(worst, dev / denom);
    }
  }
  return worst;
}

double transpose_cb_witness(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "transpose_cb_witness: n must be >= 1");
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix swap = DenseMatrix::Zero(k * k, k * k);
  // Block (i, j) of W is E_ji.
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) swap(i * k + j, j * k + i) = 1.0;
  const Matrix w(std::move(swap), Field::Real);
  return operator_norm(0.25 * blockwise_transpose(w, n));
}

}  // namespace opsys
