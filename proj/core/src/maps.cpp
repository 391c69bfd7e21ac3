#include "opsys/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "opsys/sampling.hpp"

namespace opsys {

std::string_view to_string(MapKind kind) noexcept {
  switch (kind) {
    case MapKind::QuarterTranspose: return "quarter-transpose";
    case MapKind::PairSwap: return "pair-swap";
    case MapKind::PairSwapComplex: return "pair-swap-complex";
    case MapKind::CornerTranspose: return "corner-transpose";
    case MapKind::BlockwiseTranspose: return "blockwise-transpose";
    case MapKind::UpperLeftTranspose: return "upper-left-transpose";
  }
  return "unknown";
}

Field MapId::field() const noexcept {
  return (kind == MapKind::PairSwap || kind == MapKind::UpperLeftTranspose) ? Field::Real
                                                                            : Field::Complex;
}

std::optional<SystemId> MapId::domain() const {
  switch (kind) {
    case MapKind::QuarterTranspose: return SystemId{SystemKind::ScalarDiagonal, n};
    case MapKind::PairSwap: return SystemId{SystemKind::SymmetricPair, n};
    case MapKind::PairSwapComplex: return SystemId{SystemKind::SymmetricPairComplex, n};
    case MapKind::CornerTranspose: return SystemId{SystemKind::FreeCorner, n};
    case MapKind::BlockwiseTranspose:
    case MapKind::UpperLeftTranspose: return std::nullopt;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void domain_violation(const MapId& m, const std::string& why) {
  throw Error(ErrorKind::DomainViolation, std::string(to_string(m.kind)) + ": " + why);
}

SystemElement apply_in_domain(const MapId& m, const SystemElement& e) {
  const SystemId& s = e.system();
  switch (m.kind) {
    case MapKind::QuarterTranspose: {
      const auto& p = e.as<ScalarDiagonalParams>();
      return SystemElement(s, ScalarDiagonalParams{p.a, p.d, 0.25 * p.top_right.transpose(),
                                                   0.25 * p.bottom_left.transpose()});
    }
    case MapKind::PairSwap:
    case MapKind::PairSwapComplex: {
      const auto& p = e.as<SymmetricPairParams>();
      return SystemElement(s, SymmetricPairParams{p.a, p.b, p.off_diagonal.transpose()});
    }
    case MapKind::CornerTranspose: {
      const auto& p = e.as<FreeCornerParams>();
      return SystemElement(s, FreeCornerParams{p.corner.transpose(), p.b, p.c, p.d});
    }
    case MapKind::BlockwiseTranspose:
    case MapKind::UpperLeftTranspose: break;
  }
  domain_violation(m, "not a system map");
}

Matrix upper_left_transpose(const Matrix& x) {
  const auto k = static_cast<Eigen::Index>(x.dim() / 2);
  DenseMatrix values = x.values();
  values.topLeftCorner(k, k) = x.values().topLeftCorner(k, k).transpose().eval();
  return Matrix(std::move(values), x.field());
}

double max_imag(const Matrix& m) {
  return m.dim() == 0 ? 0.0 : m.values().imag().cwiseAbs().maxCoeff();
}

}  // namespace

Matrix blockwise_transpose(const Matrix& x, std::size_t block_size) {
  if (block_size == 0 || x.dim() % block_size != 0) {
    throw Error(ErrorKind::DimensionMismatch, "blockwise_transpose: block size does not divide dimension");
  }
  const auto k = static_cast<Eigen::Index>(block_size);
  const auto blocks = static_cast<Eigen::Index>(x.dim() / block_size);
  DenseMatrix values(x.values().rows(), x.values().cols());
  for (Eigen::Index r = 0; r < blocks; ++r)
    for (Eigen::Index c = 0; c < blocks; ++c)
      values.block(r * k, c * k, k, k) = x.values().block(r * k, c * k, k, k).transpose();
  return Matrix(std::move(values), x.field());
}

SystemElement apply(const MapId& m, const SystemElement& e) {
  const auto domain = m.domain();
  if (domain && e.system() == *domain) return apply_in_domain(m, e);
  if (e.system().n != m.n) domain_violation(m, "element has the wrong block size");
  return extract(e.system(), apply(m, embed(e)));
}

Matrix apply(const MapId& m, const Matrix& x) {
  if (x.dim() != m.ambient_dim()) {
    domain_violation(m, "expected a " + std::to_string(m.ambient_dim()) + "x" +
                            std::to_string(m.ambient_dim()) + " matrix");
  }
  if (const auto domain = m.domain()) {
    if (!contains(*domain, x)) domain_violation(m, "matrix is outside the operator system");
    return embed(apply_in_domain(m, extract(*domain, x)));
  }
  if (m.kind == MapKind::BlockwiseTranspose) return blockwise_transpose(x, m.n);
  // UpperLeftTranspose acts on real matrices only.
  if (max_imag(x) > kMembershipTolerance) domain_violation(m, "complex input to a real map");
  return upper_left_transpose(Matrix::real(x.values().real()));
}

Matrix extension_candidate(const MapId& m, const Matrix& x) {
  if (x.dim() != m.ambient_dim()) domain_violation(m, "extension_candidate: wrong size");
  switch (m.kind) {
    case MapKind::BlockwiseTranspose:
    case MapKind::UpperLeftTranspose:
      return apply(m, x);
    case MapKind::PairSwap:
    case MapKind::PairSwapComplex:
    case MapKind::CornerTranspose:
      return blockwise_transpose(x, m.n);
    case MapKind::QuarterTranspose: {
      const Blocks b = split_blocks(x.with_field(Field::Complex));
      const double inv_n = 1.0 / static_cast<double>(m.n);
      const Matrix id = Matrix::identity(m.n);
      return block2x2((b.top_left.values().trace() * inv_n) * id, 0.25 * b.top_right.transpose(),
                      0.25 * b.bottom_left.transpose(),
                      (b.bottom_right.values().trace() * inv_n) * id);
    }
  }
  domain_violation(m, "no extension candidate");
}

namespace {

Matrix random_domain_matrix(const MapId& m, std::uint64_t seed) {
  if (const auto domain = m.domain()) return embed(random_element(*domain, seed));
  Sampler sampler(seed);
  return sampler.gaussian(m.ambient_dim(), m.field(),
                          1.0 / std::sqrt(static_cast<double>(m.ambient_dim())));
}

Scalar random_coefficient(const MapId& m, Sampler& sampler) {
  return sampler.scalar(m.field(), 1.0);
}

}  // namespace

StructuralReport check_structural(const MapId& m, std::size_t trials, std::uint64_t seed,
                                  double tol) {
  StructuralReport report;
  report.trials = trials;
  const Matrix id = Matrix::identity(m.ambient_dim(), m.field());
  report.unital_residual = max_abs_diff(apply(m, id), id);

  std::vector<Matrix> samples{id};
  for (std::size_t t = 0; t < trials; ++t) samples.push_back(random_domain_matrix(m, derive_seed(seed, t)));

  const bool real = m.field() == Field::Real;
  for (std::size_t t = 0; t < samples.size(); ++t) {
    const Matrix& x = samples[t];
    const Matrix image = apply(m, x);
    report.involution_residual =
        std::max(report.involution_residual, max_abs_diff(apply(m, image), x));
    const Matrix star = real ? x.transpose() : x.adjoint();
    const Matrix image_star = real ? image.transpose() : image.adjoint();
    report.self_adjoint_residual =
        std::max(report.self_adjoint_residual, max_abs_diff(apply(m, star), image_star));

    const Matrix& y = samples[(t + 1) % samples.size()];
    Sampler coefficients(derive_seed(seed ^ 0x5bd1e995ULL, t));
    const Scalar alpha = random_coefficient(m, coefficients);
    const Scalar beta = random_coefficient(m, coefficients);
    const Matrix combined = apply(m, alpha * x + beta * y);
    const Matrix separate = alpha * image + beta * apply(m, y);
    report.linear_residual = std::max(report.linear_residual, max_abs_diff(combined, separate));
  }
  report.unital = report.unital_residual <= tol;
  report.involution = report.involution_residual <= tol;
  report.self_adjoint = report.self_adjoint_residual <= tol;
  report.linear = report.linear_residual <= tol;
  return report;
}

namespace {

/// [[a I, B], [B*, d I]] with a, d >= 0 and ||B|| <= sqrt(ad).
Matrix positive_scalar_diagonal(std::size_t n, Sampler& sampler) {
  double a = sampler.uniform(0.0, 1.0);
  double d = sampler.uniform(0.0, 1.0);
  if (sampler.coin(0.1)) (sampler.coin(0.5) ? a : d) = 0.0;
  const Matrix direction = sampler.gaussian(n, Field::Complex);
  const double fraction = sampler.uniform(0.0, 1.0);
  const double dir_norm = operator_norm(direction);
  Matrix b = Matrix::zero(n);
  if (a * d > 0.0 && dir_norm > 0.0) b = (fraction * std::sqrt(a * d) / dir_norm) * direction;
  return embed(make_scalar_diagonal(n, a, d, b, b.adjoint()));
}

}  // namespace

Matrix positive_input(const MapId& m, std::uint64_t seed, std::size_t index) {
  const std::size_t dim = m.ambient_dim();
  if (m.kind == MapKind::BlockwiseTranspose && m.n >= 2 && index == 0) {
    DenseMatrix v = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), 1);
    v(0, 0) = 1.0;
    v(static_cast<Eigen::Index>(m.n) + 1, 0) = 1.0;
    return Matrix(v * v.adjoint(), Field::Complex);
  }
  Sampler sampler(derive_seed(seed, index));
  switch (m.kind) {
    case MapKind::QuarterTranspose:
      return positive_scalar_diagonal(m.n, sampler);
    case MapKind::PairSwap:
    case MapKind::PairSwapComplex:
    case MapKind::CornerTranspose:
      return embed(random_positive_element(*m.domain(), derive_seed(seed, index)));
    case MapKind::BlockwiseTranspose:
    case MapKind::UpperLeftTranspose:
      return index % 2 == 0 ? sampler.rank_one_psd(dim, m.field()) : sampler.wishart(dim, m.field());
  }
  domain_violation(m, "no positive sampler");
}

PositivityReport check_positivity_preserving(const MapId& m, std::size_t trials,
                                             std::uint64_t seed, double tol) {
  constexpr std::size_t kKeptWitnesses = 16;
  PositivityReport report;
  report.trials = trials;
  report.min_output_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix input = positive_input(m, seed, t);
    const PsdCheck check = is_psd(apply(m, input), tol);
    report.min_output_eigenvalue = std::min(report.min_output_eigenvalue, check.min_eigenvalue);
    if (!check.psd) {
      ++report.violation_count;
      if (report.violations.size() < kKeptWitnesses) report.violations.push_back(input);
    }
  }
  if (trials == 0) report.min_output_eigenvalue = 0.0;
  return report;
}

}  // namespace opsys
