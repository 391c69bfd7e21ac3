#include "opsys/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "opsys/sampling.hpp"

namespace opsys {

std::string_view to_string(SystemKind kind) noexcept {
  switch (kind) {
    case SystemKind::ScalarDiagonal: return "scalar-diagonal";
    case SystemKind::SymmetricPair: return "symmetric-pair";
    case SystemKind::SymmetricPairComplex: return "symmetric-pair-complex";
    case SystemKind::FreeCorner: return "free-corner";
    case SystemKind::FreeCornerReal: return "free-corner-real";
  }
  return "unknown";
}

namespace {

bool is_pair_kind(SystemKind kind) {
  return kind == SystemKind::SymmetricPair || kind == SystemKind::SymmetricPairComplex;
}

bool is_corner_kind(SystemKind kind) {
  return kind == SystemKind::FreeCorner || kind == SystemKind::FreeCornerReal;
}

Matrix normalize_block(const Matrix& m, std::size_t n, Field field, const char* name) {
  if (m.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has size " +
                                                  std::to_string(m.dim()) + ", expected " +
                                                  std::to_string(n));
  }
  return m.with_field(field);
}

void require_real_scalar(Scalar s, const char* name) {
  if (s.imag() != 0.0) {
    throw Error(ErrorKind::FieldMismatch, std::string(name) + " must be real in a real system");
  }
}

bool is_scalar_block(const DenseMatrix& block, double tol) {
  const Scalar s = block(0, 0);
  const auto n = block.rows();
  return (block - s * DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

double max_imag(const Matrix& m) {
  return m.dim() == 0 ? 0.0 : m.values().imag().cwiseAbs().maxCoeff();
}

double min_eigenvalue_of_hermitian_part(const Matrix& m) {
  return hermitian_eigenvalues(m.hermitian_part(), 1.0).front();
}

}  // namespace

SystemElement::SystemElement(SystemId system, SystemParams params)
    : system_(system), params_(std::move(params)) {
  const SystemKind kind = system_.kind;
  const Field field = system_.field();
  if (system_.n == 0) throw Error(ErrorKind::DimensionMismatch, "SystemElement: n must be >= 1");
  const bool shape_ok =
      (kind == SystemKind::ScalarDiagonal && std::holds_alternative<ScalarDiagonalParams>(params_)) ||
      (is_pair_kind(kind) && std::holds_alternative<SymmetricPairParams>(params_)) ||
      (is_corner_kind(kind) && std::holds_alternative<FreeCornerParams>(params_));
  if (!shape_ok) {
    throw Error(ErrorKind::PreconditionViolated,
                "SystemElement: parameters do not match system " + std::string(to_string(kind)));
  }
  const std::size_t n = system_.n;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ScalarDiagonalParams>) {
          p.top_right = normalize_block(p.top_right, n, field, "B");
          p.bottom_left = normalize_block(p.bottom_left, n, field, "C");
        } else if constexpr (std::is_same_v<T, SymmetricPairParams>) {
          if (field == Field::Real) {
            require_real_scalar(p.a, "a");
            require_real_scalar(p.b, "b");
          }
          p.off_diagonal = normalize_block(p.off_diagonal, n, field, "C");
        } else {
          if (field == Field::Real) {
            require_real_scalar(p.b, "b");
            require_real_scalar(p.c, "c");
            require_real_scalar(p.d, "d");
          }
          p.corner = normalize_block(p.corner, n, field, "A");
        }
      },
      params_);
}

SystemElement make_scalar_diagonal(std::size_t n, Scalar a, Scalar d, Matrix top_right,
                                   Matrix bottom_left) {
  return SystemElement(SystemId{SystemKind::ScalarDiagonal, n},
                       ScalarDiagonalParams{a, d, std::move(top_right), std::move(bottom_left)});
}

SystemElement make_symmetric_pair(SystemKind kind, Scalar a, Scalar b, Matrix off_diagonal) {
  const std::size_t n = off_diagonal.dim();
  return SystemElement(SystemId{kind, n}, SymmetricPairParams{a, b, std::move(off_diagonal)});
}

SystemElement make_free_corner(SystemKind kind, Matrix corner, Scalar b, Scalar c, Scalar d) {
  const std::size_t n = corner.dim();
  return SystemElement(SystemId{kind, n}, FreeCornerParams{std::move(corner), b, c, d});
}

Matrix embed(const SystemElement& e) {
  const std::size_t n = e.system().n;
  const Field field = e.system().field();
  const Matrix id = Matrix::identity(n, field);
  return std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ScalarDiagonalParams>) {
          return block2x2(p.a * id, p.top_right, p.bottom_left, p.d * id);
        } else if constexpr (std::is_same_v<T, SymmetricPairParams>) {
          return block2x2((p.a * id).with_field(field), p.off_diagonal,
                          p.off_diagonal.transpose(), (p.b * id).with_field(field));
        } else {
          return block2x2(p.corner, (p.b * id).with_field(field), (p.c * id).with_field(field),
                          (p.d * id).with_field(field));
        }
      },
      e.params());
}

bool contains(const SystemId& s, const Matrix& m, double tol) {
  if (m.dim() != s.ambient_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "contains: expected " +
                                                  std::to_string(s.ambient_dim()) + "x" +
                                                  std::to_string(s.ambient_dim()) + " matrix");
  }
  if (s.field() == Field::Real && max_imag(m) > tol) return false;
  const auto k = static_cast<Eigen::Index>(s.n);
  const auto& v = m.values();
  switch (s.kind) {
    case SystemKind::ScalarDiagonal:
      return is_scalar_block(v.topLeftCorner(k, k), tol) &&
             is_scalar_block(v.bottomRightCorner(k, k), tol);
    case SystemKind::SymmetricPair:
    case SystemKind::SymmetricPairComplex:
      return is_scalar_block(v.topLeftCorner(k, k), tol) &&
             is_scalar_block(v.bottomRightCorner(k, k), tol) &&
             (v.bottomLeftCorner(k, k) - v.topRightCorner(k, k).transpose())
                     .cwiseAbs()
                     .maxCoeff() <= tol;
    case SystemKind::FreeCorner:
    case SystemKind::FreeCornerReal:
      return is_scalar_block(v.topRightCorner(k, k), tol) &&
             is_scalar_block(v.bottomLeftCorner(k, k), tol) &&
             is_scalar_block(v.bottomRightCorner(k, k), tol);
  }
  return false;
}

SystemElement extract(const SystemId& s, const Matrix& m, double tol) {
  if (!contains(s, m, tol)) {
    throw Error(ErrorKind::DomainViolation,
                "extract: matrix is not in system " + std::string(to_string(s.kind)));
  }
  const bool real = s.field() == Field::Real;
  const Matrix carrier = real ? Matrix::real(m.values().real()) : m.with_field(Field::Complex);
  const Blocks blocks = split_blocks(carrier);
  switch (s.kind) {
    case SystemKind::ScalarDiagonal:
      return SystemElement(s, ScalarDiagonalParams{blocks.top_left(0, 0), blocks.bottom_right(0, 0),
                                                   blocks.top_right, blocks.bottom_left});
    case SystemKind::SymmetricPair:
    case SystemKind::SymmetricPairComplex:
      return SystemElement(
          s, SymmetricPairParams{blocks.top_left(0, 0), blocks.bottom_right(0, 0), blocks.top_right});
    case SystemKind::FreeCorner:
    case SystemKind::FreeCornerReal:
      return SystemElement(s, FreeCornerParams{blocks.top_left, blocks.top_right(0, 0),
                                               blocks.bottom_left(0, 0), blocks.bottom_right(0, 0)});
  }
  throw Error(ErrorKind::UnsupportedSystem, "extract: unknown system");
}

bool is_positive_by_criterion(const SystemElement& e, double tol) {
  const SystemKind kind = e.system().kind;
  if (kind == SystemKind::ScalarDiagonal) {
    throw Error(ErrorKind::UnsupportedSystem,
                "is_positive_by_criterion: no closed form for scalar-diagonal; use is_psd(embed(e))");
  }
  if (is_pair_kind(kind)) {
    const auto& p = e.as<SymmetricPairParams>();
    // Self-adjoint iff a, b real and C^t = C*, i.e. C real.
    if (std::abs(p.a.imag()) > tol || std::abs(p.b.imag()) > tol || max_imag(p.off_diagonal) > tol) {
      return false;
    }
    const double a = p.a.real();
    const double b = p.b.real();
    if (a < -tol || b < -tol) return false;
    const double c_norm = operator_norm(p.off_diagonal);
    const double ab = std::max(a, 0.0) * std::max(b, 0.0);
    if (ab <= tol * tol) return c_norm <= tol;
    return c_norm <= std::sqrt(ab) + tol;
  }

  const auto& p = e.as<FreeCornerParams>();
  if (asymmetry(p.corner) > tol || std::abs(p.c - std::conj(p.b)) > tol ||
      std::abs(p.d.imag()) > tol) {
    return false;
  }
  const double d = p.d.real();
  if (d < -tol) return false;
  const double corner_min = min_eigenvalue_of_hermitian_part(p.corner);
  if (corner_min < -tol) return false;
  if (d <= tol) return std::abs(p.b) <= tol;
  // d A >= |b|^2 I  <=>  d * lambda_min(A) >= |b|^2
  return d * corner_min - std::norm(p.b) >= -tol;
}

double positivity_margin(const SystemElement& e) {
  const SystemKind kind = e.system().kind;
  if (kind == SystemKind::ScalarDiagonal) {
    throw Error(ErrorKind::UnsupportedSystem, "positivity_margin: scalar-diagonal");
  }
  if (is_pair_kind(kind)) {
    const auto& p = e.as<SymmetricPairParams>();
    const double defect =
        std::max({std::abs(p.a.imag()), std::abs(p.b.imag()), max_imag(p.off_diagonal)});
    if (defect > 0.0) return defect;
    const double a = p.a.real();
    const double b = p.b.real();
    const double ab = std::max(a, 0.0) * std::max(b, 0.0);
    return std::min({std::abs(a), std::abs(b),
                     std::abs(operator_norm(p.off_diagonal) - std::sqrt(ab))});
  }
  const auto& p = e.as<FreeCornerParams>();
  const double defect = std::max(
      {asymmetry(p.corner), std::abs(p.c - std::conj(p.b)), std::abs(p.d.imag())});
  if (defect > 0.0) return defect;
  const double d = p.d.real();
  const double corner_min = min_eigenvalue_of_hermitian_part(p.corner);
  return std::min({std::abs(d), std::abs(corner_min), std::abs(d * corner_min - std::norm(p.b))});
}


SystemElement random_element(const SystemId& s, std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorKind::PreconditionViolated, "random_element: scale <= 0");
  Sampler sampler(seed);
  const Field field = s.field();
  const double sd = scale / std::sqrt(static_cast<double>(s.n));
  switch (s.kind) {
    case SystemKind::ScalarDiagonal: {
      const Scalar a = sampler.scalar(field, scale);
      const Scalar d = sampler.scalar(field, scale);
      Matrix b = sampler.gaussian(s.n, field, sd);
      Matrix c = sampler.gaussian(s.n, field, sd);
      return SystemElement(s, ScalarDiagonalParams{a, d, std::move(b), std::move(c)});
    }
    case SystemKind::SymmetricPair:
    case SystemKind::SymmetricPairComplex: {
      const Scalar a = sampler.scalar(field, scale);
      const Scalar b = sampler.scalar(field, scale);
      return SystemElement(s, SymmetricPairParams{a, b, sampler.gaussian(s.n, field, sd)});
    }
    case SystemKind::FreeCorner:
    case SystemKind::FreeCornerReal: {
      Matrix corner = sampler.gaussian(s.n, field, sd);
      const Scalar b = sampler.scalar(field, scale);
      const Scalar c = sampler.scalar(field, scale);
      const Scalar d = sampler.scalar(field, scale);
      return SystemElement(s, FreeCornerParams{std::move(corner), b, c, d});
    }
  }
  throw Error(ErrorKind::UnsupportedSystem, "random_element: unknown system");
}

SystemElement make_positive_pair(SystemKind kind, double a, double b, const Matrix& direction,
                                 double fraction) {
  if (!is_pair_kind(kind)) {
    throw Error(ErrorKind::UnsupportedSystem, "make_positive_pair: not a symmetric-pair system");
  }
  if (a < 0.0 || b < 0.0 || fraction < 0.0 || fraction > 1.0) {
    throw Error(ErrorKind::PreconditionViolated, "make_positive_pair: need a, b >= 0, fraction in [0,1]");
  }
  const Matrix dir = direction.with_field(Field::Real);
  const std::size_t n = dir.dim();
  const double dir_norm = operator_norm(dir);
  Matrix c = Matrix::zero(n, Field::Real);
  if (a * b > 0.0 && dir_norm > 0.0) c = (fraction * std::sqrt(a * b) / dir_norm) * dir;
  return SystemElement(SystemId{kind, n}, SymmetricPairParams{a, b, std::move(c)});
}

SystemElement random_positive_element(const SystemId& s, std::uint64_t seed) {
  if (s.kind == SystemKind::ScalarDiagonal) {
    throw Error(ErrorKind::UnsupportedSystem, "random_positive_element: scalar-diagonal");
  }
  constexpr double kVerifyTol = 1e-9;
  constexpr int kMaxShrink = 64;
  Sampler sampler(seed);
  const std::size_t n = s.n;

  if (is_pair_kind(s.kind)) {
    // Positives of the complex span are the real positives, so both kinds draw real data.
    double a = sampler.uniform(0.0, 1.0);
    double b = sampler.uniform(0.0, 1.0);
    if (sampler.coin(0.1)) (sampler.coin(0.5) ? a : b) = 0.0;
    const Matrix direction = sampler.gaussian(n, Field::Real, 1.0);
    double fraction = sampler.uniform(0.0, 1.0);
    for (int attempt = 0; attempt < kMaxShrink; ++attempt) {
      SystemElement e = make_positive_pair(s.kind, a, b, direction, fraction);
      if (is_psd(embed(e), kVerifyTol).psd) return e;
      fraction *= 0.5;
    }
    return make_positive_pair(s.kind, a, b, direction, 0.0);
  }

  const Field field = s.field();
  const Matrix g = sampler.gaussian(n, field, 1.0);
  const double shift = sampler.uniform(0.0, 1.0);
  const Matrix corner =
      ((1.0 / static_cast<double>(n)) * (g * g.adjoint()) + shift * Matrix::identity(n, field))
          .hermitian_part();
  double d = sampler.uniform(0.0, 1.0);
  if (sampler.coin(0.1)) d = 0.0;
  const double corner_min = std::max(0.0, hermitian_eigenvalues(corner).front());
  double fraction = sampler.uniform(0.0, 1.0);
  Scalar phase = 1.0;
  if (field == Field::Real) {
    phase = sampler.coin(0.5) ? 1.0 : -1.0;
  } else {
    phase = std::polar(1.0, sampler.uniform(0.0, 2.0 * std::numbers::pi));
  }
  for (int attempt = 0; attempt <= kMaxShrink; ++attempt) {
    const Scalar b = (attempt == kMaxShrink ? 0.0 : fraction * std::sqrt(d * corner_min)) * phase;
    SystemElement e(s, FreeCornerParams{corner, b, std::conj(b), d});
    if (is_psd(embed(e), kVerifyTol).psd || attempt == kMaxShrink) return e;
    fraction *= 0.5;
  }
  throw Error(ErrorKind::PreconditionViolated, "random_positive_element: unreachable");
}

std::vector<SystemElement> parameter_basis(const SystemId& s) {
  const std::size_t n = s.n;
  const Field field = s.field();
  std::vector<Scalar> units{1.0};
  if (field == Field::Complex) units.emplace_back(0.0, 1.0);
  const Matrix zero = Matrix::zero(n, field);

  std::vector<Matrix> block_units;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (const Scalar u : units) block_units.push_back((u * matrix_unit(n, i, j)).with_field(field));

  std::vector<SystemElement> basis;
  switch (s.kind) {
    case SystemKind::ScalarDiagonal:
      for (const Scalar u : units) basis.emplace_back(s, ScalarDiagonalParams{u, 0.0, zero, zero});
      for (const Scalar u : units) basis.emplace_back(s, ScalarDiagonalParams{0.0, u, zero, zero});
      for (const auto& e : block_units) basis.emplace_back(s, ScalarDiagonalParams{0.0, 0.0, e, zero});
      for (const auto& e : block_units) basis.emplace_back(s, ScalarDiagonalParams{0.0, 0.0, zero, e});
      break;
    case SystemKind::SymmetricPair:
    case SystemKind::SymmetricPairComplex:
      for (const Scalar u : units) basis.emplace_back(s, SymmetricPairParams{u, 0.0, zero});
      for (const Scalar u : units) basis.emplace_back(s, SymmetricPairParams{0.0, u, zero});
      for (const auto& e : block_units) basis.emplace_back(s, SymmetricPairParams{0.0, 0.0, e});
      break;
    case SystemKind::FreeCorner:
    case SystemKind::FreeCornerReal:
      for (const auto& e : block_units) basis.emplace_back(s, FreeCornerParams{e, 0.0, 0.0, 0.0});
      for (const Scalar u : units) basis.emplace_back(s, FreeCornerParams{zero, u, 0.0, 0.0});
      for (const Scalar u : units) basis.emplace_back(s, FreeCornerParams{zero, 0.0, u, 0.0});
      for (const Scalar u : units) basis.emplace_back(s, FreeCornerParams{zero, 0.0, 0.0, u});
      break;
  }
  return basis;
}

}  // namespace opsys
