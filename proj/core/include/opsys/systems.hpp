#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "opsys/matrix.hpp"

namespace opsys {

/**
 * The five block-structured operator systems inside M_2(M_n).
 *
 *   ScalarDiagonal        [[a I, B], [C, d I]]          complex, B and C free
 *   SymmetricPair         [[a I, C], [C^t, b I]]        real
 *   SymmetricPairComplex  [[a I, C], [C^t, b I]]        complex span of SymmetricPair
 *   FreeCorner            [[A, b I], [c I, d I]]        complex, A free
 *   FreeCornerReal        [[A, b I], [c I, d I]]        real
 */
enum class SystemKind { ScalarDiagonal, SymmetricPair, SymmetricPairComplex, FreeCorner, FreeCornerReal };

std::string_view to_string(SystemKind kind) noexcept;

/// The field each system lives over.
constexpr Field native_field(SystemKind kind) noexcept {
  return (kind == SystemKind::SymmetricPair || kind == SystemKind::FreeCornerReal) ? Field::Real
                                                                                   : Field::Complex;
}

struct SystemId {
  SystemKind kind = SystemKind::ScalarDiagonal;
  std::size_t n = 1;

  Field field() const noexcept { return native_field(kind); }
  std::size_t ambient_dim() const noexcept { return 2 * n; }
  friend bool operator==(const SystemId&, const SystemId&) = default;
};

/// ScalarDiagonal: [[a I, B], [C, d I]].
struct ScalarDiagonalParams {
  Scalar a;
  Scalar d;
  Matrix top_right;
  Matrix bottom_left;
  friend bool operator==(const ScalarDiagonalParams&, const ScalarDiagonalParams&) = default;
};

/// SymmetricPair(Complex): [[a I, C], [C^t, b I]].
struct SymmetricPairParams {
  Scalar a;
  Scalar b;
  Matrix off_diagonal;
  friend bool operator==(const SymmetricPairParams&, const SymmetricPairParams&) = default;
};

/// FreeCorner(Real): [[A, b I], [c I, d I]].
struct FreeCornerParams {
  Matrix corner;
  Scalar b;
  Scalar c;
  Scalar d;
  friend bool operator==(const FreeCornerParams&, const FreeCornerParams&) = default;
};

using SystemParams = std::variant<ScalarDiagonalParams, SymmetricPairParams, FreeCornerParams>;

/// A parameterized element of one of the systems. Construction validates the
/// parameter shape, block sizes and (for real systems) that every parameter is real.
class SystemElement {
 public:
  SystemElement(SystemId system, SystemParams params);

  const SystemId& system() const noexcept { return system_; }
  const SystemParams& params() const noexcept { return params_; }

  template <typename T>
  const T& as() const {
    return std::get<T>(params_);
  }

  friend bool operator==(const SystemElement&, const SystemElement&) = default;

 private:
  SystemId system_;
  SystemParams params_;
};

SystemElement make_scalar_diagonal(std::size_t n, Scalar a, Scalar d, Matrix top_right,
                                   Matrix bottom_left);
SystemElement make_symmetric_pair(SystemKind kind, Scalar a, Scalar b, Matrix off_diagonal);
SystemElement make_free_corner(SystemKind kind, Matrix corner, Scalar b, Scalar c, Scalar d);

/// The 2n x 2n block matrix of the element, over the system's field.
Matrix embed(const SystemElement& e);

/// Default structural tolerance for membership tests.
inline constexpr double kMembershipTolerance = 1e-10;

/// True iff m matches the block pattern of s entrywise within tol (and is real
/// for the real systems). DimensionMismatch unless m is 2n x 2n.
bool contains(const SystemId& s, const Matrix& m, double tol = kMembershipTolerance);

/// Reads the parameters back off a member matrix (scalars are taken from the
/// first diagonal entry of each scalar block, so extract(embed(e)) == e exactly).
/// DomainViolation if !contains(s, m, tol).
SystemElement extract(const SystemId& s, const Matrix& m, double tol = kMembershipTolerance);

/**
 * Closed-form positivity of the embedded matrix.
 *
 * SymmetricPair(Complex): a >= 0, b >= 0, ||C|| <= sqrt(ab). The complex system
 * must first be self-adjoint, i.e. a, b real and C real.
 * FreeCorner(Real): A >= 0, c = conj(b), d >= 0 and d A >= |b|^2 I.
 * UnsupportedSystem for ScalarDiagonal.
 */
bool is_positive_by_criterion(const SystemElement& e, double tol = 1e-9);

/// Distance of e from the decision boundary of is_positive_by_criterion:
/// the self-adjointness defect when it is clearly nonzero, otherwise the
/// smallest of the slacks in the criterion's inequalities.
double positivity_margin(const SystemElement& e);

/// Uniform scalars in [-scale, scale] (both parts for complex), block entries
/// i.i.d. with standard deviation scale / sqrt(n). Deterministic in the seed.
SystemElement random_element(const SystemId& s, std::uint64_t seed, double scale = 1.0);

/// A PSD element drawn by inverting the closed-form criterion; every draw is
/// confirmed with is_psd(tol = 1e-9). UnsupportedSystem for ScalarDiagonal.
SystemElement random_positive_element(const SystemId& s, std::uint64_t seed);

/// [[a I, C], [C^t, b I]] with C = fraction * sqrt(ab) * direction / ||direction||.
/// a = 0 or b = 0 forces C = 0. Requires a, b >= 0, fraction in [0, 1], direction real.
SystemElement make_positive_pair(SystemKind kind, double a, double b, const Matrix& direction,
                                 double fraction);

/// A basis of the system as a real vector space: one element per real
/// parameter direction (real and imaginary parts separately for complex systems).
std::vector<SystemElement> parameter_basis(const SystemId& s);

}  // namespace opsys
