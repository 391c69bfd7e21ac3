#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "opsys/matrix.hpp"
#include "opsys/systems.hpp"

namespace opsys {

/**
 * The six unital linear maps.
 *
 *   QuarterTranspose    on ScalarDiagonal:       (a, d, B, C)   -> (a, d, B^t/4, C^t/4)
 *   PairSwap            on SymmetricPair:        C -> C^t (swaps the two off-diagonal blocks)
 *   PairSwapComplex     on SymmetricPairComplex: complexification of PairSwap
 *   CornerTranspose     on FreeCorner:           A -> A^t, scalars fixed
 *   BlockwiseTranspose  on M_2n(C):              transpose each of the four blocks
 *   UpperLeftTranspose  on M_2n(R):              transpose the upper-left block only
 */
enum class MapKind {
  QuarterTranspose,
  PairSwap,
  PairSwapComplex,
  CornerTranspose,
  BlockwiseTranspose,
  UpperLeftTranspose,
};

std::string_view to_string(MapKind kind) noexcept;

inline constexpr MapKind kAllMapKinds[] = {
    MapKind::QuarterTranspose,   MapKind::PairSwap,           MapKind::PairSwapComplex,
    MapKind::CornerTranspose,    MapKind::BlockwiseTranspose, MapKind::UpperLeftTranspose,
};

struct MapId {
  MapKind kind = MapKind::QuarterTranspose;
  std::size_t n = 1;

  Field field() const noexcept;
  /// The operator system the map is defined on; empty for full-algebra maps.
  std::optional<SystemId> domain() const;
  std::size_t ambient_dim() const noexcept { return 2 * n; }
  friend bool operator==(const MapId&, const MapId&) = default;
};

/// Applies the map to an element. If e is not in the map's own domain, it is
/// embedded, mapped, and read back into e's system. DomainViolation otherwise.
SystemElement apply(const MapId& m, const SystemElement& e);

/// Applies the map to a matrix of the domain. DomainViolation if the matrix
/// is not a member (wrong size, wrong block pattern, or complex for a real map).
Matrix apply(const MapId& m, const Matrix& x);

/// Transposes each of the k x k blocks of a (kb) x (kb) matrix in place of the block.
Matrix blockwise_transpose(const Matrix& x, std::size_t block_size);

/**
 * The full-algebra formula used when an argument leaves the map's domain.
 *
 * BlockwiseTranspose and UpperLeftTranspose are already defined everywhere.
 * PairSwap, PairSwapComplex and CornerTranspose use the blockwise transpose,
 * which is the only candidate compatible with the Kadison-Schwarz forcing.
 * QuarterTranspose uses [[X, Y], [Z, W]] -> [[tr(X)/n I, Y^t/4], [Z^t/4, tr(W)/n I]],
 * which agrees with the map on its domain and is positive for n <= 4.
 */
Matrix extension_candidate(const MapId& m, const Matrix& x);

struct StructuralReport {
  bool unital = false;
  bool involution = false;
  bool self_adjoint = false;
  bool linear = false;
  double unital_residual = 0.0;
  double involution_residual = 0.0;
  double self_adjoint_residual = 0.0;
  double linear_residual = 0.0;
  std::size_t trials = 0;
};

/// Each flag is checked on I and on `trials` random domain elements.
/// self_adjoint means m(x^t) = m(x)^t for real maps and m(x*) = m(x)* for complex ones.
StructuralReport check_structural(const MapId& m, std::size_t trials, std::uint64_t seed,
                                  double tol = 1e-9);

struct PositivityReport {
  std::size_t trials = 0;
  std::size_t violation_count = 0;
  /// Inputs whose image failed is_psd, in sampling order (first 16 kept).
  std::vector<Matrix> violations;
  double min_output_eigenvalue = 0.0;
};

/// Positive inputs for m in sampling order. For BlockwiseTranspose with n >= 2
/// the first input is v v* with v = e_1 (+) e_2.
Matrix positive_input(const MapId& m, std::uint64_t seed, std::size_t index);

PositivityReport check_positivity_preserving(const MapId& m, std::size_t trials,
                                             std::uint64_t seed, double tol = 1e-7);

struct KadisonSchwarzResult {
  bool holds = false;
  double min_defect_eigenvalue = 0.0;
  /// m(X^2) - m(X)^2, with m(X^2) from extension_candidate when X^2 leaves the domain.
  Matrix defect;
  bool used_candidate = false;
};

/// PreconditionViolated if x is not self-adjoint within tol; DomainViolation if x
/// is outside the map's domain.
KadisonSchwarzResult check_kadison_schwarz(const MapId& m, const Matrix& x, double tol = 1e-9);

/**
 * Residuals of the closed forms behind the Kadison-Schwarz forcing argument for
 * the self-adjoint element X = [[A, conj(c) I], [c I, d I]] (A Hermitian, d real):
 *
 *   square              X^2 = [[A^2 + |c|^2 I, conj(c)(A + d I)], [c(A + d I), (|c|^2 + d^2) I]]
 *   candidate_square    Psi(X^2) = [[(A^t)^2 + |c|^2 I, conj(c) d I], [c d I, (|c|^2 + d^2) I]]
 *                                  + Psi([[0, conj(c) A], [c A, 0]])   with Psi blockwise transpose
 *   square_of_image     Gamma(X)^2 = [[(A^t)^2 + |c|^2 I, conj(c)(A^t + d I)], [c(A^t + d I), (|c|^2 + d^2) I]]
 *   forced_lower_bound  Gamma(X)^2 - Gamma(in-domain part of X^2) = [[0, conj(c) A^t], [c A^t, 0]]
 *
 * Each residual is the max-entry distance between the matrix computed by products
 * and the closed form assembled from blocks.
 */
struct KsIdentityResiduals {
  double square = 0.0;
  double candidate_square = 0.0;
  double square_of_image = 0.0;
  double forced_lower_bound = 0.0;
  double max() const;
};

KsIdentityResiduals ks_forcing_identities(const Matrix& a, Scalar c, double d);

/// Gamma(X)^2 - Gamma(in-domain part of X^2) computed by matrix products: the
/// lower bound that Kadison-Schwarz places on any extension's value at
/// [[0, conj(c) A], [c A, 0]].
Matrix ks_forced_lower_bound(const Matrix& a, Scalar c, double d);

/// Max over trials of the l-inf distance between the sorted singular values of
/// [[A, bI], [cI, dI]] and [[A, cI], [bI, dI]] for random complex A, b, c, d.
double swap_bc_singular_check(std::size_t n, std::size_t trials, std::uint64_t seed);

/// Max relative deviation among det(M*M - lambda I), det(N*N - lambda I) and the
/// reduced char_poly_block_eval form, at `lambdas` complex points per trial chosen
/// off the real axis (|Im lambda| >= ||M||^2 / 10) so that no point sits on a root.
double swap_bc_charpoly_check(std::size_t n, std::size_t trials, std::uint64_t seed,
                              std::size_t lambdas = 20);

/// ||(id_n (x) t/4)(W)|| for the swap W = sum_ij E_ij (x) E_ji. Equals n/4.
double transpose_cb_witness(std::size_t n);

}  // namespace opsys
