#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opsys/matrix.hpp"

namespace opsys {

enum class Outcome { Contradiction, Inconclusive, ExtensionExhibited };

std::string_view to_string(Outcome outcome) noexcept;

struct ProofStep {
  std::string description;
  double residual = 0.0;
  double tolerance = 0.0;
  /// Premises taken as given rather than checked (residual is 0 by convention).
  bool assumed = false;

  bool holds() const noexcept { return residual <= tolerance; }
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  /// Smallest n for which the certificate's final inequality fails.
  std::optional<std::size_t> threshold;
  /// For a contradiction: ("claimed larger", P) then ("claimed smaller", Q) where
  /// P >= Q is forced but P - Q has a negative eigenvalue; or a positive input
  /// and its non-positive image.
  std::vector<std::pair<std::string, Matrix>> witnesses;
  std::vector<ProofStep> narrative;

  bool narrative_holds() const;
  double max_residual() const;
};

struct SchurReport {
  bool block_psd = false;
  bool complement_psd = false;
  /// min eigenvalue of [[P, X*], [X, I]].
  double block_min_eigenvalue = 0.0;
  /// min eigenvalue of P - X*X.
  double complement_min_eigenvalue = 0.0;

  bool agree() const noexcept { return block_psd == complement_psd; }
};

/// Evaluates both sides of [[P, X*], [X, I]] >= 0  <=>  P >= X*X.
/// DimensionMismatch unless P and X are the same size.
SchurReport schur_implication(const Matrix& p, const Matrix& x, double tol = 1e-9);

/**
 * Positivity obstruction for extending QuarterTranspose to M_2n.
 *
 * Any positive extension sends [[E_ii, 0], [0, 0]] to [[P_i, 0], [0, 0]] with
 * sum P_i = I, and positivity at [[E_ii, E_ij], [E_ji, I]] forces P_i >= E_jj / 16,
 * so I >= (n / 16) E_jj. The last step fails exactly when n > 16, decided on
 * the integer n. For n <= 16 the verdict is Inconclusive.
 */
Verdict certify_phi_unextendible(std::size_t n);

/// The same argument for PairSwap with factor 1: I >= n E_jj fails for n >= 2.
/// For n = 1 the map is the identity and the identity extends it.
Verdict certify_upsilon_unextendible(std::size_t n);

/**
 * For random 0 <= D <= I: the least X with [[D^t, D^t], [D^t, X]] >= 0, found by
 * a Schur complement on range(D^t) (singular values below 1e-10 dropped), and the
 * corresponding bound from I - D. Returns the max distance of either bound from D^t.
 * Trial 0 is D = I and trial 1 (n >= 2) is D = E_11.
 */
double chi_forcing_check(std::size_t n, std::size_t trials, std::uint64_t seed);

/**
 * Shows that any positive unital norm-one extension of CornerTranspose must be the
 * blockwise transpose, then exhibits a positive matrix the blockwise transpose
 * sends to a matrix with eigenvalue -1. The Kadison-Schwarz inequality for the
 * extension is recorded as an assumed step. n = 1 gives ExtensionExhibited.
 */
Verdict certify_gamma_unextendible(std::size_t n, std::uint64_t seed = 0);

/// A linear map on M_dim given by its images of the matrix units E_ij (row-major).
class BasisAction {
 public:
  BasisAction(std::size_t dim, Field field, std::vector<Matrix> images);
  static BasisAction from_function(std::size_t dim, Field field,
                                   const std::function<Matrix(const Matrix&)>& f);

  std::size_t dim() const noexcept { return dim_; }
  Field field() const noexcept { return field_; }
  Matrix operator()(const Matrix& x) const;

 private:
  std::size_t dim_;
  Field field_;
  std::vector<Matrix> images_;
};

struct FalsifyWitness {
  std::size_t trial = 0;
  Matrix input;
  Matrix output;
  double output_min_eigenvalue = 0.0;
};

/**
 * Applies the candidate to positive inputs and returns the first one whose image
 * has an eigenvalue below -tol. For dim >= 4 the first input is v v* with
 * v = e_1 + e_(dim/2 + 2); the rest alternate rank-one and Wishart samples.
 * An empty result is not a proof of positivity.
 */
std::optional<FalsifyWitness> falsify_extension(const BasisAction& candidate, std::size_t trials,
                                                std::uint64_t seed, double tol = 1e-7);

}  // namespace opsys
