#pragma once

#include <cstdint>
#include <optional>

#include "opsys/maps.hpp"

namespace opsys {

enum class NormStrategy { Sampling, ClosedForm, WitnessOnly };

const char* to_string(NormStrategy strategy) noexcept;

struct NormEstimate {
  /// ||m(witness)|| for the best input found.
  double lower_bound = 0.0;
  /// Unit-norm input achieving lower_bound.
  Matrix witness;
  /// The unnormalized best iterate and its norm (witness = raw_input / raw_input_norm).
  Matrix raw_input;
  double raw_input_norm = 0.0;
  std::optional<double> upper_bound;
  NormStrategy strategy = NormStrategy::Sampling;
  /// Largest ||m(x)|| / ||x|| seen at any evaluated point.
  double max_sampled = 0.0;
  std::size_t evaluations = 0;
};

struct NormSearchOptions {
  std::size_t iterations = 500;
  /// A restart stops once an accepted step gains less than this.
  double improvement_tolerance = 1e-10;
};

/**
 * Multi-start local maximization of ||m(x)|| / ||x|| over the map's domain.
 *
 * The domain is parameterized by its real coordinates (parameter_basis for the
 * operator systems, matrix units for the full algebras). Each restart runs
 * supergradient ascent on the ratio with backtracking, renormalizing every
 * iterate to ||x|| = 1; when a step cannot be found along the supergradient
 * (non-smooth points), random directions are tried before giving up. Restart 0
 * starts at the identity, the others at Gaussian points seeded by
 * (seed, restart index).
 *
 * For PairSwapComplex the closed-form upper bound 2/sqrt(3) is attached.
 */
NormEstimate estimate_map_norm(const MapId& m, std::size_t restarts, std::uint64_t seed,
                               const NormSearchOptions& options = {});

/**
 * Upper bound on ||PairSwapComplex(X)|| for X = [[a I, C], [C^t, b I]] with ||X|| <= 1:
 * the norm of [[|a|, ||C||], [||C||, |b|]], i.e.
 * (|a| + |b| + sqrt((|b| - |a|)^2 + 4 ||C||^2)) / 2.
 *
 * This bound alone does not give 2/sqrt(3): X = [[I, iI], [iI, I]] / sqrt(2) has
 * norm 1 and bound sqrt(2).
 * PreconditionViolated if ||X|| > 1 + 1e-9.
 */
double pair_swap_norm_bound(Scalar a, Scalar b, const Matrix& c);

}  // namespace opsys
