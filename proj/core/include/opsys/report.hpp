#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opsys/matrix.hpp"

namespace opsys {

/// Library version, e.g. "0.3.0".
const char* version() noexcept;

enum class ClaimStatus { Pass, Fail, Inconclusive };

std::string_view to_string(ClaimStatus status) noexcept;
std::optional<ClaimStatus> parse_claim_status(std::string_view text) noexcept;

struct ClaimRecord {
  std::string id;
  /// Short description of the statement being checked.
  std::string anchor;
  ClaimStatus status = ClaimStatus::Pass;
  double residual = 0.0;
  std::optional<Matrix> witness;

  /// Residuals compare equal when both are NaN.
  friend bool operator==(const ClaimRecord& a, const ClaimRecord& b);
};

struct Report {
  /// Echo of the run configuration, ordered by key.
  std::map<std::string, std::string> config;
  std::string version;
  std::vector<ClaimRecord> claims;
  double duration_seconds = 0.0;

  friend bool operator==(const Report& a, const Report& b) = default;
};

/**
 * JSON layout:
 *   {"version": ..., "config": {...}, "duration_seconds": ...,
 *    "claims": [{"id", "anchor", "status", "residual", "witness"}]}
 * with witness either null or {"field": "real"|"complex", "entries": rows of [re, im]}.
 * Non-finite residuals are written as the strings "inf", "-inf", "nan".
 */
std::string to_json(const Report& report, int indent = 2);

/// Only the "claims" array, for run-to-run comparison.
std::string claims_json(const Report& report);

/// Throws PreconditionViolated on malformed input.
Report parse_report(std::string_view json);

/// id,anchor,status,residual; witnesses are omitted.
std::string to_csv(const Report& report);

}  // namespace opsys
