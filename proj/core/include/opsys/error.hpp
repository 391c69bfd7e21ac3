#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opsys {

enum class ErrorKind {
  NotHermitian,
  DimensionMismatch,
  FieldMismatch,
  IndexOutOfRange,
  ZeroSpan,
  UnsupportedSystem,
  DomainViolation,
  PreconditionViolated,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::ZeroSpan: return "ZeroSpan";
    case ErrorKind::UnsupportedSystem: return "UnsupportedSystem";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

}  // namespace opsys
