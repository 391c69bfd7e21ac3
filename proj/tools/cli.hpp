#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opsys/matrix.hpp"
#include "opsys/report.hpp"

namespace opsys::cli {

enum class Command { VerifyLemma, VerifyMaps, VerifySwapBc, VerifyKs, Norm, Certify, Suite };
enum class OutputFormat { Text, Json, Csv };

const char* to_string(Command command) noexcept;
const char* to_string(OutputFormat format) noexcept;

/// Inclusive range of block sizes; a single n is the range n..n.
struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
  std::vector<std::size_t> values() const;
  std::string str() const;
  friend bool operator==(const SizeRange&, const SizeRange&) = default;
};

struct RunConfig {
  Command command = Command::Suite;
  /// Absent: each command's default sizes.
  std::optional<SizeRange> n;
  /// Absent: both fields where a command covers both.
  std::optional<Field> field;
  std::optional<std::size_t> trials;
  std::size_t restarts = 50;
  std::uint64_t seed = 0;
  double tol_identity = 1e-9;
  double tol_psd = 1e-7;
  OutputFormat output = OutputFormat::Text;
  std::optional<std::string> output_path;
  /// norm: phi | upsilon | upsilon-prime | gamma.
  std::string map;
  /// certify: phi | upsilon | gamma.
  std::string which;
};

struct ConfigError {
  std::string message;
};

/// Parses argv (argv[0] is the program name). `env_seed` is the value of
/// OPSYS_SEED, if set; an explicit --seed wins. Help requests come back as a
/// ConfigError whose message is the help text and `help` set.
struct ParseOutcome {
  std::variant<RunConfig, ConfigError> result;
  bool help = false;
};

ParseOutcome parse_args(int argc, const char* const* argv, const char* env_seed);

/// Checks ranges and cross-field constraints; nullopt when valid.
std::optional<std::string> validate(const RunConfig& config);

struct RunResult {
  int exit_code = 0;
  Report report;
  /// Extra human-readable lines for text output (norm values, verdict narratives).
  std::vector<std::string> details;
};

/// Runs the command. Exit code 0 when no claim failed, 1 otherwise.
RunResult run(const RunConfig& config);

/// Renders the result in the configured format.
std::string render(const RunResult& result, OutputFormat format);

}  // namespace opsys::cli
