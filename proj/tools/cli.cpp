#include "cli.hpp"

#include <charconv>
#include <sstream>

#include "CLI11.hpp"

namespace opsys::cli {

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::VerifyLemma: return "verify lemma";
    case Command::VerifyMaps: return "verify maps";
    case Command::VerifySwapBc: return "verify swapbc";
    case Command::VerifyKs: return "verify ks";
    case Command::Norm: return "norm";
    case Command::Certify: return "certify";
    case Command::Suite: return "suite";
  }
  return "unknown";
}

const char* to_string(OutputFormat format) noexcept {
  switch (format) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "unknown";
}

std::vector<std::size_t> SizeRange::values() const {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string SizeRange::str() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
}

namespace {

constexpr std::size_t kMaxN = 64;

template <typename T>
std::optional<T> parse_unsigned(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::optional<SizeRange> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto n = parse_unsigned<std::size_t>(text);
    if (!n) return std::nullopt;
    return SizeRange{*n, *n};
  }
  const auto lo = parse_unsigned<std::size_t>(std::string_view(text).substr(0, dots));
  const auto hi = parse_unsigned<std::size_t>(std::string_view(text).substr(dots + 2));
  if (!lo || !hi) return std::nullopt;
  return SizeRange{*lo, *hi};
}

ConfigError error_at(const std::string& flag, const std::string& value, const std::string& why) {
  return ConfigError{"invalid value '" + value + "' for " + flag + ": " + why};
}

}  // namespace

std::optional<std::string> validate(const RunConfig& c) {
  if (c.n) {
    if (c.n->lo < 1 || c.n->hi > kMaxN) return "--n '" + c.n->str() + "': n must lie within 1..64";
    if (c.n->lo > c.n->hi) return "--n '" + c.n->str() + "': empty range";
  }
  if (c.trials && *c.trials == 0) return "--trials: must be at least 1";
  if (c.restarts == 0) return "--restarts: must be at least 1";
  if (!(c.tol_identity > 0.0)) return "--tol-identity: must be positive";
  if (!(c.tol_psd > 0.0)) return "--tol-psd: must be positive";
  if (c.command == Command::Norm && c.map != "phi" && c.map != "upsilon" && c.map != "upsilon-prime" &&
      c.map != "gamma") {
    return "--map '" + c.map + "': expected phi, upsilon, upsilon-prime or gamma";
  }
  if (c.command == Command::Certify) {
    if (c.which != "phi" && c.which != "upsilon" && c.which != "gamma")
      return "--which '" + c.which + "': expected phi, upsilon or gamma";
    if (!c.n) return "certify: --n is required";
  }
  return std::nullopt;
}

ParseOutcome parse_args(int argc, const char* const* argv, const char* env_seed) {
  RunConfig config;
  std::string n_text;
  std::string field_text;
  std::string output_text = "text";
  std::string seed_text;
  std::size_t trials = 0;

  CLI::App app{"Numerical checks for positive unital maps on block operator systems", "opsys"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", n_text, "Block size N or inclusive range a..b (1..64)");
  app.add_option("--field", field_text, "real | complex (default: both where applicable)");
  auto* trials_opt = app.add_option("--trials", trials, "Random trials per check");
  app.add_option("--restarts", config.restarts, "Norm-search restarts")->capture_default_str();
  app.add_option("--seed", seed_text, "RNG seed (default: $OPSYS_SEED, else 0)");
  app.add_option("--tol-identity", config.tol_identity, "Tolerance for identities")->capture_default_str();
  app.add_option("--tol-psd", config.tol_psd, "Tolerance for PSD decisions")->capture_default_str();
  app.add_option("--output", output_text, "text | json | csv")->capture_default_str();
  app.add_option("--output-path", config.output_path, "Write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Property checks");
  verify->require_subcommand(1);
  auto* lemma = verify->add_subcommand("lemma", "Closed-form positivity criteria against eigenvalues");
  auto* maps = verify->add_subcommand("maps", "Structure and positivity of every map");
  auto* swapbc = verify->add_subcommand("swapbc", "Singular values under the b <-> c swap");
  auto* ks = verify->add_subcommand("ks", "Kadison-Schwarz block identities");
  auto* norm = app.add_subcommand("norm", "Estimate a map's norm");
  norm->add_option("--map", config.map, "phi | upsilon | upsilon-prime | gamma")->required();
  auto* certify = app.add_subcommand("certify", "Run a non-extendibility certificate");
  certify->add_option("--which", config.which, "phi | upsilon | gamma")->required();
  auto* suite = app.add_subcommand("suite", "Run every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return {ConfigError{app.help()}, true};
  } catch (const CLI::ParseError& e) {
    return {ConfigError{e.what()}, false};
  }

  if (lemma->parsed()) config.command = Command::VerifyLemma;
  else if (maps->parsed()) config.command = Command::VerifyMaps;
  else if (swapbc->parsed()) config.command = Command::VerifySwapBc;
  else if (ks->parsed()) config.command = Command::VerifyKs;
  else if (norm->parsed()) config.command = Command::Norm;
  else if (certify->parsed()) config.command = Command::Certify;
  else if (suite->parsed()) config.command = Command::Suite;

  if (!n_text.empty()) {
    config.n = parse_range(n_text);
    if (!config.n) return {error_at("--n", n_text, "expected N or a..b"), false};
  }
  if (!field_text.empty()) {
    if (field_text == "real") config.field = Field::Real;
    else if (field_text == "complex") config.field = Field::Complex;
    else return {error_at("--field", field_text, "expected real or complex"), false};
  }
  if (trials_opt->count() > 0) config.trials = trials;
  if (output_text == "text") config.output = OutputFormat::Text;
  else if (output_text == "json") config.output = OutputFormat::Json;
  else if (output_text == "csv") config.output = OutputFormat::Csv;
  else return {error_at("--output", output_text, "expected text, json or csv"), false};

  if (!seed_text.empty()) {
    const auto seed = parse_unsigned<std::uint64_t>(seed_text);
    if (!seed) return {error_at("--seed", seed_text, "expected an unsigned 64-bit integer"), false};
    config.seed = *seed;
  } else if (env_seed != nullptr && *env_seed != '\0') {
    const auto seed = parse_unsigned<std::uint64_t>(env_seed);
    if (!seed) return {error_at("OPSYS_SEED", env_seed, "expected an unsigned 64-bit integer"), false};
    config.seed = *seed;
  }

  if (auto problem = validate(config)) return {ConfigError{*problem}, false};
  return {config, false};
}

namespace {

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(6);
  out << std::scientific << x;
  return out.str();
}

}  // namespace

std::string render(const RunResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return to_json(result.report) + "\n";
    case OutputFormat::Csv: return to_csv(result.report);
    case OutputFormat::Text: break;
  }
  std::ostringstream out;
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  for (const ClaimRecord& c : result.report.claims) {
    out << '[' << to_string(c.status) << "] " << c.id << "  residual=" << format_double(c.residual) << "  "
        << c.anchor << '\n';
    switch (c.status) {
      case ClaimStatus::Pass: ++passed; break;
      case ClaimStatus::Fail: ++failed; break;
      case ClaimStatus::Inconclusive: ++inconclusive; break;
    }
  }
  for (const std::string& line : result.details) out << "  " << line << '\n';
  out << passed << " passed, " << failed << " failed, " << inconclusive << " inconclusive ("
      << format_double(result.report.duration_seconds) << " s)\n";
  return out.str();
}

}  // namespace opsys::cli
