#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "cli.hpp"

using namespace opsys;
using namespace opsys::cli;

namespace {

ParseOutcome parse(std::vector<std::string> args, const char* env_seed = nullptr) {
  args.insert(args.begin(), "opsys");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data(), env_seed);
}

RunConfig parsed(std::vector<std::string> args, const char* env_seed = nullptr) {
  const ParseOutcome out = parse(std::move(args), env_seed);
  if (const auto* err = std::get_if<ConfigError>(&out.result)) ADD_FAILURE() << err->message;
  return std::get<RunConfig>(out.result);
}

std::string error_of(std::vector<std::string> args, const char* env_seed = nullptr) {
  const ParseOutcome out = parse(std::move(args), env_seed);
  const auto* err = std::get_if<ConfigError>(&out.result);
  return err ? err->message : std::string();
}

}  // namespace

TEST(Cli, ParsesSubcommandsAndOptions) {
  const RunConfig c = parsed({"verify", "lemma", "--n", "2..5", "--field", "real", "--trials", "10", "--seed", "9"});
  EXPECT_EQ(c.command, Command::VerifyLemma);
  EXPECT_EQ(c.n, (SizeRange{2, 5}));
  EXPECT_EQ(c.field, Field::Real);
  EXPECT_EQ(c.trials, 10u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(parsed({"--n", "3", "norm", "--map", "phi"}).map, "phi");
  EXPECT_EQ(parsed({"certify", "--which", "gamma", "--n", "2"}).command, Command::Certify);
  EXPECT_EQ(parsed({"suite", "--output", "json"}).output, OutputFormat::Json);
}

TEST(Cli, SeedFallsBackToEnvironment) {
  EXPECT_EQ(parsed({"suite"}, "77").seed, 77u);
  EXPECT_EQ(parsed({"suite", "--seed", "5"}, "77").seed, 5u);
  EXPECT_EQ(parsed({"suite"}).seed, 0u);
  EXPECT_NE(error_of({"suite"}, "abc").find("OPSYS_SEED"), std::string::npos);
}

TEST(Cli, InvalidValuesNameTheFlag) {
  EXPECT_NE(error_of({"verify", "lemma", "--n", "0"}).find("--n"), std::string::npos);
  EXPECT_NE(error_of({"verify", "lemma", "--n", "65"}).find("--n"), std::string::npos);
  EXPECT_NE(error_of({"verify", "lemma", "--n", "5..2"}).find("--n"), std::string::npos);
  EXPECT_NE(error_of({"verify", "lemma", "--n", "x"}).find("--n"), std::string::npos);
  EXPECT_NE(error_of({"verify", "lemma", "--field", "quaternion"}).find("--field"), std::string::npos);
  EXPECT_NE(error_of({"suite", "--output", "xml"}).find("--output"), std::string::npos);
  EXPECT_NE(error_of({"suite", "--seed", "-1"}).find("--seed"), std::string::npos);
  EXPECT_NE(error_of({"norm", "--map", "psi"}).find("--map"), std::string::npos);
  EXPECT_NE(error_of({"certify", "--which", "phi"}).find("--n"), std::string::npos);
  EXPECT_FALSE(error_of({"norm"}).empty());
  EXPECT_FALSE(error_of({}).empty());
  EXPECT_FALSE(error_of({"suite", "--restarts", "0"}).empty());
}

TEST(Cli, HelpIsFlagged) {
  const ParseOutcome out = parse({"--help"});
  EXPECT_TRUE(out.help);
}

TEST(Cli, CertifyAboveThresholdPasses) {
  RunConfig c = parsed({"certify", "--which", "phi", "--n", "17"});
  const RunResult r = run(c);
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_EQ(r.report.claims.size(), 1u);
  EXPECT_EQ(r.report.claims.front().status, ClaimStatus::Pass);
  const RunResult below = run(parsed({"certify", "--which", "phi", "--n", "16"}));
  EXPECT_EQ(below.exit_code, 0);
  EXPECT_EQ(below.report.claims.front().status, ClaimStatus::Inconclusive);
}

TEST(Cli, IdenticalConfigsGiveIdenticalClaims) {
  const RunConfig c = parsed({"verify", "maps", "--n", "1..2", "--trials", "30", "--seed", "4"});
  const std::string first = claims_json(run(c).report);
  EXPECT_EQ(first, claims_json(run(c).report));
  RunConfig other = c;
  other.seed = 5;
  EXPECT_EQ(run(other).exit_code, 0);
}

TEST(Cli, RenderFormats) {
  const RunResult r = run(parsed({"verify", "swapbc", "--n", "2", "--trials", "5"}));
  EXPECT_EQ(r.exit_code, 0);
  const std::string text = render(r, OutputFormat::Text);
  EXPECT_NE(text.find("[pass] swapbc.singular-values.n2"), std::string::npos);
  EXPECT_EQ(parse_report(render(r, OutputFormat::Json)), r.report);
  EXPECT_EQ(render(r, OutputFormat::Csv).rfind("id,anchor,status,residual\n", 0), 0u);
}
