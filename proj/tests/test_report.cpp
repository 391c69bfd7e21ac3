#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "opsys/report.hpp"
#include "opsys/sampling.hpp"

using namespace opsys;

namespace {

Report generated_report(std::uint64_t seed) {
  Sampler s(seed);
  Report r;
  r.version = version();
  r.duration_seconds = s.uniform(0, 100);
  r.config["seed"] = std::to_string(seed);
  r.config["note"] = "quotes \" and, commas";
  const std::size_t claims = static_cast<std::size_t>(s.uniform(0, 8));
  for (std::size_t k = 0; k < claims; ++k) {
    ClaimRecord c;
    c.id = "claim." + std::to_string(k);
    c.anchor = k % 2 ? "a, b" : "line\nbreak";
    c.status = static_cast<ClaimStatus>(k % 3);
    switch (k % 5) {
      case 0: c.residual = std::numeric_limits<double>::quiet_NaN(); break;
      case 1: c.residual = std::numeric_limits<double>::infinity(); break;
      case 2: c.residual = -std::numeric_limits<double>::infinity(); break;
      default: c.residual = s.uniform(-1, 1) * std::pow(10.0, s.uniform(-300, 300));
    }
    if (s.coin(0.5)) c.witness = s.gaussian(1 + k % 3, s.coin(0.5) ? Field::Real : Field::Complex);
    r.claims.push_back(std::move(c));
  }
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Report r = generated_report(seed);
    EXPECT_EQ(parse_report(to_json(r)), r) << "seed " << seed;
    EXPECT_EQ(parse_report(to_json(r, -1)), r) << "seed " << seed;
  }
}

TEST(Report, NonFiniteResidualsAreStrings) {
  Report r;
  r.claims.push_back({"x", "y", ClaimStatus::Fail, std::numeric_limits<double>::quiet_NaN(), std::nullopt});
  const std::string json = claims_json(r);
  EXPECT_NE(json.find("\"nan\""), std::string::npos);
  EXPECT_TRUE(std::isnan(parse_report(to_json(r)).claims.front().residual));
}

TEST(Report, StatusNamesRoundTrip) {
  for (const ClaimStatus s : {ClaimStatus::Pass, ClaimStatus::Fail, ClaimStatus::Inconclusive})
    EXPECT_EQ(parse_claim_status(to_string(s)), s);
  EXPECT_FALSE(parse_claim_status("maybe").has_value());
}

TEST(Report, MalformedInputIsRejected) {
  for (const char* text : {"", "{", "[]", R"({"version": "1"})",
                           R"({"version":"1","config":{},"duration_seconds":0,"claims":[{"id":"a","anchor":"b",)"
                           R"("status":"maybe","residual":0,"witness":null}]})",
                           R"({"version":"1","config":{},"duration_seconds":0,"claims":[{"id":"a","anchor":"b",)"
                           R"("status":"pass","residual":0,"witness":{"field":"real","entries":[[[1,0]],[]]}}]})"}) {
    try {
      parse_report(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
    }
  }
}

TEST(Report, CsvQuotesFields) {
  Report r;
  r.claims.push_back({"id", "has, comma and \"quote\"", ClaimStatus::Pass, 0.5, std::nullopt});
  EXPECT_EQ(to_csv(r), "id,anchor,status,residual\nid,\"has, comma and \"\"quote\"\"\",pass,0.5\n");
}

TEST(Report, VersionIsSet) { EXPECT_FALSE(std::string(version()).empty()); }
