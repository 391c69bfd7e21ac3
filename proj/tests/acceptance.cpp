// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "cli.hpp"
#include "opsys/certificates.hpp"
#include "opsys/maps.hpp"
#include "opsys/norm.hpp"
#include "opsys/report.hpp"
#include "opsys/sampling.hpp"
#include "oracles.hpp"

using namespace opsys;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < budget_seconds;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d. %s: %s; %.3f s (budget %g s)%s\n", pass ? "PASS" : "FAIL", id, title, out.detail.c_str(),
              seconds, budget_seconds, in_time ? "" : " OVER BUDGET");
  std::fflush(stdout);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

const double kTwoOverRoot3 = 2.0 / std::numbers::sqrt3;

Result golden_spectra() {
  const Scalar i(0, 1);
  const Matrix m = Matrix::from_rows({{1, 0, 1, 0}, {0, 1, i, 0}, {1, i, 0, 0}, {0, 0, 0, 0}});
  const Matrix n = apply(MapId{MapKind::PairSwapComplex, 2}, m);
  const auto em = hermitian_eigenvalues(m.adjoint() * m);
  const auto en = hermitian_eigenvalues(n.adjoint() * n);
  const double want_m[] = {0, 0, 3, 3};
  const double want_n[] = {0, 1, 1, 4};
  double dev = 0.0;
  for (int k = 0; k < 4; ++k) dev = std::max({dev, std::abs(em[k] - want_m[k]), std::abs(en[k] - want_n[k])});
  const double norm_dev =
      std::max(std::abs(operator_norm(m) - std::numbers::sqrt3), std::abs(operator_norm(n) - 2.0));
  return {dev <= 1e-10 && norm_dev <= 1e-9, "eigenvalue dev " + sci(dev) + ", norm dev " + sci(norm_dev)};
}

Result pair_swap_norm() {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const NormEstimate e = estimate_map_norm({MapKind::PairSwapComplex, n}, 200, derive_seed(2024, n));
    worst = std::max(worst, std::abs(e.lower_bound - kTwoOverRoot3));
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < 10000; ++t) {
    const std::size_t n = 2 + t % 3;
    const SystemId s{SystemKind::SymmetricPairComplex, n};
    Sampler sampler(derive_seed(31, t));
    const SystemElement raw = random_element(s, derive_seed(32, t));
    const auto& p = raw.as<SymmetricPairParams>();
    const double scale = sampler.uniform(0.0, 1.0) / operator_norm(embed(raw));
    const Scalar a = scale * p.a, b = scale * p.b;
    const Matrix c = scale * p.off_diagonal;
    const double image = operator_norm(apply(MapId{MapKind::PairSwapComplex, n}, embed(make_symmetric_pair(s.kind, a, b, c))));
    margin = std::min(margin, pair_swap_norm_bound(a, b, c) - image);
  }
  return {worst <= 1e-4 && margin >= -1e-9, "max |estimate - 2/sqrt(3)| " + sci(worst) + ", min bound margin " + sci(margin)};
}

Result unit_norms() {
  double worst = 0.0;
  double ceiling = 0.0;
  const std::pair<MapKind, std::size_t> cases[] = {
      {MapKind::QuarterTranspose, 2}, {MapKind::QuarterTranspose, 5}, {MapKind::QuarterTranspose, 6},
      {MapKind::QuarterTranspose, 8}, {MapKind::PairSwap, 2},         {MapKind::PairSwap, 4}};
  for (const auto& [kind, n] : cases) {
    const NormEstimate e = estimate_map_norm({kind, n}, 20, derive_seed(3, n));
    worst = std::max(worst, std::abs(e.lower_bound - 1.0));
    ceiling = std::max(ceiling, e.max_sampled - 1.0);
  }
  return {worst <= 1e-6 && ceiling <= 1e-9, "max |estimate - 1| " + sci(worst) + ", max sampled excess " + sci(ceiling)};
}

SystemElement lemma_sample(const SystemId& s, std::uint64_t seed, std::size_t t) {
  const std::uint64_t trial = derive_seed(seed, t);
  switch (t % 3) {
    case 0: return random_element(s, trial);
    case 1: return random_positive_element(s, trial);
    default: {
      const Matrix x = embed(random_positive_element(s, trial)) + embed(random_element(s, derive_seed(trial, 1), 0.05));
      return extract(s, x.hermitian_part(), 1e-9);
    }
  }
}

Result lemma_equivalence() {
  std::size_t disagreements = 0, compared = 0;
  for (const SystemKind kind : {SystemKind::SymmetricPair, SystemKind::SymmetricPairComplex, SystemKind::FreeCorner,
                                SystemKind::FreeCornerReal}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const SystemId s{kind, n};
      for (std::size_t t = 0; t < 10000; ++t) {
        const SystemElement e = lemma_sample(s, derive_seed(40 + static_cast<std::uint64_t>(kind), n), t);
        if (positivity_margin(e) <= 1e-6) continue;
        ++compared;
        if (is_positive_by_criterion(e) != is_psd(embed(e)).psd) ++disagreements;
      }
    }
  }
  return {disagreements == 0 && compared > 0,
          std::to_string(disagreements) + " disagreements in " + std::to_string(compared) + " comparisons"};
}

Result swap_invariance() {
  double sv = 0.0, cp = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    sv = std::max(sv, swap_bc_singular_check(n, 1000, derive_seed(50, n)));
    cp = std::max(cp, swap_bc_charpoly_check(n, 100, derive_seed(51, n), 20));
  }
  return {sv <= 1e-9 && cp <= 1e-8, "singular-value dev " + sci(sv) + ", char-poly rel dev " + sci(cp)};
}

Result certificates() {
  bool ok = true;
  std::string bad;
  for (std::size_t n = 1; n <= 20; ++n) {
    const Verdict v = certify_phi_unextendible(n);
    const auto want = n >= 17 ? Outcome::Contradiction : Outcome::Inconclusive;
    if (v.outcome != want || !v.narrative_holds()) ok = false, bad += " phi" + std::to_string(n);
    const Verdict u = certify_upsilon_unextendible(n);
    if ((u.outcome == Outcome::Contradiction) != (n >= 2) || !u.narrative_holds())
      ok = false, bad += " upsilon" + std::to_string(n);
  }
  double residual = 0.0, eig = 0.0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const Verdict g = certify_gamma_unextendible(n, derive_seed(60, n));
    if (g.outcome != Outcome::Contradiction) ok = false, bad += " gamma" + std::to_string(n);
    residual = std::max(residual, g.max_residual());
    eig = std::max(eig, std::abs(oracle::min_eigenvalue(g.witnesses.back().second) + 1.0));
  }
  ok = ok && residual <= 1e-9 && eig <= 1e-10;
  return {ok, "max narrative residual " + sci(residual) + ", witness eigenvalue dev " + sci(eig) +
                  (bad.empty() ? "" : ", wrong:" + bad)};
}

Result positivity() {
  std::size_t violations = 0;
  double worst = 0.0;
  for (const MapKind kind : {MapKind::QuarterTranspose, MapKind::PairSwap, MapKind::PairSwapComplex,
                             MapKind::CornerTranspose, MapKind::UpperLeftTranspose}) {
    for (std::size_t n : {2u, 4u}) {
      const PositivityReport r = check_positivity_preserving({kind, n}, 10000, derive_seed(70, n));
      violations += r.violation_count;
      worst = std::min(worst, r.min_output_eigenvalue);
    }
  }
  std::size_t missed = 0;
  for (std::size_t n = 2; n <= 16; ++n)
    if (check_positivity_preserving({MapKind::BlockwiseTranspose, n}, 100, derive_seed(71, n)).violation_count == 0)
      ++missed;
  return {violations == 0 && missed == 0, std::to_string(violations) + " violations (min image eigenvalue " +
                                              sci(worst) + "), blockwise transpose unviolated for " +
                                              std::to_string(missed) + " of n = 2..16"};
}

Result transpose_witness() {
  double dev = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) dev = std::max(dev, std::abs(transpose_cb_witness(n) - n / 4.0));
  const bool crosses = transpose_cb_witness(4) <= 1.0 + 1e-10 && transpose_cb_witness(5) > 1.0;
  return {dev <= 1e-10 && crosses, "max |w(n) - n/4| " + sci(dev) + (crosses ? ", crosses 1 between 4 and 5" : "")};
}

Report generated_report(std::uint64_t seed) {
  Sampler s(seed);
  Report r;
  r.version = version();
  r.duration_seconds = s.uniform(0, 10);
  r.config["seed"] = std::to_string(seed);
  for (std::size_t k = 0; k < 1 + seed % 6; ++k) {
    ClaimRecord c{"c" + std::to_string(k), "anchor, \"quoted\"", static_cast<ClaimStatus>(k % 3),
                  k == 3 ? std::numeric_limits<double>::quiet_NaN() : s.uniform(-1, 1), std::nullopt};
    if (k % 2) c.witness = s.gaussian(2, k % 4 == 1 ? Field::Real : Field::Complex);
    r.claims.push_back(std::move(c));
  }
  return r;
}

Result determinism() {
  cli::RunConfig config;
  config.command = cli::Command::VerifyMaps;
  config.n = cli::SizeRange{1, 3};
  config.trials = 100;
  config.seed = 123;
  const std::string a = claims_json(cli::run(config).report);
  const std::string b = claims_json(cli::run(config).report);
  std::size_t mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Report r = generated_report(seed);
    if (!(parse_report(to_json(r)) == r)) ++mismatches;
  }
  return {a == b && mismatches == 0, std::string(a == b ? "claim arrays identical" : "claim arrays differ") + ", " +
                                         std::to_string(mismatches) + " of 100 round trips differ"};
}

}  // namespace

int main() {
  criterion(1, "golden Gram spectra", 0.001, golden_spectra);
  criterion(2, "complex pair-swap norm 2/sqrt(3)", 30.0, pair_swap_norm);
  criterion(3, "unit norms", 30.0, unit_norms);
  criterion(4, "positivity criterion vs eigenvalues", 20.0, lemma_equivalence);
  criterion(5, "singular values invariant under b <-> c", 20.0, swap_invariance);
  criterion(6, "non-extendibility certificates", 10.0, certificates);
  criterion(7, "positivity preservation", 30.0, positivity);
  criterion(8, "transpose witness n/4", 1.0, transpose_witness);
  criterion(9, "determinism and report round trip", 5.0, determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
