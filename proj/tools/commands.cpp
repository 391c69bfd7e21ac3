#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "opsys/certificates.hpp"
#include "opsys/maps.hpp"
#include "opsys/norm.hpp"
#include "opsys/sampling.hpp"
#include "opsys/systems.hpp"

namespace opsys::cli {

namespace {

const std::vector<std::size_t> kSuiteSizes = {1, 2, 3, 4, 8, 16, 17};
constexpr double kCharPolyTolerance = 1e-8;
constexpr double kKsIdentityTolerance = 1e-10;
constexpr double kUnitNormTolerance = 1e-6;
constexpr double kPairSwapNormTolerance = 1e-4;
constexpr double kCeilingSlack = 1e-9;

// Seed streams, one per claim family, so adding a family never shifts another.
enum Stream : std::uint64_t {
  kLemma = 1,
  kStructural,
  kPositivity,
  kIsometry,
  kSwapSingular,
  kSwapCharPoly,
  kKs,
  kNorm,
  kNormBound,
  kCertify,
};

std::uint64_t stream_seed(std::uint64_t seed, Stream stream, std::size_t n) {
  return derive_seed(derive_seed(seed, stream), n);
}

std::string fmt(double x, int precision = 10) {
  std::ostringstream out;
  out.precision(precision);
  out << x;
  return out.str();
}

class Runner {
 public:
  explicit Runner(const RunConfig& config) : config_(config) {}

  void add(std::string id, std::string anchor, bool pass, double residual,
           std::optional<Matrix> witness = std::nullopt) {
    add_status(std::move(id), std::move(anchor), pass ? ClaimStatus::Pass : ClaimStatus::Fail, residual,
               std::move(witness));
  }

  void add_status(std::string id, std::string anchor, ClaimStatus status, double residual,
                  std::optional<Matrix> witness = std::nullopt) {
    result_.report.claims.push_back(
        ClaimRecord{std::move(id), std::move(anchor), status, residual, std::move(witness)});
  }

  void detail(std::string line) { result_.details.push_back(std::move(line)); }

  std::vector<std::size_t> sizes(std::vector<std::size_t> defaults, std::size_t cap = 64) const {
    std::vector<std::size_t> out = config_.n ? config_.n->values() : std::move(defaults);
    if (!config_.n) out.erase(std::remove_if(out.begin(), out.end(), [&](std::size_t n) { return n > cap; }), out.end());
    return out;
  }

  std::size_t trials(std::size_t fallback) const { return config_.trials.value_or(fallback); }
  bool covers(Field field) const { return !config_.field || *config_.field == field; }

  void lemma(const std::vector<std::size_t>& ns, std::size_t trials);
  void maps(const std::vector<std::size_t>& ns, std::size_t trials);
  void swapbc(const std::vector<std::size_t>& ns, std::size_t trials);
  void transpose_witness(const std::vector<std::size_t>& ns);
  void ks(const std::vector<std::size_t>& ns, std::size_t trials);
  void norm(const std::string& map, const std::vector<std::size_t>& ns, std::size_t trials);
  void certify(const std::string& which, const std::vector<std::size_t>& ns);

  RunResult finish() {
    result_.exit_code = 0;
    for (const ClaimRecord& c : result_.report.claims)
      if (c.status == ClaimStatus::Fail) result_.exit_code = 1;
    return std::move(result_);
  }

 private:
  const RunConfig& config_;
  RunResult result_;
};

std::string n_suffix(std::size_t n) { return ".n" + std::to_string(n); }

SystemElement lemma_sample(const SystemId& s, std::uint64_t seed, std::size_t t) {
  const std::uint64_t trial_seed = derive_seed(seed, t);
  switch (t % 4) {
    case 0: return random_element(s, trial_seed);
    case 1: return random_positive_element(s, trial_seed);
    default: {
      // Small perturbations of positive elements straddle the boundary; the
      // Hermitian part of a member stays in the system.
      const Matrix base = embed(random_positive_element(s, trial_seed));
      Matrix x = base + embed(random_element(s, derive_seed(trial_seed, 1), 0.05));
      if (t % 4 == 3) x = x.hermitian_part();
      return extract(s, x.with_field(s.field() == Field::Real ? Field::Real : Field::Complex), 1e-9);
    }
  }
}

void Runner::lemma(const std::vector<std::size_t>& ns, std::size_t trials) {
  constexpr double kMargin = 1e-6;
  const SystemKind kinds[] = {SystemKind::SymmetricPair, SystemKind::SymmetricPairComplex, SystemKind::FreeCorner,
                              SystemKind::FreeCornerReal};
  for (const SystemKind kind : kinds) {
    if (!covers(native_field(kind))) continue;
    for (const std::size_t n : ns) {
      const SystemId s{kind, n};
      const std::uint64_t seed = stream_seed(config_.seed, kLemma, n * 8 + static_cast<std::size_t>(kind));
      std::size_t disagreements = 0;
      std::size_t near_boundary = 0;
      std::size_t positives = 0;
      double complex_positive = 0.0;
      std::optional<Matrix> witness;
      for (std::size_t t = 0; t < trials; ++t) {
        const SystemElement e = lemma_sample(s, seed, t);
        const bool oracle = is_psd(embed(e), config_.tol_psd).psd;
        if (oracle && kind == SystemKind::SymmetricPairComplex) {
          const auto& p = e.as<SymmetricPairParams>();
          complex_positive = std::max({complex_positive, std::abs(p.a.imag()), std::abs(p.b.imag()),
                                       p.off_diagonal.values().imag().cwiseAbs().maxCoeff()});
        }
        positives += oracle ? 1 : 0;
        if (positivity_margin(e) <= kMargin) {
          ++near_boundary;
          continue;
        }
        if (is_positive_by_criterion(e) != oracle) {
          ++disagreements;
          if (!witness) witness = embed(e);
        }
      }
      const std::string name(to_string(kind));
      add("lemma." + name + n_suffix(n), "closed-form positivity criterion agrees with the eigenvalue test",
          disagreements == 0, static_cast<double>(disagreements), witness);
      detail("lemma " + name + " n=" + std::to_string(n) + ": " + std::to_string(positives) + " positive, " +
             std::to_string(near_boundary) + " within 1e-6 of the boundary (skipped)");
      if (kind == SystemKind::SymmetricPairComplex) {
        add("lemma." + name + ".real-positives" + n_suffix(n),
            "positive elements of the complexified pair system are real", complex_positive <= 1e-9,
            complex_positive);
      }
    }
  }
}

Matrix quarter_square_expected(const SystemElement& e) {
  const auto& p = e.as<ScalarDiagonalParams>();
  return embed(make_scalar_diagonal(e.system().n, p.a, p.d, (1.0 / 16.0) * p.top_right,
                                    (1.0 / 16.0) * p.bottom_left));
}

void Runner::maps(const std::vector<std::size_t>& ns, std::size_t trials) {
  for (const MapKind kind : kAllMapKinds) {
    for (const std::size_t n : ns) {
      const MapId m{kind, n};
      if (!covers(m.field())) continue;
      const std::string name(to_string(kind));
      const std::string suffix = n_suffix(n);

      const std::size_t structural_trials = std::min<std::size_t>(trials, 200);
      const StructuralReport s = check_structural(m, structural_trials, stream_seed(config_.seed, kStructural, n),
                                                  config_.tol_identity);
      double residual = std::max({s.unital_residual, s.self_adjoint_residual, s.linear_residual});
      if (kind != MapKind::QuarterTranspose) residual = std::max(residual, s.involution_residual);
      add("maps." + name + ".structure" + suffix,
          kind == MapKind::QuarterTranspose ? "unital, linear and *-preserving"
                                            : "unital, linear, *-preserving involution",
          residual <= config_.tol_identity, residual);
      if (kind == MapKind::QuarterTranspose) {
        double square = 0.0;
        for (std::size_t t = 0; t < structural_trials; ++t) {
          const SystemElement e = random_element(*m.domain(), derive_seed(stream_seed(config_.seed, kStructural, n), t));
          square = std::max(square, max_abs_diff(apply(m, apply(m, embed(e))), quarter_square_expected(e)));
        }
        add("maps." + name + ".square" + suffix, "applying the map twice scales the off-diagonal blocks by 1/16",
            square <= config_.tol_identity, square);
      }

      const PositivityReport p =
          check_positivity_preserving(m, trials, stream_seed(config_.seed, kPositivity, n), config_.tol_psd);
      if (kind == MapKind::BlockwiseTranspose && n >= 2) {
        add("maps." + name + ".not-positive" + suffix, "the blockwise transpose is not positive",
            p.violation_count > 0, p.min_output_eigenvalue,
            p.violations.empty() ? std::nullopt : std::optional<Matrix>(p.violations.front()));
      } else {
        add("maps." + name + ".positive" + suffix, "the map preserves positivity", p.violation_count == 0,
            std::max(0.0, -p.min_output_eigenvalue),
            p.violations.empty() ? std::nullopt : std::optional<Matrix>(p.violations.front()));
      }

      if (kind == MapKind::CornerTranspose || kind == MapKind::PairSwap) {
        double gap = 0.0;
        const std::uint64_t seed = stream_seed(config_.seed, kIsometry, n);
        for (std::size_t t = 0; t < structural_trials; ++t) {
          const Matrix x = embed(random_element(*m.domain(), derive_seed(seed, t)));
          gap = std::max(gap, std::abs(operator_norm(apply(m, x)) - operator_norm(x)));
        }
        add("maps." + name + ".isometry" + suffix, "the map preserves the operator norm",
            gap <= config_.tol_identity, gap);
      }
    }
  }
}

void Runner::swapbc(const std::vector<std::size_t>& ns, std::size_t trials) {
  for (const std::size_t n : ns) {
    const double sv = swap_bc_singular_check(n, trials, stream_seed(config_.seed, kSwapSingular, n));
    add("swapbc.singular-values" + n_suffix(n),
        "[[A, bI], [cI, dI]] and [[A, cI], [bI, dI]] have the same singular values", sv <= config_.tol_identity,
        sv);
    const std::size_t poly_trials = std::max<std::size_t>(1, std::min<std::size_t>(trials, 50));
    const double cp = swap_bc_charpoly_check(n, poly_trials, stream_seed(config_.seed, kSwapCharPoly, n));
    add("swapbc.char-poly" + n_suffix(n), "the reduced characteristic polynomial is symmetric in b and c",
        cp <= kCharPolyTolerance, cp);
  }
}

void Runner::transpose_witness(const std::vector<std::size_t>& ns) {
  for (const std::size_t n : ns) {
    if (n > 16) continue;
    const double w = transpose_cb_witness(n);
    const double residual = std::abs(w - static_cast<double>(n) / 4.0);
    add("transpose-witness" + n_suffix(n), "level-n norm of B -> B^t/4 on the swap operator is n/4",
        residual <= 1e-10, residual);
  }
}

void Runner::ks(const std::vector<std::size_t>& ns, std::size_t trials) {
  for (const std::size_t n : ns) {
    const std::uint64_t seed = stream_seed(config_.seed, kKs, n);
    double identities = 0.0;
    double phi_defect = 0.0;
    double at_identity = 0.0;
    std::optional<Matrix> witness;
    const MapId phi{MapKind::QuarterTranspose, n};
    for (std::size_t t = 0; t < trials; ++t) {
      Sampler sampler(derive_seed(seed, t));
      const Matrix a = sampler.gaussian(n, Field::Complex).hermitian_part();
      const Scalar c = sampler.scalar(Field::Complex, 1.0);
      const double d = sampler.uniform(-1.0, 1.0);
      identities = std::max(identities, ks_forcing_identities(a, c, d).max());
      if (n <= 16) {
        const Matrix x = embed(random_element(*phi.domain(), derive_seed(seed ^ 0xa5a5a5a5ULL, t))).hermitian_part();
        const KadisonSchwarzResult r = check_kadison_schwarz(phi, x, config_.tol_identity);
        if (-r.min_defect_eigenvalue > phi_defect) {
          phi_defect = -r.min_defect_eigenvalue;
          if (!r.holds) witness = x;
        }
      }
    }
    for (const MapKind kind : kAllMapKinds) {
      const MapId m{kind, n};
      const Matrix id = Matrix::identity(2 * n, m.field());
      at_identity = std::max(at_identity, check_kadison_schwarz(m, id, config_.tol_identity).defect.max_abs());
    }
    add("ks.identities" + n_suffix(n), "block forms of X^2, Psi(X^2) and Gamma(X)^2 for self-adjoint X",
        identities <= kKsIdentityTolerance, identities);
    if (n <= 16) {
      add("ks.quarter-transpose" + n_suffix(n),
          "Kadison-Schwarz holds for the quarter-transpose map with the trace-diagonal candidate",
          phi_defect <= config_.tol_identity, phi_defect, witness);
    }
    add("ks.identity-input" + n_suffix(n), "the Kadison-Schwarz defect vanishes at I", at_identity == 0.0,
        at_identity);
  }
}

MapKind norm_map(const std::string& name) {
  if (name == "phi") return MapKind::QuarterTranspose;
  if (name == "upsilon") return MapKind::PairSwap;
  if (name == "upsilon-prime") return MapKind::PairSwapComplex;
  return MapKind::CornerTranspose;
}

void Runner::norm(const std::string& name, const std::vector<std::size_t>& ns, std::size_t trials) {
  const double two_over_root3 = 2.0 / std::numbers::sqrt3;
  for (const std::size_t n : ns) {
    const MapId m{norm_map(name), n};
    const bool gap = m.kind == MapKind::PairSwapComplex && n >= 2;
    const double expected = gap ? two_over_root3 : 1.0;
    const double tolerance = gap ? kPairSwapNormTolerance : kUnitNormTolerance;
    const NormEstimate e = estimate_map_norm(m, config_.restarts, stream_seed(config_.seed, kNorm, n));
    const double residual = std::abs(e.lower_bound - expected);
    add("norm." + name + n_suffix(n), gap ? "norm is 2/sqrt(3)" : "norm is 1", residual <= tolerance, residual,
        e.witness);
    const double excess = std::max(0.0, e.max_sampled - expected);
    add("norm." + name + ".ceiling" + n_suffix(n), "no sampled input exceeds the norm", excess <= kCeilingSlack,
        excess);
    std::string line = "norm " + name + " n=" + std::to_string(n) + ": lower bound " + fmt(e.lower_bound) +
                       ", max sampled " + fmt(e.max_sampled) + ", " + std::to_string(e.evaluations) +
                       " evaluations, strategy " + to_string(e.strategy);
    if (e.upper_bound) line += ", upper bound " + fmt(*e.upper_bound);
    detail(line);

    if (m.kind == MapKind::PairSwapComplex) {
      double worst = 0.0;
      const std::uint64_t seed = stream_seed(config_.seed, kNormBound, n);
      const SystemId s = *m.domain();
      for (std::size_t t = 0; t < trials; ++t) {
        Sampler sampler(derive_seed(seed, t));
        const SystemElement raw = random_element(s, derive_seed(seed ^ 0x3c3c3c3cULL, t));
        const auto& p = raw.as<SymmetricPairParams>();
        const double scale = sampler.uniform(0.0, 1.0) / operator_norm(embed(raw));
        const Scalar a = scale * p.a;
        const Scalar b = scale * p.b;
        const Matrix c = scale * p.off_diagonal;
        const double bound = pair_swap_norm_bound(a, b, c);
        const double image = operator_norm(apply(m, embed(make_symmetric_pair(s.kind, a, b, c))));
        worst = std::max(worst, image - bound);
      }
      add("norm." + name + ".bound" + n_suffix(n), "the closed-form bound dominates every image norm",
          worst <= kCeilingSlack, std::max(0.0, worst));
    }
  }
}

void Runner::certify(const std::string& which, const std::vector<std::size_t>& ns) {
  for (const std::size_t n : ns) {
    Verdict v;
    Outcome expected;
    std::string anchor;
    if (which == "phi") {
      v = certify_phi_unextendible(n);
      expected = n >= 17 ? Outcome::Contradiction : Outcome::Inconclusive;
      anchor = "the quarter-transpose map has no positive extension once n > 16";
    } else if (which == "upsilon") {
      v = certify_upsilon_unextendible(n);
      expected = n >= 2 ? Outcome::Contradiction : Outcome::ExtensionExhibited;
      anchor = "the pair-swap map has no positive extension for n >= 2";
    } else {
      v = certify_gamma_unextendible(n, stream_seed(config_.seed, kCertify, n));
      expected = n >= 2 ? Outcome::Contradiction : Outcome::ExtensionExhibited;
      anchor = "the corner-transpose map has no positive extension for n >= 2";
    }
    const bool consistent = v.outcome == expected && v.narrative_holds();
    ClaimStatus status = consistent ? ClaimStatus::Pass : ClaimStatus::Fail;
    if (consistent && v.outcome == Outcome::Inconclusive) status = ClaimStatus::Inconclusive;
    std::optional<Matrix> witness;
    if (!v.witnesses.empty()) witness = v.witnesses.back().second;
    add_status("certify." + which + n_suffix(n), anchor, status, v.max_residual(), witness);
    detail("certify " + which + " n=" + std::to_string(n) + ": " + std::string(to_string(v.outcome)));
    for (const ProofStep& step : v.narrative) {
      detail(std::string("  ") + (step.assumed ? "[assumed] " : step.holds() ? "[ok] " : "[FAILED] ") +
             step.description + (step.assumed ? "" : " (residual " + fmt(step.residual, 3) + ")"));
    }
  }
}

std::map<std::string, std::string> echo(const RunConfig& c) {
  std::map<std::string, std::string> out;
  out["command"] = to_string(c.command);
  out["n"] = c.n ? c.n->str() : "default";
  out["field"] = c.field ? opsys::to_string(*c.field) : "both";
  out["trials"] = c.trials ? std::to_string(*c.trials) : "default";
  out["restarts"] = std::to_string(c.restarts);
  out["seed"] = std::to_string(c.seed);
  out["tol_identity"] = fmt(c.tol_identity, 17);
  out["tol_psd"] = fmt(c.tol_psd, 17);
  out["output"] = to_string(c.output);
  if (c.command == Command::Norm) out["map"] = c.map;
  if (c.command == Command::Certify) out["which"] = c.which;
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Runner r(config);
  switch (config.command) {
    case Command::VerifyLemma: r.lemma(r.sizes({1, 2, 3, 4, 5, 6}), r.trials(2000)); break;
    case Command::VerifyMaps: r.maps(r.sizes({1, 2, 3, 4}), r.trials(1000)); break;
    case Command::VerifySwapBc:
      r.swapbc(r.sizes({1, 2, 3, 4, 5, 6, 7, 8}), r.trials(1000));
      r.transpose_witness(r.sizes({1, 2, 3, 4, 5, 6}));
      break;
    case Command::VerifyKs: r.ks(r.sizes({1, 2, 3, 4}), r.trials(100)); break;
    case Command::Norm: r.norm(config.map, r.sizes({2}), r.trials(1000)); break;
    case Command::Certify: r.certify(config.which, r.sizes({})); break;
    case Command::Suite: {
      const std::size_t trials = r.trials(500);
      r.lemma(r.sizes(kSuiteSizes, 8), trials);
      r.maps(r.sizes(kSuiteSizes, 8), trials);
      r.swapbc(r.sizes(kSuiteSizes), trials);
      r.transpose_witness(r.sizes(kSuiteSizes));
      r.ks(r.sizes(kSuiteSizes), std::min<std::size_t>(trials, 100));
      for (const char* map : {"phi", "upsilon", "gamma"}) r.norm(map, r.sizes(kSuiteSizes, 8), trials);
      r.norm("upsilon-prime", r.sizes(kSuiteSizes, 4), trials);
      for (const char* which : {"phi", "upsilon", "gamma"}) r.certify(which, r.sizes(kSuiteSizes));
      break;
    }
  }
  RunResult result = r.finish();
  result.report.config = echo(config);
  result.report.version = opsys::version();
  result.report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace opsys::cli
