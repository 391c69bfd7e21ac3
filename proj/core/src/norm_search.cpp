#include "opsys/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opsys/sampling.hpp"

namespace opsys {

const char* to_string(NormStrategy strategy) noexcept {
  switch (strategy) {
    case NormStrategy::Sampling: return "sampling";
    case NormStrategy::ClosedForm: return "closed-form";
    case NormStrategy::WitnessOnly: return "witness-only";
  }
  return "unknown";
}

namespace {

struct Entry {
  Eigen::Index row;
  Eigen::Index col;
  Scalar value;
};

using Sparse = std::vector<Entry>;

Sparse sparsify(const Matrix& m) {
  Sparse out;
  const DenseMatrix& v = m.values();
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index i = 0; i < v.rows(); ++i)
      if (v(i, j) != Scalar(0.0)) out.push_back({i, j, v(i, j)});
  return out;
}

/// The domain as a real vector space: x(theta) = sum theta_k inputs[k],
/// m(x(theta)) = sum theta_k images[k].
struct Linearization {
  Eigen::Index dim = 0;
  std::vector<Sparse> inputs;
  std::vector<Sparse> images;
  Eigen::VectorXd identity;  // coordinates of I

  DenseMatrix assemble(const std::vector<Sparse>& parts, const Eigen::VectorXd& theta) const {
    DenseMatrix out = DenseMatrix::Zero(dim, dim);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const double t = theta[static_cast<Eigen::Index>(k)];
      if (t == 0.0) continue;
      for (const Entry& e : parts[k]) out(e.row, e.col) += t * e.value;
    }
    return out;
  }
};

Linearization linearize(const MapId& m) {
  Linearization lin;
  lin.dim = static_cast<Eigen::Index>(m.ambient_dim());
  std::vector<Matrix> basis;
  if (const auto domain = m.domain()) {
    for (const SystemElement& e : parameter_basis(*domain)) basis.push_back(embed(e));
  } else {
    const std::size_t dim = m.ambient_dim();
    for (std::size_t i = 1; i <= dim; ++i)
      for (std::size_t j = 1; j <= dim; ++j) {
        basis.push_back(matrix_unit(dim, i, j, m.field()));
        if (m.field() == Field::Complex) basis.push_back(Scalar(0.0, 1.0) * matrix_unit(dim, i, j));
      }
  }
  lin.identity = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    lin.inputs.push_back(sparsify(basis[k]));
    lin.images.push_back(sparsify(apply(m, basis[k])));
    // I is the sum of the basis elements that are real 0/1 diagonal matrices:
    // the scalar parameters for the systems, the diagonal units for full algebras.
    bool diagonal_unit = true;
    for (const Entry& e : lin.inputs.back())
      if (e.row != e.col || e.value != Scalar(1.0)) diagonal_unit = false;
    if (diagonal_unit) lin.identity[static_cast<Eigen::Index>(k)] = 1.0;
  }
  return lin;
}

/// Value and gradient of a smoothed spectral norm. `sharpness` = 0 means the
/// exact spectral norm with the top singular pair as supergradient; otherwise
/// the Schatten p-norm with p = sharpness.
struct SpectralEval {
  double exact = 0.0;
  double smoothed = 0.0;
  Eigen::VectorXd gradient;
};

SpectralEval spectral(const Linearization& lin, const std::vector<Sparse>& parts,
                      const Eigen::VectorXd& theta, double sharpness) {
  const DenseMatrix x = lin.assemble(parts, theta);
  Eigen::BDCSVD<DenseMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  SpectralEval out;
  out.exact = s[0];
  out.gradient = Eigen::VectorXd::Zero(theta.size());
  if (s[0] <= 0.0) return out;

  Eigen::VectorXd weights = Eigen::VectorXd::Zero(s.size());
  double scale = 1.0;
  if (sharpness <= 0.0) {
    weights[0] = 1.0;
    out.smoothed = s[0];
  } else {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      const double r = s[i] / s[0];
      sum += std::pow(r, sharpness);
      weights[i] = std::pow(r, sharpness - 1.0);
    }
    out.smoothed = s[0] * std::pow(sum, 1.0 / sharpness);
    scale = std::pow(sum, 1.0 / sharpness - 1.0);
  }
  const DenseMatrix g = svd.matrixU() * weights.asDiagonal() * svd.matrixV().adjoint();
  for (std::size_t k = 0; k < parts.size(); ++k) {
    double acc = 0.0;
    for (const Entry& e : parts[k]) acc += (e.value * std::conj(g(e.row, e.col))).real();
    out.gradient[static_cast<Eigen::Index>(k)] = scale * acc;
  }
  return out;
}

struct Point {
  Eigen::VectorXd theta;
  double ratio = 0.0;     // exact ||m(x)|| / ||x||
  double smoothed = 0.0;  // objective of the current stage
  Eigen::VectorXd gradient;
};

class Search {
 public:
  Search(const Linearization& lin, NormEstimate& stats) : lin_(lin), stats_(stats) {}

  /// Evaluates at theta scaled so that ||x(theta)|| = 1. Returns false at x = 0.
  bool evaluate(Eigen::VectorXd theta, double sharpness, Point& out) {
    const SpectralEval in = spectral(lin_, lin_.inputs, theta, sharpness);
    if (!(in.exact > 1e-300) || !std::isfinite(in.exact)) return false;
    const SpectralEval im = spectral(lin_, lin_.images, theta, sharpness);
    ++stats_.evaluations;
    // The ratio is scale invariant, so its gradient scales by ||x|| on normalizing.
    const double norm = in.exact;
    out.theta = theta / norm;
    out.ratio = im.exact / in.exact;
    out.smoothed = im.smoothed / in.smoothed;
    out.gradient = norm * (im.gradient * in.smoothed - in.gradient * im.smoothed) /
                   (in.smoothed * in.smoothed);
    stats_.max_sampled = std::max(stats_.max_sampled, out.ratio);
    if (out.ratio > best_.ratio || best_.theta.size() == 0) best_ = out;
    return true;
  }

  const Point& best() const { return best_; }

 private:
  const Linearization& lin_;
  NormEstimate& stats_;
  Point best_;
};

/// Schatten exponents of the continuation; 0 is the exact spectral norm.
constexpr double kSharpness[] = {4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0, 0.0};

void ascend(Search& search, Point start, std::size_t budget, double tolerance, Sampler& sampler) {
  const std::size_t stages = std::size(kSharpness);
  const std::size_t per_stage = std::max<std::size_t>(1, budget / stages);
  Point current = std::move(start);
  for (const double sharpness : kSharpness) {
    if (!search.evaluate(current.theta, sharpness, current)) return;
    double step = 0.1;
    for (std::size_t it = 0; it < per_stage; ++it) {
      const double gnorm = current.gradient.norm();
      bool moved = false;
      Point trial;
      if (gnorm > 1e-14) {
        for (double s = step; s > 1e-12; s *= 0.5) {
          if (!search.evaluate(current.theta + (s / gnorm) * current.gradient, sharpness, trial))
            continue;
          if (trial.smoothed > current.smoothed) {
            step = std::min(1.0, 2.0 * s);
            moved = true;
            break;
          }
        }
      }
      if (!moved) {
        // Kinks stall the gradient step; probe a few random directions.
        for (int attempt = 0; attempt < 8 && !moved; ++attempt) {
          Eigen::VectorXd dir(current.theta.size());
          for (Eigen::Index k = 0; k < dir.size(); ++k) dir[k] = sampler.uniform(-1.0, 1.0);
          dir.normalize();
          const double s = step * std::pow(0.1, attempt % 4);
          if (search.evaluate(current.theta + s * dir, sharpness, trial) &&
              trial.smoothed > current.smoothed) {
            moved = true;
          }
        }
        if (!moved) break;
      }
      const double gain = trial.smoothed - current.smoothed;
      current = std::move(trial);
      if (gain < tolerance) break;
    }
  }
}

Eigen::VectorXd random_start(std::size_t size, Sampler& sampler) {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(size));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index k = 0; k < theta.size(); ++k) theta[k] = normal(sampler.engine());
  return theta;
}

}  // namespace

NormEstimate estimate_map_norm(const MapId& m, std::size_t restarts, std::uint64_t seed,
                               const NormSearchOptions& options) {
  if (restarts == 0) throw Error(ErrorKind::PreconditionViolated, "estimate_map_norm: restarts must be >= 1");
  const Linearization lin = linearize(m);
  NormEstimate estimate;
  Search search(lin, estimate);

  for (std::size_t r = 0; r < restarts; ++r) {
    Sampler sampler(derive_seed(seed, r));
    const Eigen::VectorXd theta = r == 0 ? lin.identity : random_start(lin.inputs.size(), sampler);
    Point start;
    if (!search.evaluate(theta, kSharpness[0], start)) continue;
    if (options.iterations > 0) {
      ascend(search, std::move(start), options.iterations, options.improvement_tolerance, sampler);
    }
  }

  const Point& best = search.best();
  const DenseMatrix raw = lin.assemble(lin.inputs, best.theta);
  const Field field = m.domain() ? m.domain()->field() : m.field();
  estimate.raw_input = Matrix(raw, Field::Complex).with_field(field);
  estimate.raw_input_norm = operator_norm(estimate.raw_input);
  estimate.witness = (1.0 / estimate.raw_input_norm) * estimate.raw_input;
  estimate.lower_bound = operator_norm(apply(m, estimate.witness));
  estimate.strategy = options.iterations == 0 ? NormStrategy::WitnessOnly : NormStrategy::Sampling;
  if (m.kind == MapKind::PairSwapComplex && m.n >= 2) {
    estimate.upper_bound = 2.0 / std::sqrt(3.0);
    estimate.strategy = NormStrategy::ClosedForm;
  }
  return estimate;
}

double pair_swap_norm_bound(Scalar a, Scalar b, const Matrix& c) {
  const Matrix x = embed(make_symmetric_pair(SystemKind::SymmetricPairComplex, a, b, c));
  if (operator_norm(x) > 1.0 + 1e-9) {
    throw Error(ErrorKind::PreconditionViolated, "pair_swap_norm_bound: element norm exceeds 1");
  }
  const double abs_a = std::abs(a);
  const double abs_b = std::abs(b);
  const double c_norm = operator_norm(c);
  return (abs_a + abs_b + std::sqrt((abs_b - abs_a) * (abs_b - abs_a) + 4.0 * c_norm * c_norm)) / 2.0;
}

}  // namespace opsys
