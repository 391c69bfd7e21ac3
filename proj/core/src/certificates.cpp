#include "opsys/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opsys/maps.hpp"
#include "opsys/sampling.hpp"
#include "opsys/systems.hpp"

namespace opsys {

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Contradiction: return "contradiction";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::ExtensionExhibited: return "extension-exhibited";
  }
  return "unknown";
}

bool Verdict::narrative_holds() const {
  return std::all_of(narrative.begin(), narrative.end(), [](const ProofStep& s) { return s.holds(); });
}

double Verdict::max_residual() const {
  double worst = 0.0;
  for (const ProofStep& s : narrative)
    if (!s.assumed) worst = std::max(worst, s.residual);
  return worst;
}

SchurReport schur_implication(const Matrix& p, const Matrix& x, double tol) {
  if (p.dim() != x.dim()) throw Error(ErrorKind::DimensionMismatch, "schur_implication: P and X differ in size");
  const Matrix id = Matrix::identity(p.dim(), join(p.field(), x.field()));
  const PsdCheck block = is_psd(block2x2(p, x.adjoint(), x, id).with_field(Field::Complex), tol);
  const PsdCheck complement = is_psd(p - x.adjoint() * x, tol);
  return SchurReport{block.psd, complement.psd, block.min_eigenvalue, complement.min_eigenvalue};
}

namespace {

double negative_part(const Matrix& m) {
  return std::max(0.0, -hermitian_eigenvalues(m.hermitian_part()).front());
}

/// Shared pipeline for the scalar-diagonal and pair systems. `factor` is the
/// scale the map puts on the off-diagonal blocks (1/4 or 1).
Verdict schur_obstruction(std::size_t n, double factor, std::size_t threshold, Field field,
                          const std::function<Matrix(std::size_t i, std::size_t j)>& off_part_image,
                          const std::string& map_name) {
  Verdict v;
  const std::size_t j = 1;
  const Matrix id = Matrix::identity(n, field);
  const Matrix zero = Matrix::zero(n, field);
  const Matrix ejj = matrix_unit(n, j, j, field);

  double q_psd = 0.0;
  double image_form = 0.0;
  double schur = 0.0;
  Matrix sum_units = Matrix::zero(n, field);
  Matrix sum_bounds = Matrix::zero(n, field);
  for (std::size_t i = 1; i <= n; ++i) {
    const Matrix eii = matrix_unit(n, i, i, field);
    const Matrix eij = matrix_unit(n, i, j, field);
    const Matrix eji = matrix_unit(n, j, i, field);
    q_psd = std::max(q_psd, negative_part(block2x2(eii, eij, eji, id)));

    const Matrix expected = block2x2(zero, factor * eji, factor * eij, id);
    image_form = std::max(image_form, max_abs_diff(off_part_image(i, j), expected));

    // [[P_i, X*], [X, I]] with X = factor E_ij, so P_i >= X*X = factor^2 E_jj.
    const Matrix x = factor * eij;
    const Matrix bound = (factor * factor) * ejj;
    schur = std::max(schur, max_abs_diff(x.adjoint() * x, bound));
    const SchurReport at_bound = schur_implication(bound, x, 1e-12);
    const SchurReport below = schur_implication(bound - 1e-3 * id, x, 1e-12);
    if (!at_bound.agree() || !at_bound.block_psd || !below.agree() || below.block_psd) schur = 1.0;

    sum_units += eii;
    sum_bounds += bound;
  }
  const double nd = static_cast<double>(n);
  const Matrix total_bound = (nd * factor * factor) * ejj;
  const double margin = hermitian_eigenvalues(id - total_bound).front();

  v.narrative.push_back({"[[E_ii, E_ij], [E_ji, I]] is positive for every i (j = 1)", q_psd, 1e-12});
  v.narrative.push_back({map_name + " sends [[0, E_ij], [E_ji, I]] to [[0, f E_ji], [f E_ij, I]], f = " +
                             std::to_string(factor),
                         image_form, 1e-12});
  v.narrative.push_back({"Schur complement: positivity of the image forces P_i >= f^2 E_jj", schur, 1e-12});
  v.narrative.push_back({"sum_i E_ii = I, so I = sum_i P_i >= n f^2 E_jj",
                         std::max(max_abs_diff(sum_units, id), max_abs_diff(sum_bounds, total_bound)), 0.0});
  v.narrative.push_back({"min eigenvalue of I - n f^2 E_jj equals 1 - n f^2",
                         std::abs(margin - (1.0 - nd * factor * factor)), 1e-12});

  v.threshold = threshold;
  if (n >= threshold) {
    v.outcome = Outcome::Contradiction;
    v.witnesses.emplace_back("sum of P_i", id);
    v.witnesses.emplace_back("forced lower bound n f^2 E_11", total_bound);
  } else {
    v.outcome = Outcome::Inconclusive;
  }
  return v;
}

}  // namespace

Verdict certify_phi_unextendible(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "certify_phi_unextendible: n must be >= 1");
  const MapId phi{MapKind::QuarterTranspose, n};
  Verdict v = schur_obstruction(
      n, 0.25, 17, Field::Complex,
      [&](std::size_t i, std::size_t j) {
        return apply(phi, embed(make_scalar_diagonal(n, 0.0, 1.0, matrix_unit(n, i, j, Field::Complex),
                                                     matrix_unit(n, j, i, Field::Complex))));
      },
      "the quarter-transpose map");
  if (n <= 4) {
    v.narrative.push_back({"B -> B^t / 4 amplified to level n has norm n/4 <= 1, consistent with "
                           "a completely positive extension",
                           std::abs(transpose_cb_witness(n) - static_cast<double>(n) / 4.0), 1e-10});
  } else if (n <= 16) {
    v.narrative.push_back({"5 <= n <= 16: the obstruction does not apply and no extension is known", 0.0,
                           0.0, true});
  }
  return v;
}

Verdict certify_upsilon_unextendible(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "certify_upsilon_unextendible: n must be >= 1");
  const MapId upsilon{MapKind::PairSwap, n};
  if (n == 1) {
    Verdict v;
    v.outcome = Outcome::ExtensionExhibited;
    double residual = 0.0;
    for (const SystemElement& e : parameter_basis(SystemId{SystemKind::SymmetricPair, 1})) {
      residual = std::max(residual, max_abs_diff(apply(upsilon, embed(e)), embed(e)));
    }
    v.narrative.push_back({"n = 1: the map is the identity on its domain, extended by the identity", residual, 0.0});
    v.witnesses.emplace_back("extension applied to I", Matrix::identity(2, Field::Real));
    return v;
  }
  return schur_obstruction(
      n, 1.0, 2, Field::Real,
      [&](std::size_t i, std::size_t j) {
        return apply(upsilon,
                     embed(make_symmetric_pair(SystemKind::SymmetricPair, 0.0, 1.0, matrix_unit(n, i, j))));
      },
      "the pair-swap map");
}

namespace {

/// The least X with [[T, T], [T, X]] >= 0 for PSD T: T T^+ T, with T^+ the
/// pseudo-inverse on singular values above 1e-10.
Matrix schur_floor(const Matrix& t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(t.hermitian_part().values());
  const Eigen::VectorXd& s = eig.eigenvalues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (std::abs(s[k]) > 1e-10) inv[k] = 1.0 / s[k];
  const DenseMatrix pinv = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().adjoint();
  return Matrix(t.values() * pinv * t.values(), Field::Complex);
}

}  // namespace

double chi_forcing_check(std::size_t n, std::size_t trials, std::uint64_t seed) {
  const Matrix id = Matrix::identity(n);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix d;
    if (t == 0) {
      d = id;
    } else if (t == 1 && n >= 2) {
      d = matrix_unit(n, 1, 1, Field::Complex);
    } else {
      Sampler sampler(derive_seed(seed, t));
      Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(sampler.wishart(n, Field::Complex).values());
      Eigen::VectorXd spectrum(static_cast<Eigen::Index>(n));
      for (Eigen::Index k = 0; k < spectrum.size(); ++k)
        spectrum[k] = sampler.coin(0.2) ? (sampler.coin(0.5) ? 0.0 : 1.0) : sampler.uniform(0.0, 1.0);
      d = Matrix(eig.eigenvectors() * spectrum.asDiagonal() * eig.eigenvectors().adjoint(), Field::Complex)
              .hermitian_part();
    }
    const Matrix dt = d.transpose();
    // chi(D) >= D^t from the compression of [[D^t, D^t], [D^t, chi(D)]].
    const Matrix lower = schur_floor(dt);
    // chi(D) = I - chi(I - D) <= I - (I - D)^t.
    const Matrix upper = id - schur_floor((id - d).transpose());
    worst = std::max({worst, max_abs_diff(lower, dt), max_abs_diff(upper, dt), max_abs_diff(upper, lower)});
    // The floor really is attained: the block matrix at X = lower is positive.
    worst = std::max(worst, negative_part(block2x2(dt, dt, dt, lower)));
  }
  return worst;
}

namespace {

/// Self-adjoint matrices E_ii, E_ij + E_ji, i(E_ij - E_ji) (i < j): a real basis
/// of the Hermitian n x n matrices.
std::vector<Matrix> hermitian_spanning_set(std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(matrix_unit(n, i, i, Field::Complex));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      const Matrix eij = matrix_unit(n, i, j, Field::Complex);
      const Matrix eji = matrix_unit(n, j, i, Field::Complex);
      out.push_back(eij + eji);
      out.push_back(Scalar(0.0, 1.0) * (eij - eji));
    }
  return out;
}

/// Coordinates of a Hermitian matrix in hermitian_spanning_set order.
std::vector<double> hermitian_coordinates(const Matrix& a) {
  const std::size_t n = a.dim();
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(a(i, i).real());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      out.push_back(a(i, j).real());
      out.push_back(a(i, j).imag());
    }
  return out;
}

/// The extension's value at [[0, C*], [C, 0]] as forced by Kadison-Schwarz,
/// assembled from the forced values on the spanning set.
class ForcedOffDiagonal {
 public:
  explicit ForcedOffDiagonal(std::size_t n) : n_(n), span_(hermitian_spanning_set(n)) {
    for (const Matrix& s : span_) {
      real_.push_back(ks_forced_lower_bound(s, 1.0, 0.0));
      imag_.push_back(ks_forced_lower_bound(s, Scalar(0.0, 1.0), 0.0));
    }
  }

  /// Psi([[0, C*], [C, 0]]) with C = A + iB: value at (A, c = 1) plus value at (B, c = i).
  Matrix symmetric(const Matrix& c) const {
    const Matrix a = 0.5 * (c + c.adjoint());
    const Matrix b = Scalar(0.0, -0.5) * (c - c.adjoint());
    const auto ca = hermitian_coordinates(a);
    const auto cb = hermitian_coordinates(b);
    Matrix out = Matrix::zero(2 * n_);
    for (std::size_t k = 0; k < span_.size(); ++k) out += ca[k] * real_[k] + cb[k] * imag_[k];
    return out;
  }

  /// Psi([[0, 0], [C, 0]]) = (1/2) Psi([[0, C*], [C, 0]]) + (i/2) Psi([[0, (-iC)*], [-iC, 0]]).
  Matrix lower(const Matrix& c) const {
    return 0.5 * symmetric(c) + Scalar(0.0, 0.5) * symmetric(Scalar(0.0, -1.0) * c);
  }

  /// Psi([[0, B], [0, 0]]) = (1/2) Psi([[0, B], [B*, 0]]) + (i/2) Psi([[0, -iB], [iB*, 0]]).
  Matrix upper(const Matrix& b) const {
    const Matrix bs = b.adjoint();
    return 0.5 * symmetric(bs) + Scalar(0.0, 0.5) * symmetric(Scalar(0.0, 1.0) * bs);
  }

  const std::vector<Matrix>& span() const { return span_; }

 private:
  std::size_t n_;
  std::vector<Matrix> span_;
  std::vector<Matrix> real_;
  std::vector<Matrix> imag_;
};

}  // namespace

Verdict certify_gamma_unextendible(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "certify_gamma_unextendible: n must be >= 1");
  const MapId gamma{MapKind::CornerTranspose, n};
  const MapId psi{MapKind::BlockwiseTranspose, n};
  Verdict v;

  if (n == 1) {
    double residual = 0.0;
    for (const SystemElement& e : parameter_basis(SystemId{SystemKind::FreeCorner, 1})) {
      residual = std::max(residual, max_abs_diff(apply(gamma, embed(e)), embed(e)));
    }
    v.outcome = Outcome::ExtensionExhibited;
    v.narrative.push_back({"n = 1: the domain is all of M_2 and the map is the identity", residual, 0.0});
    v.witnesses.emplace_back("extension applied to I", Matrix::identity(2));
    return v;
  }

  constexpr double kTol = 1e-10;
  const Matrix zero = Matrix::zero(n);
  const ForcedOffDiagonal forced(n);
  const Scalar units[] = {Scalar(1.0), Scalar(0.0, 1.0)};

  double identities = 0.0;
  double sign_flip = 0.0;
  for (const Matrix& a : forced.span())
    for (const Scalar c : units)
      for (const double d : {0.0, 0.5, -1.0}) {
        identities = std::max(identities, ks_forcing_identities(a, c, d).max());
        sign_flip = std::max(sign_flip, max_abs_diff(ks_forced_lower_bound(a, -c, d),
                                                     -ks_forced_lower_bound(a, c, d)));
      }
  v.narrative.push_back({"premise: Psi(X^2) >= Psi(X)^2 for self-adjoint X in the domain "
                         "(Kadison-Schwarz for a positive unital norm-one extension)",
                         0.0, 0.0, true});
  v.narrative.push_back({"X^2, Psi(X^2) and Gamma(X)^2 match their block forms for X = [[A, conj(c) I], "
                         "[c I, d I]] over a spanning set of Hermitian A, c in {1, i}",
                         identities, kTol});
  v.narrative.push_back({"replacing c by -c negates the forced bound, so Psi([[0, conj(c) A], [c A, 0]]) "
                         "equals [[0, conj(c) A^t], [c A^t, 0]]",
                         sign_flip, kTol});

  double off_diagonal = 0.0;
  double corners = 0.0;
  double assembled = 0.0;
  for (std::size_t t = 0; t < 8; ++t) {
    Sampler sampler(derive_seed(seed, t));
    const Matrix b = sampler.gaussian(n, Field::Complex);
    const Matrix c = sampler.gaussian(n, Field::Complex);
    const Matrix a = sampler.gaussian(n, Field::Complex);
    const Matrix d = sampler.gaussian(n, Field::Complex);
    off_diagonal = std::max({off_diagonal,
                             max_abs_diff(forced.lower(c), block2x2(zero, zero, c.transpose(), zero)),
                             max_abs_diff(forced.upper(b), block2x2(zero, b.transpose(), zero, zero))});
    const Matrix top_left = apply(gamma, block2x2(a, zero, zero, zero));
    corners = std::max(corners, max_abs_diff(top_left, block2x2(a.transpose(), zero, zero, zero)));

    // chi(D) = D^t on the lower-right block, so the forced map is determined.
    const Matrix x = block2x2(a, b, c, d);
    const Matrix forced_image =
        top_left + forced.upper(b) + forced.lower(c) + block2x2(zero, zero, zero, d.transpose());
    assembled = std::max(assembled, max_abs_diff(forced_image, apply(psi, x)));
  }
  const Matrix lower_right_unit = block2x2(zero, zero, zero, Matrix::identity(n));
  corners = std::max(corners, max_abs_diff(apply(gamma, lower_right_unit), lower_right_unit));
  v.narrative.push_back({"C = A + iB with A, B Hermitian: Psi([[0, 0], [C, 0]]) = [[0, 0], [C^t, 0]] "
                         "and Psi([[0, B], [0, 0]]) = [[0, B^t], [0, 0]]",
                         off_diagonal, kTol});
  v.narrative.push_back({"upper-left block lies in the domain and is transposed; lower-right identity is fixed",
                         corners, kTol});
  v.narrative.push_back({"the squeeze D^t <= chi(D) <= I - (I - D)^t forces chi(D) = D^t for 0 <= D <= I",
                         chi_forcing_check(n, 16, seed), kTol});
  v.narrative.push_back({"the forced extension is the blockwise transpose", assembled, kTol});

  DenseMatrix vec = DenseMatrix::Zero(static_cast<Eigen::Index>(2 * n), 1);
  vec(0, 0) = 1.0;
  vec(static_cast<Eigen::Index>(n) + 1, 0) = 1.0;
  const Matrix input(vec * vec.adjoint(), Field::Complex);
  const Matrix image = apply(psi, input);
  const double input_min = hermitian_eigenvalues(input).front();
  const double image_min = hermitian_eigenvalues(image).front();
  v.narrative.push_back({"v v* with v = e_1 + e_(n+2) is positive", std::max(0.0, -input_min), kTol});
  v.narrative.push_back({"its blockwise transpose has eigenvalue -1", std::abs(image_min + 1.0), kTol});

  v.outcome = Outcome::Contradiction;
  v.threshold = 2;
  v.witnesses.emplace_back("positive input", input);
  v.witnesses.emplace_back("forced extension image", image);
  return v;
}

BasisAction::BasisAction(std::size_t dim, Field field, std::vector<Matrix> images)
    : dim_(dim), field_(field), images_(std::move(images)) {
  if (images_.size() != dim * dim) throw Error(ErrorKind::DimensionMismatch, "BasisAction: need dim^2 images");
  for (const Matrix& m : images_)
    if (m.dim() != dim) throw Error(ErrorKind::DimensionMismatch, "BasisAction: image has the wrong size");
}

BasisAction BasisAction::from_function(std::size_t dim, Field field,
                                       const std::function<Matrix(const Matrix&)>& f) {
  std::vector<Matrix> images;
  images.reserve(dim * dim);
  for (std::size_t i = 1; i <= dim; ++i)
    for (std::size_t j = 1; j <= dim; ++j) images.push_back(f(matrix_unit(dim, i, j, field)));
  return BasisAction(dim, field, std::move(images));
}

Matrix BasisAction::operator()(const Matrix& x) const {
  if (x.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "BasisAction: input has the wrong size");
  if (field_ == Field::Real && !x.is_real()) throw Error(ErrorKind::FieldMismatch, "BasisAction: complex input");
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const Scalar coefficient = x(i, j);
      if (coefficient != Scalar(0.0)) out += coefficient * images_[i * dim_ + j].values();
    }
  return Matrix(std::move(out), Field::Complex).with_field(field_ == Field::Real ? Field::Real : Field::Complex);
}

std::optional<FalsifyWitness> falsify_extension(const BasisAction& candidate, std::size_t trials,
                                                std::uint64_t seed, double tol) {
  const std::size_t dim = candidate.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix input;
    if (t == 0 && dim >= 4 && dim % 2 == 0) {
      DenseMatrix vec = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), 1);
      vec(0, 0) = 1.0;
      vec(static_cast<Eigen::Index>(dim / 2) + 1, 0) = 1.0;
      input = Matrix(vec * vec.adjoint(), Field::Complex).with_field(candidate.field());
    } else {
      Sampler sampler(derive_seed(seed, t));
      input = t % 2 == 0 ? sampler.rank_one_psd(dim, candidate.field()) : sampler.wishart(dim, candidate.field());
    }
    Matrix output = candidate(input);
    const PsdCheck check = is_psd(output, tol);
    if (!check.psd) return FalsifyWitness{t, std::move(input), std::move(output), check.min_eigenvalue};
  }
  return std::nullopt;
}

}  // namespace opsys
