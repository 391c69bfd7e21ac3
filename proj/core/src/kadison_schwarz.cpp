#include <algorithm>
#include <cmath>

#include "opsys/maps.hpp"

namespace opsys {

KadisonSchwarzResult check_kadison_schwarz(const MapId& m, const Matrix& x, double tol) {
  if (x.dim() != m.ambient_dim()) {
    throw Error(ErrorKind::DomainViolation, "check_kadison_schwarz: wrong size");
  }
  if (asymmetry(x) > tol) {
    throw Error(ErrorKind::PreconditionViolated, "check_kadison_schwarz: argument is not self-adjoint");
  }
  const auto domain = m.domain();
  if (domain && !contains(*domain, x)) {
    throw Error(ErrorKind::DomainViolation, "check_kadison_schwarz: argument outside the domain");
  }
  const Matrix image = apply(m, x);
  const Matrix square = x * x;

  KadisonSchwarzResult result;
  Matrix image_of_square;
  if (!domain || contains(*domain, square)) {
    image_of_square = apply(m, square);
  } else {
    image_of_square = extension_candidate(m, square);
    result.used_candidate = true;
  }
  result.defect = image_of_square - image * image;
  result.min_defect_eigenvalue = hermitian_eigenvalues(result.defect.hermitian_part()).front();
  result.holds = result.min_defect_eigenvalue >= -tol;
  return result;
}

double KsIdentityResiduals::max() const {
  return std::max({square, candidate_square, square_of_image, forced_lower_bound});
}

namespace {

struct ForcingParts {
  Matrix x;
  Matrix square;
  Matrix off_part;
  Matrix in_domain_part;
};

ForcingParts forcing_parts(const Matrix& a, Scalar c, double d) {
  const std::size_t n = a.dim();
  if (asymmetry(a) > 1e-12) {
    throw Error(ErrorKind::PreconditionViolated, "Kadison-Schwarz forcing: A must be Hermitian");
  }
  const Matrix A = a.with_field(Field::Complex);
  const Matrix zero = Matrix::zero(n);
  ForcingParts p;
  p.x = embed(make_free_corner(SystemKind::FreeCorner, A, std::conj(c), c, d));
  p.square = p.x * p.x;
  // X^2 splits into a FreeCorner part plus [[0, conj(c) A], [c A, 0]].
  p.off_part = block2x2(zero, std::conj(c) * A, c * A, zero);
  p.in_domain_part = p.square - p.off_part;
  if (!contains(SystemId{SystemKind::FreeCorner, n}, p.in_domain_part, 1e-9)) {
    throw Error(ErrorKind::DomainViolation, "Kadison-Schwarz forcing: split of X^2 left the system");
  }
  return p;
}

}  // namespace

Matrix ks_forced_lower_bound(const Matrix& a, Scalar c, double d) {
  const ForcingParts p = forcing_parts(a, c, d);
  const MapId gamma{MapKind::CornerTranspose, a.dim()};
  const Matrix image = apply(gamma, p.x);
  return image * image - apply(gamma, p.in_domain_part);
}

KsIdentityResiduals ks_forcing_identities(const Matrix& a, Scalar c, double d) {
  const std::size_t n = a.dim();
  const ForcingParts p = forcing_parts(a, c, d);
  const Matrix A = a.with_field(Field::Complex);
  const Matrix At = A.transpose();
  const Matrix id = Matrix::identity(n);
  const Matrix zero = Matrix::zero(n);
  const Scalar cbar = std::conj(c);
  const double c2 = std::norm(c);

  const MapId gamma{MapKind::CornerTranspose, n};
  const MapId psi{MapKind::BlockwiseTranspose, n};

  const Matrix candidate_square = apply(psi, p.square);
  const Matrix image = apply(gamma, p.x);
  const Matrix image_squared = image * image;
  const Matrix lower_bound = ks_forced_lower_bound(a, c, d);

  // Closed forms assembled from blocks.
  const Matrix a_plus_d = A + d * id;
  const Matrix at_plus_d = At + d * id;
  const Matrix corner_sq = A * A + c2 * id;
  const Matrix corner_sq_t = At * At + c2 * id;
  const Matrix tail = (c2 + d * d) * id;
  const Matrix square_form = block2x2(corner_sq, cbar * a_plus_d, c * a_plus_d, tail);
  const Matrix candidate_form = block2x2(corner_sq_t, (cbar * d) * id, (c * d) * id, tail) +
                                block2x2(zero, cbar * At, c * At, zero);
  const Matrix image_sq_form = block2x2(corner_sq_t, cbar * at_plus_d, c * at_plus_d, tail);
  const Matrix bound_form = block2x2(zero, cbar * At, c * At, zero);

  KsIdentityResiduals r;
  r.square = max_abs_diff(p.square, square_form);
  r.candidate_square =
      std::max(max_abs_diff(candidate_square, candidate_form),
               max_abs_diff(apply(gamma, p.in_domain_part) + apply(psi, p.off_part), candidate_form));
  r.square_of_image = max_abs_diff(image_squared, image_sq_form);
  r.forced_lower_bound = max_abs_diff(lower_bound, bound_form);
  return r;
}

}  // namespace opsys
