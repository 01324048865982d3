#include "funcord/functional.hpp"

#include <cmath>

#include "funcord/error.hpp"
#include "funcord/functional_detail.hpp"

namespace funcord {

Functional::Functional(AlgebraPtr algebra, Vector values)
    : algebra_(std::move(algebra)), values_(std::move(values)) {
  if (!algebra_)
    throw Error(ErrorKind::Construction, "functional without algebra");
  if (values_.size() != algebra_->dim())
    throw Error(ErrorKind::SizeMismatch,
                "functional has " + std::to_string(values_.size()) +
                    " values, algebra dimension is " +
                    std::to_string(algebra_->dim()));
}

Functional Functional::zero(const AlgebraPtr& algebra) {
  return {algebra, Vector::Zero(algebra->dim())};
}

double Functional::scale() const { return linalg::max_abs(values_); }

void require_same_algebra(const Functional& f, const Functional& g) {
  if (!same_algebra(f.algebra(), g.algebra()))
    throw Error(ErrorKind::AlgebraMismatch,
                "functionals on " + f.algebra()->label() + " and " +
                    g.algebra()->label());
}

Functional Functional::operator+(const Functional& other) const {
  require_same_algebra(*this, other);
  return {algebra_, values_ + other.values_};
}

Functional Functional::operator-(const Functional& other) const {
  require_same_algebra(*this, other);
  return {algebra_, values_ - other.values_};
}

Functional Functional::operator*(double scalar) const {
  return {algebra_, values_ * scalar};
}

Complex evaluate(const Functional& f, const AlgebraElement& a) {
  if (!same_algebra(f.algebra(), a.algebra()))
    throw Error(ErrorKind::AlgebraMismatch,
                "functional on " + f.algebra()->label() + ", element of " +
                    a.algebra()->label());
  return f.values().transpose() * a.coeffs();
}

bool approx_equal(const Functional& f, const Functional& g, double rel_tol) {
  require_same_algebra(f, g);
  const double scale = std::max(f.scale(), g.scale());
  return linalg::max_abs(Vector(f.values() - g.values())) <=
         rel_tol * (1.0 + scale);
}

GramMatrix gram_matrix(const Functional& f) {
  const StarAlgebra& alg = *f.algebra();
  const int d = alg.dim();
  GramMatrix out{Matrix::Zero(d, d), 0.0};
  for (int j = 0; j < d; ++j) {
    // Left multiplication by b_j^*.
    Matrix adj = Matrix::Zero(d, d);
    for (int p = 0; p < d; ++p)
      if (alg.involution()(j, p) != Complex{})
        adj += alg.involution()(j, p) * alg.left_multiplication(p);
    out.entries.col(j) = adj.transpose() * f.values();
  }
  out.scale = linalg::max_abs(out.entries);
  return out;
}

PositivityReport check_positive(const Functional& f, double reference_scale) {
  GramMatrix gram = gram_matrix(f);
  const Matrix q = gram.form();
  PositivityReport report;
  report.tolerance = 1e-9 * (1.0 + std::max(gram.scale, reference_scale));
  report.hermitian_residual = linalg::max_abs(Matrix(q - q.adjoint()));
  linalg::Spectrum spectrum = linalg::hermitian_eig(q);
  report.min_eigenvalue = spectrum.values.size() ? spectrum.values(0) : 0.0;
  report.positive = report.hermitian_residual <= report.tolerance &&
                    report.min_eigenvalue >= -report.tolerance;
  if (report.min_eigenvalue < -report.tolerance) {
    Vector v = spectrum.vectors.col(0);
    Eigen::Index lead = 0;
    v.cwiseAbs().maxCoeff(&lead);
    v *= std::conj(v(lead)) / std::abs(v(lead));
    report.witness.emplace(f.algebra(), std::move(v));
  }
  return report;
}

bool is_positive(const Functional& f) { return check_positive(f).positive; }

bool leq(const Functional& f, const Functional& g) {
  require_same_algebra(f, g);
  const double reference =
      std::max(gram_matrix(f).scale, gram_matrix(g).scale);
  return check_positive(g - f, reference).positive;
}

namespace detail {

FormAnalysis analyze(const Functional& f) {
  FormAnalysis out;
  out.form = linalg::hermitian_part(gram_matrix(f).form());
  const int d = f.algebra()->dim();
  linalg::Spectrum spectrum = linalg::hermitian_eig(out.form);
  const double top = d ? spectrum.values.maxCoeff() : 0.0;
  const double cut = top > 0.0 ? linalg::kRankCut * top : 0.0;
  std::vector<Eigen::Index> kept, dropped;
  for (Eigen::Index i = d - 1; i >= 0; --i)
    (top > 0.0 && spectrum.values(i) > cut ? kept : dropped).push_back(i);
  const auto r = static_cast<Eigen::Index>(kept.size());
  out.eigenvalues.resize(r);
  out.range.resize(d, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    out.eigenvalues(c) = spectrum.values(kept[c]);
    out.range.col(c) = spectrum.vectors.col(kept[c]);
  }
  out.null_space.resize(d, static_cast<Eigen::Index>(dropped.size()));
  for (std::size_t c = 0; c < dropped.size(); ++c)
    out.null_space.col(static_cast<Eigen::Index>(c)) =
        spectrum.vectors.col(dropped[c]);
  out.top_eigenvalue = std::max(top, 0.0);

  const RealVector sqrt_l = out.eigenvalues.cwiseSqrt();
  out.quotient = sqrt_l.asDiagonal() * out.range.adjoint();

  // conj(phi) must lie in the range of the form.
  const Vector target = f.values().conjugate();
  const Vector in_range = out.range * (out.range.adjoint() * target);
  out.membership_residual = (target - in_range).norm();
  out.membership_tolerance = kMembershipTol * (1.0 + target.norm());
  out.cyclic = sqrt_l.cwiseInverse().asDiagonal() * (out.range.adjoint() * target);
  return out;
}

double quotient_action_residual(const Functional& f, const FormAnalysis& a,
                                int* worst_basis) {
  const StarAlgebra& alg = *f.algebra();
  double worst = 0.0;
  if (worst_basis) *worst_basis = -1;
  if (a.range.cols() == 0 || a.null_space.cols() == 0) return 0.0;
  const double reference =
      std::sqrt(a.top_eigenvalue) * std::max(1.0, alg.structure_scale());
  for (int k = 0; k < alg.dim(); ++k) {
    Matrix leak = a.quotient * alg.left_multiplication(k) * a.null_space;
    const double r = linalg::max_abs(leak) / reference;
    if (r > worst) {
      worst = r;
      if (worst_basis) *worst_basis = k;
    }
  }
  return worst;
}

}  // namespace detail

double hilbert_bound(const Functional& f) {
  if (!is_positive(f))
    throw Error(ErrorKind::NotRepresentable,
                "hilbert_bound: functional is not positive");
  detail::FormAnalysis a = detail::analyze(f);
  if (a.membership_residual > a.membership_tolerance)
    throw Error(ErrorKind::NotRepresentable,
                "hilbert_bound: cyclic bound fails, values not in the range "
                "of the Gram form (residual " +
                    std::to_string(a.membership_residual) + ")");
  return a.cyclic.squaredNorm();
}

RepresentabilityReport check_representable(const Functional& f) {
  RepresentabilityReport report;
  PositivityReport pos = check_positive(f);
  if (!pos.positive) {
    report.failed_condition = "positivity";
    report.detail = "Gram form is not Hermitian positive semidefinite";
    report.witness = pos.witness;
    report.residual = std::max(pos.hermitian_residual, -pos.min_eigenvalue);
    return report;
  }
  detail::FormAnalysis a = detail::analyze(f);
  if (a.membership_residual > a.membership_tolerance) {
    report.failed_condition = "cyclic_bound";
    report.detail =
        "values are not in the range of the Gram form: |f(a)|^2 <= M "
        "f(a*a) fails for every M";
    report.residual = a.membership_residual;
    // The null-space direction carrying the offending component.
    const Vector target = f.values().conjugate();
    Vector outside = a.null_space * (a.null_space.adjoint() * target);
    if (outside.norm() > 0.0)
      report.witness.emplace(f.algebra(), Vector(outside.conjugate() / outside.norm()));
    return report;
  }
  int worst = -1;
  const double leak = detail::quotient_action_residual(f, a, &worst);
  if (leak > kMembershipTol) {
    report.failed_condition = "quotient_action";
    report.detail = "left multiplication by basis element " +
                    std::to_string(worst) +
                    " does not preserve the null space of the Gram form";
    report.residual = leak;
    report.witness = AlgebraElement::basis(f.algebra(), worst);
    return report;
  }
  report.representable = true;
  report.hilbert_bound = a.cyclic.squaredNorm();
  report.residual = std::max(a.membership_residual, leak);
  return report;
}

bool is_representable(const Functional& f) {
  return check_representable(f).representable;
}

Matrix GnsTriple::represent(const AlgebraElement& a) const {
  Matrix out = Matrix::Zero(space_dim, space_dim);
  for (Eigen::Index i = 0; i < a.coeffs().size(); ++i)
    if (a.coeffs()(i) != Complex{}) out += a.coeffs()(i) * rep[i];
  return out;
}

Vector GnsTriple::vector_of(const AlgebraElement& a) const {
  return quotient * a.coeffs();
}

GnsTriple gns_triple(const Functional& f) {
  RepresentabilityReport report = check_representable(f);
  if (!report.representable)
    throw Error(ErrorKind::NotRepresentable,
                "gns_triple: " + report.failed_condition + " fails: " +
                    report.detail);
  detail::FormAnalysis a = detail::analyze(f);
  const StarAlgebra& alg = *f.algebra();
  GnsTriple triple;
  triple.space_dim = static_cast<int>(a.range.cols());
  triple.quotient = a.quotient;
  triple.cyclic = a.cyclic;
  const RealVector inv_sqrt = a.eigenvalues.cwiseSqrt().cwiseInverse();
  const Matrix lift = a.range * inv_sqrt.asDiagonal();  // right inverse of quotient
  triple.rep.reserve(static_cast<std::size_t>(alg.dim()));
  for (int k = 0; k < alg.dim(); ++k)
    triple.rep.push_back(a.quotient * alg.left_multiplication(k) * lift);

  double residual = 0.0;
  for (int k = 0; k < alg.dim(); ++k) {
    const Complex rebuilt = triple.cyclic.dot(triple.rep[k] * triple.cyclic);
    residual = std::max(residual, std::abs(rebuilt - f.values()(k)));
  }
  triple.reconstruction_residual = residual;
  if (residual > 1e-7 * (1.0 + f.values().norm()))
    throw Error(ErrorKind::VerificationFailed,
                "gns_triple: reconstruction residual " +
                    std::to_string(residual));
  return triple;
}

}  // namespace funcord
