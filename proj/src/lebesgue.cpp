#include "funcord/lebesgue.hpp"

#include <cmath>

#include "funcord/aitken.hpp"
#include "funcord/error.hpp"
#include "funcord/functional_detail.hpp"
#include "funcord/parallel_sum.hpp"

namespace funcord {

std::string to_string(RegularPartRoute route) {
  return route == RegularPartRoute::Limit ? "limit" : "commutant";
}

namespace {

/// Clips negligible negative eigenvalues of the Gram form and rebuilds the
/// values through the unit, f(b_i) = f(1^* b_i). Algebras without a unit
/// are returned unchanged.
Functional clip_negative_directions(const Functional& f) {
  const auto& unit = f.algebra()->unit();
  if (!unit) return f;
  const Matrix q = linalg::hermitian_part(gram_matrix(f).form());
  linalg::Spectrum s = linalg::hermitian_eig(q);
  if (s.values.size() == 0 || s.values(0) >= 0.0) return f;
  const double negligible = 1e-8 * (1.0 + linalg::max_abs(q));
  if (s.values(0) < -negligible) return f;
  const Matrix clipped = s.vectors * s.values.cwiseMax(0.0).asDiagonal() *
                         s.vectors.adjoint();
  Vector rebuilt = clipped.transpose() * unit->conjugate();
  if (linalg::max_abs(Vector(rebuilt - f.values())) > negligible) return f;
  return {f.algebra(), std::move(rebuilt)};
}

RegularPartTrace limit_route(const Functional& f, const Functional& g,
                             const RegularPartOptions& options) {
  if (!(options.tol > 0.0))
    throw Error(ErrorKind::NoConvergence, "regular_part: tol must be > 0");
  require_same_algebra(f, g);
  const GnsTriple tf = gns_triple(f);
  const GnsTriple tg = gns_triple(g);
  const double scale = std::max(1.0, f.scale());
  const double threshold = options.tol * scale;
  const double guard = 1e-14 * scale;

  RegularPartTrace trace{Functional::zero(f.algebra()), {}, 0, false, 0.0,
                         0.0, RegularPartRoute::Limit, std::nullopt};
  std::vector<Vector> raw;
  Vector previous_estimate;
  Vector estimate;
  int converged_at = -1;
  int accelerated = 0;
  Vector last_delta;

  for (int k = 0; k <= options.k_max; ++k) {
    ParallelSumResult s =
        detail::parallel_sum(f.algebra(), tf, 1.0, tg, std::ldexp(1.0, k));
    raw.push_back(s.value.values());
    trace.iterates.push_back(std::move(s.value));
    trace.iterations = k;
    // Convergence only counts while every raw component is contracting.
    bool contracting = false;
    if (k > 0) {
      const Vector delta = raw[k] - raw[k - 1];
      if (k > 1)
        contracting = (delta.cwiseAbs().array() <=
                       0.75 * last_delta.cwiseAbs().array() + guard)
                          .all();
      last_delta = delta;
    }
    if (k < 2) continue;
    previous_estimate = estimate;
    estimate = aitken_delta2(raw[k - 2], raw[k - 1], raw[k], guard, &accelerated);
    if (k < 3) continue;
    trace.final_increment =
        linalg::max_abs(Vector(estimate - previous_estimate));
    if (!contracting)
      converged_at = -1;
    else if (converged_at < 0 && trace.final_increment < threshold)
      converged_at = k;
    if (converged_at >= 0 &&
        (k - converged_at >= options.refine_steps || k == options.k_max))
      break;
  }
  if (converged_at < 0)
    throw Error(ErrorKind::NoConvergence,
                "regular_part: extrapolated increment " +
                    std::to_string(trace.final_increment) + " above tol after " +
                    std::to_string(options.k_max) + " doublings");

  trace.extrapolated = accelerated > 0;
  trace.raw_gap = linalg::max_abs(Vector(estimate - raw.back()));
  trace.value = clip_negative_directions(Functional(f.algebra(), estimate));
  return trace;
}

}  // namespace

Functional regular_part_commutant(const Functional& f, const Functional& g) {
  require_same_algebra(f, g);
  if (!is_representable(f) || !is_representable(g))
    throw Error(ErrorKind::NotRepresentable,
                "regular_part_commutant: inputs must be representable");
  const Functional h = f + g;
  detail::FormAnalysis a = detail::analyze(h);
  const Eigen::Index r = a.range.cols();
  if (r == 0) return Functional::zero(f.algebra());
  const Matrix qf = linalg::hermitian_part(gram_matrix(f).form());
  const Matrix qg = linalg::hermitian_part(gram_matrix(g).form());
  const RealVector inv_sqrt = a.eigenvalues.cwiseSqrt().cwiseInverse();
  const Matrix lift = a.range * inv_sqrt.asDiagonal();
  // Radon-Nikodym derivatives of f and g with respect to f + g; both commute
  // with pi_{f+g} and add up to the identity.
  const Matrix df = linalg::hermitian_part(lift.adjoint() * qf * lift);
  const Matrix dg = linalg::hermitian_part(lift.adjoint() * qg * lift);
  const Matrix support = linalg::projector(linalg::positive_range(dg), r);
  const Matrix rn = support * df * support;
  Vector values = (a.cyclic.adjoint() * rn * a.quotient).transpose();
  return {f.algebra(), std::move(values)};
}

RegularPartTrace regular_part_trace(const Functional& f, const Functional& g,
                                    const RegularPartOptions& options) {
  RegularPartTrace trace = limit_route(f, g, options);
  if (options.route == RegularPartRoute::Commutant) {
    Functional exact = regular_part_commutant(f, g);
    trace.route_divergence =
        linalg::max_abs(Vector(exact.values() - trace.value.values()));
    trace.value = std::move(exact);
    trace.route = RegularPartRoute::Commutant;
  }
  return trace;
}

Functional regular_part(const Functional& f, const Functional& g, double tol) {
  RegularPartOptions options;
  options.tol = tol;
  return regular_part_trace(f, g, options).value;
}

double domination_constant(const Functional& f, const Functional& g) {
  require_same_algebra(f, g);
  const Matrix qf = linalg::hermitian_part(gram_matrix(f).form());
  const Matrix qg = linalg::hermitian_part(gram_matrix(g).form());
  const Eigen::Index d = qf.rows();
  const linalg::Range range = linalg::positive_range(qg);
  const Matrix outside = Matrix::Identity(d, d) - linalg::projector(range, d);
  const double leak = linalg::max_abs(Matrix(outside * qf * outside));
  if (leak > kDominationTol * (1.0 + linalg::max_abs(qf)))
    throw Error(ErrorKind::NotDominated,
                "domination_constant: range of f's Gram form is not inside "
                "the range of g's (leak " + std::to_string(leak) + ")");
  if (range.rank() == 0) return 0.0;
  const RealVector inv_sqrt = range.values.cwiseSqrt().cwiseInverse();
  const Matrix lift = range.basis * inv_sqrt.asDiagonal();
  linalg::Spectrum s = linalg::hermitian_eig(lift.adjoint() * qf * lift);
  return std::max(0.0, s.values.maxCoeff());
}

bool is_absolutely_continuous(const Functional& f, const Functional& g) {
  try {
    domination_constant(f, g);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotDominated) return false;
    throw;
  }
}

DecompositionReport lebesgue_decompose(const Functional& f,
                                       const Functional& g,
                                       const RegularPartOptions& options) {
  RegularPartTrace trace = regular_part_trace(f, g, options);
  Functional singular = f - trace.value;
  const double reference = gram_matrix(f).scale;
  PositivityReport pos = check_positive(singular, reference);
  if (!pos.positive)
    throw Error(ErrorKind::InvalidDecomposition,
                "lebesgue_decompose: singular part is not positive (min "
                "eigenvalue " + std::to_string(pos.min_eigenvalue) + ")");
  if (!leq(trace.value, f))
    throw Error(ErrorKind::InvalidDecomposition,
                "lebesgue_decompose: regular part exceeds f");

  DecompositionReport report{trace.value, singular, 0.0, trace.iterations,
                             trace.extrapolated, 0.0, trace.raw_gap,
                             trace.route, trace.route_divergence};
  report.domination_constant = domination_constant(trace.value, g);
  report.residual_singularity = singularity_residual(singular, g);
  return report;
}

UniquenessCertificate uniqueness_certificate(const Functional& f,
                                             const Functional& g,
                                             const RegularPartOptions& options) {
  const Functional regular = regular_part_trace(f, g, options).value;
  return {true, domination_constant(regular, g)};
}

}  // namespace funcord
