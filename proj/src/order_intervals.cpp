#include "funcord/order_intervals.hpp"

#include "funcord/error.hpp"
#include "funcord/lebesgue.hpp"
#include "funcord/parallel_sum.hpp"

namespace funcord {

std::string to_string(InfimumStatus status) {
  switch (status) {
    case InfimumStatus::Exists: return "exists";
    case InfimumStatus::NotExists: return "not_exists";
    case InfimumStatus::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_extreme_in_interval(const Functional& h, const Functional& lo,
                            const Functional& hi) {
  require_same_algebra(h, lo);
  require_same_algebra(h, hi);
  if (!leq(lo, h) || !leq(h, hi))
    throw Error(ErrorKind::OrderViolation,
                "is_extreme_in_interval: need lo <= h <= hi");
  return is_singular(h - lo, hi - h);
}

ExtremeEquivalenceReport extreme_equivalences(const Functional& g,
                                              const Functional& f,
                                              double tol) {
  require_same_algebra(g, f);
  if (!leq(g, f))
    throw Error(ErrorKind::OrderViolation, "extreme_equivalences: need g <= f");
  ExtremeEquivalenceReport report;
  report.threshold = tol * (1.0 + f.scale());
  report.singularity_residual = singularity_residual(g, f - g);
  report.regular_gap = linalg::max_abs(
      Vector(regular_part(f, g).values() - g.values()));
  report.disjoint_part = report.singularity_residual <= report.threshold;
  report.fixed_by_regular_part = report.regular_gap <= report.threshold;

  const double band = 10.0 * report.threshold;
  const bool conflict =
      (report.disjoint_part && report.regular_gap >= band) ||
      (report.fixed_by_regular_part && report.singularity_residual >= band);
  if (conflict)
    throw Error(ErrorKind::ToleranceConflict,
                "extreme_equivalences: disjoint-part residual " +
                    std::to_string(report.singularity_residual) +
                    " and regular-part gap " +
                    std::to_string(report.regular_gap) + " disagree");
  return report;
}

InfimumResult infimum(const Functional& f, const Functional& g, double tol) {
  require_same_algebra(f, g);
  const Functional u = regular_part(g, f, tol);  // [f]g
  const Functional v = regular_part(f, g, tol);  // [g]f
  const bool u_below = leq(u, v);
  const bool v_below = leq(v, u);
  InfimumResult result;
  if (u_below) {
    result.status = InfimumStatus::Exists;
    result.value = u;
    result.equal = v_below;
    result.reason = v_below ? "[f]g and [g]f are equal; infimum is [f]g"
                            : "[f]g <= [g]f; infimum is [f]g";
  } else if (v_below) {
    result.status = InfimumStatus::Exists;
    result.value = v;
    result.reason = "[g]f <= [f]g; infimum is [g]f";
  } else if (f.algebra()->is_full_matrix_algebra()) {
    result.status = InfimumStatus::NotExists;
    result.reason =
        "[f]g and [g]f are incomparable; on a full matrix algebra "
        "comparability is necessary";
  } else {
    result.status = InfimumStatus::Unknown;
    result.reason = "sufficient condition failed: [f]g and [g]f are incomparable";
  }
  return result;
}

Functional extreme_meet(const Functional& u, const Functional& h,
                        const Functional& f, double tol) {
  require_same_algebra(u, h);
  require_same_algebra(u, f);
  if (!leq(h, f))
    throw Error(ErrorKind::OrderViolation, "extreme_meet: need h <= f");
  if (!is_extreme_in_interval(u, Functional::zero(f.algebra()), f))
    throw Error(ErrorKind::OrderViolation,
                "extreme_meet: u is not an extreme point of [0, f]");
  Functional meet = regular_part(h, u);
  if (is_extreme_in_interval(h, Functional::zero(f.algebra()), f)) {
    const Functional other = regular_part(u, h);
    const double gap = linalg::max_abs(Vector(other.values() - meet.values()));
    if (gap > tol * (1.0 + f.scale()))
      throw Error(ErrorKind::ToleranceConflict,
                  "extreme_meet: [u]h and [h]u differ by " +
                      std::to_string(gap));
  }
  return meet;
}

}  // namespace funcord
