#pragma once

#include "funcord/functional.hpp"

namespace funcord {

struct ParallelSumResult {
  Functional value;
  /// Dimension of the orthogonal complement of the graph subspace.
  int projection_rank = 0;
  /// max_k |V^H pi(b_k) P|: how far the complement is from pi-invariant.
  double residual = 0.0;
};

/// f:g by the projection construction. With pi = pi_f (+) pi_g acting on
/// H_f (+) H_g and P the orthogonal projection onto the complement of
/// {pi_f(a) zeta_f (+) pi_g(a) zeta_g}, the result is
///
///   (f:g)(a) = <pi(a) P(zeta_f (+) 0), P(zeta_f (+) 0)>.
///
/// Throws NotRepresentable or AlgebraMismatch.
ParallelSumResult parallel_sum(const Functional& f, const Functional& g);

/// (f:g)(a^* a) as the minimum of f((a-b)^*(a-b)) + g(b^* b) over b,
/// attained at y = (Q_f + Q_g)^+ Q_f x for the Gram forms Q. Defined for
/// positive f and g; only the algebras are checked.
double variational_value(const Functional& f, const Functional& g,
                         const AlgebraElement& a);

/// Minimiser coefficients for `variational_value`.
Vector variational_minimizer(const Functional& f, const Functional& g,
                             const AlgebraElement& a);

/// f:g = 0 within 1e-8 * (1 + min(scale_f, scale_g)).
bool is_singular(const Functional& f, const Functional& g);

/// The largest entry of f:g, compared against the `is_singular` threshold.
double singularity_residual(const Functional& f, const Functional& g);

namespace detail {

/// f:g for already-built GNS triples of f and g, with the functionals
/// scaled by `f_scale`, `g_scale` > 0 (the triple of c*f is the triple of f
/// with quotient and cyclic vector multiplied by sqrt(c)).
ParallelSumResult parallel_sum(const AlgebraPtr& algebra, const GnsTriple& f,
                               double f_scale, const GnsTriple& g,
                               double g_scale);

}  // namespace detail

}  // namespace funcord
