#pragma once

#include <vector>

#include "funcord/functional.hpp"

// Independent implementations of the commutative (finite measure) and
// trace-class (PSD matrix) settings. Nothing here calls into the generic
// pipeline's numerics; only the Functional container types are shared.

namespace funcord::oracle {

/// Non-negative weights on a finite set of atoms.
class Measure {
 public:
  /// Throws Construction if any weight is below -1e-12.
  explicit Measure(RealVector weights);

  const RealVector& weights() const noexcept { return weights_; }
  int atoms() const noexcept { return static_cast<int>(weights_.size()); }

 private:
  RealVector weights_;
};

struct MeasureDecomposition {
  Measure regular;   // absolutely continuous part
  Measure singular;
};

/// mu restricted to the support of nu, and the remainder.
MeasureDecomposition measure_lebesgue(const Measure& mu, const Measure& nu);

/// Atomwise minimum. For at most 10 atoms it is also recomputed from
///   (mu ^ nu)(E) = inf_F mu(E n F) + nu(E \ F)
/// over all subsets F, for E the full set and every singleton; a mismatch
/// throws CrossCheckFailed.
Measure measure_infimum(const Measure& mu, const Measure& nu);

/// The brute-force subset formula for a single set E (bit mask).
double measure_infimum_on_set(const Measure& mu, const Measure& nu,
                              unsigned set_mask);

/// Atomwise harmonic combination mu nu / (mu + nu), 0 where both vanish.
Measure measure_parallel_sum(const Measure& mu, const Measure& nu);

/// Disjoint supports.
bool measure_singular(const Measure& mu, const Measure& nu,
                      double tol = 1e-12);

/// mu_f for f on functions(m); throws NotCommutativeAlgebra otherwise.
Measure measure_of(const Functional& f);
Functional functional_of(const AlgebraPtr& algebra, const Measure& mu);

/// Hermitian PSD matrix F standing for f(T) = trace(F T).
class TraceMatrix {
 public:
  /// Throws Construction unless Hermitian and PSD within 1e-9 (1 + scale).
  explicit TraceMatrix(Matrix entries);

  const Matrix& entries() const noexcept { return entries_; }
  int size() const noexcept { return static_cast<int>(entries_.rows()); }

 private:
  Matrix entries_;
};

/// A:B = A - A (A + B)^+ A, checked against the variational minimum
/// x^H (A:B) x = (x - y)^H A (x - y) + y^H B y at y = (A + B)^+ A x for a
/// few deterministic probe vectors. Throws SizeMismatch or CrossCheckFailed.
TraceMatrix matrix_parallel_sum(const TraceMatrix& a, const TraceMatrix& b);

/// [B]A = A^{1/2} P_M A^{1/2}, M = {x : A^{1/2} x in ran B}, cross-checked
/// against the limit of A:(2^k B) (Richardson-extrapolated) within 1e-6.
/// Throws CrossCheckFailed on disagreement.
TraceMatrix matrix_regular_part(const TraceMatrix& a, const TraceMatrix& b);

/// The limit side of the cross-check on its own.
Matrix matrix_regular_part_limit(const Matrix& a, const Matrix& b);

/// A <= B as PSD matrices within 1e-9 (1 + scale).
bool matrix_leq(const TraceMatrix& a, const TraceMatrix& b);

/// Smallest c with A <= c B; throws NotDominated when ran A is not inside
/// ran B.
double matrix_domination_constant(const TraceMatrix& a, const TraceMatrix& b);

/// Phi(f) = F with f(e_ij) = trace(F e_ij) = F(j, i). Throws
/// NotMatrixAlgebra.
TraceMatrix trace_dual(const Functional& f);
Functional from_trace_dual(const AlgebraPtr& algebra, const TraceMatrix& f);

struct TrendPoint {
  int dim = 0;
  double c_min = 0.0;
  /// max_{n <= dim} alpha_n / beta_n
  double expected = 0.0;
  /// |[G_d]F_d - F_d|
  double regular_part_error = 0.0;
};

/// alpha_n = n^-2, beta_n = n^-4 truncated to dimensions 2..d.
std::vector<TrendPoint> truncated_counterexample_trend(int d);
TrendPoint trend_point(int dim);

}  // namespace funcord::oracle
