#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funcord/star_algebra.hpp"

namespace funcord {

/// Linear functional f on a StarAlgebra, stored as its values on the basis:
/// values(i) = f(b_i).
class Functional {
 public:
  Functional(AlgebraPtr algebra, Vector values);

  static Functional zero(const AlgebraPtr& algebra);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& values() const noexcept { return values_; }
  /// max_i |f(b_i)|
  double scale() const;

  Functional operator+(const Functional& other) const;
  Functional operator-(const Functional& other) const;
  Functional operator*(double scalar) const;

 private:
  AlgebraPtr algebra_;
  Vector values_;
};

inline Functional operator*(double scalar, const Functional& f) {
  return f * scalar;
}

void require_same_algebra(const Functional& f, const Functional& g);

Complex evaluate(const Functional& f, const AlgebraElement& a);

/// Max-norm comparison of the full value vectors at 1e-8 * (1 + scale).
bool approx_equal(const Functional& f, const Functional& g,
                  double rel_tol = 1e-8);

/// entries(i, j) = f(b_j^* b_i).
///
/// For a = sum_i x_i b_i and b = sum_j y_j b_j the sesquilinear form is
/// f(b^* a) = y^H entries^T x, so `form()` (the transpose) is the matrix to
/// use in quadratic-form algebra: f(a^* a) = x^H form() x.
struct GramMatrix {
  Matrix entries;
  double scale = 0.0;

  Matrix form() const { return entries.transpose(); }
  double tolerance() const { return 1e-9 * (1.0 + scale); }
};

GramMatrix gram_matrix(const Functional& f);

struct PositivityReport {
  bool positive = false;
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  /// Element a with f(a^* a) < 0 when the Gram form has a negative
  /// direction; absent when positivity fails only through asymmetry.
  std::optional<AlgebraElement> witness;
};

/// Gram form Hermitian and PSD within 1e-9 * (1 + max(scale, reference_scale)).
PositivityReport check_positive(const Functional& f,
                                double reference_scale = 0.0);
bool is_positive(const Functional& f);

/// f <= g, i.e. g - f is positive. The tolerance scales with the larger of
/// the two Gram scales.
bool leq(const Functional& f, const Functional& g);

/// Relative tolerance for "phi lies in the range of the Gram form" and for
/// the quotient action check.
inline constexpr double kMembershipTol = 1e-7;

/// sup{|f(a)|^2 : f(a^* a) <= 1}. Throws NotRepresentable when f is not
/// positive or the cyclic bound fails.
double hilbert_bound(const Functional& f);

struct RepresentabilityReport {
  bool representable = false;
  /// "positivity", "cyclic_bound", "quotient_action" or empty.
  std::string failed_condition;
  std::string detail;
  std::optional<double> hilbert_bound;
  std::optional<AlgebraElement> witness;
  double residual = 0.0;
};

/// Positivity, the cyclic bound |f(a)|^2 <= M f(a^* a), and the condition
/// that left multiplication by every basis element maps the null space of
/// the Gram form into itself. The last condition is checked on basis
/// elements only; in finite dimensions it then holds for all b by
/// linearity, and the bound M_b is automatically finite.
RepresentabilityReport check_representable(const Functional& f);
bool is_representable(const Functional& f);

/// (H_f, pi_f, zeta_f) in orthonormal coordinates of the quotient.
struct GnsTriple {
  int space_dim = 0;
  /// pi(b_i), space_dim x space_dim each.
  std::vector<Matrix> rep;
  Vector cyclic;
  /// space_dim x dim: coefficients of a -> coordinates of [a].
  Matrix quotient;
  double reconstruction_residual = 0.0;

  double hilbert_bound() const { return cyclic.squaredNorm(); }
  /// pi(a) as a matrix.
  Matrix represent(const AlgebraElement& a) const;
  /// [a] = pi(a) zeta.
  Vector vector_of(const AlgebraElement& a) const;
};

/// Throws NotRepresentable, or VerificationFailed when the reconstruction
/// f(b_i) = <pi(b_i) zeta, zeta> misses by more than 1e-7 * (1 + |phi|).
GnsTriple gns_triple(const Functional& f);

}  // namespace funcord
