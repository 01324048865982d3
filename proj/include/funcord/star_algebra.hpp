#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "funcord/linalg.hpp"

namespace funcord {

/// How an algebra was constructed. Only `Matrix` changes behaviour: the
/// infimum rule treats full matrix algebras as decided by trace duality.
enum class AlgebraKind { Matrix, Functions, DirectSum, ZeroProduct, Custom };

/// Finite-dimensional complex *-algebra given by structure constants on a
/// basis b_0..b_{d-1}:
///
///   b_i b_j = sum_k c(i, j, k) b_k,    b_i^* = sum_k s(i, k) b_k.
///
/// The involution is conjugate-linear, so for x = sum_i x_i b_i the adjoint
/// has coefficients s^T conj(x).
///
/// Instances are immutable; share them through `AlgebraPtr`.
class StarAlgebra {
 public:
  /// `structure` is the flattened tensor with index (i * dim + j) * dim + k.
  /// Throws Error(Construction) on inconsistent sizes; structural axioms are
  /// checked separately by `validate_structure`.
  StarAlgebra(std::string label, int dim, std::vector<Complex> structure,
              Matrix involution, std::optional<Vector> unit,
              AlgebraKind kind = AlgebraKind::Custom, int matrix_order = 0);

  const std::string& label() const noexcept { return label_; }
  int dim() const noexcept { return dim_; }
  AlgebraKind kind() const noexcept { return kind_; }
  /// n for matrix(n), 0 otherwise.
  int matrix_order() const noexcept { return matrix_order_; }
  bool is_full_matrix_algebra() const noexcept {
    return kind_ == AlgebraKind::Matrix;
  }

  Complex c(int i, int j, int k) const {
    return structure_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<Complex>& structure() const noexcept { return structure_; }
  const Matrix& involution() const noexcept { return involution_; }
  const std::optional<Vector>& unit() const noexcept { return unit_; }

  /// Matrix of x -> b_i x in coefficient space: entry (k, j) = c(i, j, k).
  const Matrix& left_multiplication(int i) const { return left_[i]; }

  /// Largest structure-constant magnitude; scales validation tolerances.
  double structure_scale() const noexcept { return structure_scale_; }

  bool same_as(const StarAlgebra& other) const;

  /// Operands of a direct sum, in basis order; empty otherwise.
  const std::vector<std::shared_ptr<const StarAlgebra>>& summands() const noexcept {
    return summands_;
  }
  void set_summands(std::vector<std::shared_ptr<const StarAlgebra>> parts) {
    summands_ = std::move(parts);
  }

 private:
  std::string label_;
  int dim_;
  std::vector<Complex> structure_;
  Matrix involution_;
  std::optional<Vector> unit_;
  AlgebraKind kind_;
  int matrix_order_;
  std::vector<Matrix> left_;
  double structure_scale_ = 0.0;
  std::vector<std::shared_ptr<const StarAlgebra>> summands_;
};

using AlgebraPtr = std::shared_ptr<const StarAlgebra>;

/// True when both pointers denote the same algebra, either by identity or
/// by identical label, dimension and structure.
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// Constructors. Each returns a validated algebra.

/// M_n with matrix-unit basis e_{pq} at index p * n + q.
AlgebraPtr matrix_algebra(int n);
/// Complex functions on an m-point set, basis of point indicators.
AlgebraPtr function_algebra(int m);
/// A (+) B, basis of A followed by basis of B.
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);
/// n-dimensional algebra with identically zero product and trivial
/// involution: every functional is positive, only 0 is representable.
AlgebraPtr zero_product_algebra(int n);

/// Parses shorthand labels such as "matrix(2)", "functions(3)",
/// "zero_product(1)" and "direct_sum(functions(2),matrix(2))".
AlgebraPtr algebra_from_label(const std::string& label);

class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, Vector coeffs);

  static AlgebraElement zero(const AlgebraPtr& algebra);
  static AlgebraElement basis(const AlgebraPtr& algebra, int i);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coeffs() const noexcept { return coeffs_; }

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement operator*(Complex scalar) const;

 private:
  AlgebraPtr algebra_;
  Vector coeffs_;
};

AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement involute(const AlgebraElement& x);

/// One violated axiom. `index` holds the worst-offending basis indices;
/// unused slots are -1.
struct Violation {
  std::string invariant;
  std::array<int, 3> index{-1, -1, -1};
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double tolerance = 0.0;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks associativity, involutivity, anti-multiplicativity and the unit
/// law at tolerance 1e-9 * (1 + max |c|).
ValidationReport validate_structure(const StarAlgebra& algebra);

}  // namespace funcord
