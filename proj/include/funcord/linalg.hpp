#pragma once

#include <complex>

#include <Eigen/Dense>

namespace funcord {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Relative eigenvalue / singular value cut shared by every rank decision
/// of the generic pipeline.
inline constexpr double kRankCut = 1e-10;

double max_abs(const Matrix& m);
double max_abs(const Vector& v);

Matrix hermitian_part(const Matrix& m);

struct Spectrum {
  RealVector values;  // ascending
  Matrix vectors;     // columns are orthonormal eigenvectors
};

/// Eigen-decomposition of the Hermitian part of `m`.
Spectrum hermitian_eig(const Matrix& m);

/// Eigenpairs of a PSD matrix whose eigenvalue exceeds `rel_cut` times the
/// largest one. A zero matrix has an empty range.
struct Range {
  RealVector values;
  Matrix basis;

  Eigen::Index rank() const { return values.size(); }
};
Range positive_range(const Matrix& psd, double rel_cut = kRankCut);

/// Orthogonal projector onto the range, `basis * basis^H`.
Matrix projector(const Range& range, Eigen::Index dim);

Matrix pinv_hermitian(const Matrix& m, double rel_cut = kRankCut);

/// Orthonormal basis of the column space of `w` (SVD, relative cut).
Matrix column_space(const Matrix& w, double rel_cut = kRankCut);

}  // namespace linalg
}  // namespace funcord
