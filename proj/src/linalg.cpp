#include "funcord/linalg.hpp"

#include <algorithm>

namespace funcord::linalg {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) {
  return (m + m.adjoint()) * 0.5;
}

Spectrum hermitian_eig(const Matrix& m) {
  if (m.size() == 0) return {RealVector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Range positive_range(const Matrix& psd, double rel_cut) {
  const Eigen::Index n = psd.rows();
  Range out{RealVector(0), Matrix(n, 0)};
  if (n == 0) return out;
  Spectrum s = hermitian_eig(psd);
  const double top = s.values.maxCoeff();
  if (!(top > 0.0)) return out;
  const double cut = rel_cut * top;
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (s.values(i) > cut) ++keep;
  out.values.resize(keep);
  out.basis.resize(n, keep);
  Eigen::Index col = 0;
  // Largest first.
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (s.values(i) > cut) {
      out.values(col) = s.values(i);
      out.basis.col(col) = s.vectors.col(i);
      ++col;
    }
  }
  return out;
}

Matrix projector(const Range& range, Eigen::Index dim) {
  if (range.rank() == 0) return Matrix::Zero(dim, dim);
  return range.basis * range.basis.adjoint();
}

Matrix pinv_hermitian(const Matrix& m, double rel_cut) {
  const Eigen::Index n = m.rows();
  Spectrum s = hermitian_eig(m);
  if (n == 0) return Matrix(0, 0);
  const double top = s.values.cwiseAbs().maxCoeff();
  if (!(top > 0.0)) return Matrix::Zero(n, n);
  RealVector inv = RealVector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(s.values(i)) > rel_cut * top) inv(i) = 1.0 / s.values(i);
  return s.vectors * inv.asDiagonal() * s.vectors.adjoint();
}

Matrix column_space(const Matrix& w, double rel_cut) {
  if (w.rows() == 0 || w.cols() == 0) return Matrix(w.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(w, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  const double top = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  if (top > 0.0)
    while (rank < sv.size() && sv(rank) > rel_cut * top) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace funcord::linalg
