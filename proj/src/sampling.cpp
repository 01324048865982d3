#include "funcord/sampling.hpp"

#include "funcord/error.hpp"

namespace funcord::sampling {

Rng case_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix random_psd(int n, int rank, Rng& rng) {
  if (rank <= 0) return Matrix::Zero(n, n);
  const Matrix b = gaussian_matrix(n, rank, rng) / std::sqrt(2.0 * n);
  return b * b.adjoint();
}

RealVector random_weights(int m, double zero_probability, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector w(m);
  for (int i = 0; i < m; ++i) {
    const double coin = unit(rng);
    const double weight = 0.1 + 1.9 * unit(rng);
    w(i) = coin < zero_probability ? 0.0 : weight;
  }
  return w;
}

Functional functional_from_trace_matrix(const AlgebraPtr& algebra,
                                        const Matrix& trace_matrix) {
  if (!algebra->is_full_matrix_algebra())
    throw Error(ErrorKind::NotMatrixAlgebra,
                algebra->label() + " is not a full matrix algebra");
  const int n = algebra->matrix_order();
  if (trace_matrix.rows() != n || trace_matrix.cols() != n)
    throw Error(ErrorKind::SizeMismatch, "trace matrix must be n x n");
  Vector values(n * n);
  // trace(F e_ij) = F(j, i)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) values(i * n + j) = trace_matrix(j, i);
  return {algebra, std::move(values)};
}

Functional functional_from_weights(const AlgebraPtr& algebra,
                                   const RealVector& weights) {
  if (algebra->kind() != AlgebraKind::Functions)
    throw Error(ErrorKind::NotCommutativeAlgebra,
                algebra->label() + " is not a function algebra");
  if (weights.size() != algebra->dim())
    throw Error(ErrorKind::SizeMismatch, "one weight per atom required");
  return {algebra, weights.cast<Complex>()};
}

Functional random_representable(const AlgebraPtr& algebra, Rng& rng) {
  switch (algebra->kind()) {
    case AlgebraKind::Functions:
      return functional_from_weights(
          algebra, random_weights(algebra->dim(), 0.25, rng));
    case AlgebraKind::Matrix: {
      const int n = algebra->matrix_order();
      std::uniform_int_distribution<int> rank(0, n);
      // Full rank half of the time, anything from 0..n otherwise.
      std::bernoulli_distribution full(0.5);
      return functional_from_trace_matrix(
          algebra, random_psd(n, full(rng) ? n : rank(rng), rng));
    }
    case AlgebraKind::DirectSum: {
      Vector values(algebra->dim());
      Eigen::Index offset = 0;
      for (const auto& part : algebra->summands()) {
        Functional piece = random_representable(part, rng);
        values.segment(offset, part->dim()) = piece.values();
        offset += part->dim();
      }
      return {algebra, std::move(values)};
    }
    case AlgebraKind::ZeroProduct:
      return Functional::zero(algebra);
    case AlgebraKind::Custom:
      break;
  }
  throw Error(ErrorKind::Construction,
              "no sampler for custom algebra " + algebra->label());
}

AlgebraElement random_element(const AlgebraPtr& algebra, Rng& rng) {
  Vector x = gaussian_matrix(algebra->dim(), 1, rng).col(0);
  return {algebra, x / x.norm()};
}

}  // namespace funcord::sampling
