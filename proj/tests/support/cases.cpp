#include "cases.hpp"

#include <Eigen/Eigenvalues>

namespace funcord::testing {

AlgebraPtr random_algebra(sampling::Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 8);
  const int k = pick(rng);
  if (k < 6) return function_algebra(k + 1);
  if (k == 6) return matrix_algebra(2);
  if (k == 7) return matrix_algebra(3);
  return direct_sum(function_algebra(2), matrix_algebra(2));
}

Pair random_pair(sampling::Rng& rng) {
  const AlgebraPtr alg = random_algebra(rng);
  Functional f = sampling::random_representable(alg, rng);
  Functional g = sampling::random_representable(alg, rng);
  std::uniform_int_distribution<int> shape(0, 2);
  if (shape(rng) == 0) {
    std::uniform_real_distribution<double> t(0.1, 2.0);
    g = f * t(rng) + g;
  }
  return {f, g};
}

namespace {

Matrix matrix_disjoint_part(const Matrix& f, sampling::Rng& rng) {
  const int n = static_cast<int>(f.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(f);
  const RealVector lam = eig.eigenvalues().cwiseMax(0.0);
  const double top = lam.size() ? lam.maxCoeff() : 0.0;
  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (lam(i) > 1e-10 * top) kept.push_back(i);
  if (kept.empty()) return Matrix::Zero(n, n);

  // Random subspace of range(F) of random dimension.
  const Matrix basis = eig.eigenvectors()(Eigen::all, kept);
  std::uniform_int_distribution<int> dim(0, static_cast<int>(kept.size()));
  const int r = dim(rng);
  Matrix coords = sampling::gaussian_matrix(
      static_cast<Eigen::Index>(kept.size()), r, rng);
  Matrix span = basis * coords;
  Matrix proj = Matrix::Zero(n, n);
  if (r > 0) {
    Eigen::HouseholderQR<Matrix> qr(span);
    const Matrix q = qr.householderQ() * Matrix::Identity(n, r);
    proj = q * q.adjoint();
  }
  const Matrix root = eig.eigenvectors() *
                      lam.cwiseSqrt().cast<Complex>().asDiagonal() *
                      eig.eigenvectors().adjoint();
  return root * proj * root;
}

}  // namespace

Functional random_disjoint_part(const Functional& f, sampling::Rng& rng) {
  const AlgebraPtr& alg = f.algebra();
  switch (alg->kind()) {
    case AlgebraKind::Functions: {
      Vector v = f.values();
      std::bernoulli_distribution keep(0.5);
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!keep(rng)) v(i) = 0.0;
      return {alg, v};
    }
    case AlgebraKind::Matrix: {
      const int n = alg->matrix_order();
      Matrix dual(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dual(j, i) = f.values()(i * n + j);
      return sampling::functional_from_trace_matrix(
          alg, matrix_disjoint_part(linalg::hermitian_part(dual), rng));
    }
    case AlgebraKind::DirectSum: {
      Vector values(alg->dim());
      Eigen::Index offset = 0;
      for (const auto& part : alg->summands()) {
        const Functional piece = random_disjoint_part(
            Functional(part, f.values().segment(offset, part->dim())), rng);
        values.segment(offset, part->dim()) = piece.values();
        offset += part->dim();
      }
      return {alg, values};
    }
    default:
      return Functional::zero(alg);
  }
}

}  // namespace funcord::testing

namespace funcord::testing {

Functional vector_state(const AlgebraPtr& algebra, const Vector& x) {
  return sampling::functional_from_trace_matrix(algebra, x * x.adjoint());
}

}  // namespace funcord::testing
