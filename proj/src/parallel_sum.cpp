#include "funcord/parallel_sum.hpp"

#include <algorithm>
#include <cmath>

#include "funcord/error.hpp"

namespace funcord {

namespace detail {

ParallelSumResult parallel_sum(const AlgebraPtr& algebra, const GnsTriple& f,
                               double f_scale, const GnsTriple& g,
                               double g_scale) {
  const int d = algebra->dim();
  const int rf = f.space_dim;
  const int rg = g.space_dim;
  const int total = rf + rg;
  const double sf = std::sqrt(f_scale);
  const double sg = std::sqrt(g_scale);

  Matrix graph(total, d);
  graph.topRows(rf) = sf * f.quotient;
  graph.bottomRows(rg) = sg * g.quotient;
  const Matrix basis = linalg::column_space(graph);

  Vector z = Vector::Zero(total);
  z.head(rf) = sf * f.cyclic;
  const Vector pz = z - basis * (basis.adjoint() * z);

  Vector values(d);
  double residual = 0.0;
  const Matrix complement =
      Matrix::Identity(total, total) - basis * basis.adjoint();
  for (int k = 0; k < d; ++k) {
    Matrix pi = Matrix::Zero(total, total);
    pi.topLeftCorner(rf, rf) = f.rep[k];
    pi.bottomRightCorner(rg, rg) = g.rep[k];
    values(k) = pz.dot(pi * pz);
    if (basis.cols() > 0)
      residual = std::max(
          residual, linalg::max_abs(Matrix(basis.adjoint() * pi * complement)));
  }
  return {Functional(algebra, std::move(values)),
          total - static_cast<int>(basis.cols()), residual};
}

}  // namespace detail

ParallelSumResult parallel_sum(const Functional& f, const Functional& g) {
  require_same_algebra(f, g);
  const GnsTriple tf = gns_triple(f);
  const GnsTriple tg = gns_triple(g);
  return detail::parallel_sum(f.algebra(), tf, 1.0, tg, 1.0);
}

namespace {

struct VariationalParts {
  Matrix qf;
  Matrix sum_pinv;
};

VariationalParts variational_parts(const Functional& f, const Functional& g) {
  require_same_algebra(f, g);
  Matrix qf = linalg::hermitian_part(gram_matrix(f).form());
  Matrix qg = linalg::hermitian_part(gram_matrix(g).form());
  return {qf, linalg::pinv_hermitian(qf + qg)};
}

void require_element(const Functional& f, const AlgebraElement& a) {
  if (!same_algebra(f.algebra(), a.algebra()))
    throw Error(ErrorKind::AlgebraMismatch,
                "element of " + a.algebra()->label() + " for functional on " +
                    f.algebra()->label());
}

}  // namespace

Vector variational_minimizer(const Functional& f, const Functional& g,
                             const AlgebraElement& a) {
  require_element(f, a);
  VariationalParts p = variational_parts(f, g);
  return p.sum_pinv * (p.qf * a.coeffs());
}

double variational_value(const Functional& f, const Functional& g,
                         const AlgebraElement& a) {
  require_element(f, a);
  // Objective at the minimiser y = (Q_f + Q_g)^+ Q_f x.
  VariationalParts p = variational_parts(f, g);
  const Vector& x = a.coeffs();
  const Vector y = p.sum_pinv * (p.qf * x);
  const Vector rest = x - y;
  const Matrix qg = linalg::hermitian_part(gram_matrix(g).form());
  const double v =
      rest.dot(p.qf * rest).real() + y.dot(qg * y).real();
  return std::max(v, 0.0);
}

double singularity_residual(const Functional& f, const Functional& g) {
  return parallel_sum(f, g).value.scale();
}

bool is_singular(const Functional& f, const Functional& g) {
  const double threshold = 1e-8 * (1.0 + std::min(f.scale(), g.scale()));
  return singularity_residual(f, g) <= threshold;
}

}  // namespace funcord
