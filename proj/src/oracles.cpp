#include "funcord/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "funcord/error.hpp"

namespace funcord::oracle {

namespace {

void require_same_size(int a, int b, const char* what) {
  if (a != b)
    throw Error(ErrorKind::SizeMismatch,
                std::string(what) + ": sizes " + std::to_string(a) + " and " +
                    std::to_string(b));
}

double entry_scale(const Matrix& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

Matrix pseudo_inverse(const Matrix& m) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
  cod.setThreshold(1e-10);
  return cod.pseudoInverse();
}

Matrix shorted(const Matrix& a, const Matrix& b) {
  return symmetrized(a * pseudo_inverse(a + b) * b);
}

/// Orthonormal basis of ran(m) from an SVD.
Matrix range_basis(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const RealVector& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() && sv(0) > 0.0)
    while (rank < sv.size() && sv(rank) > 1e-10 * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
  const RealVector root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

Measure::Measure(RealVector weights) : weights_(std::move(weights)) {
  for (Eigen::Index i = 0; i < weights_.size(); ++i)
    if (weights_(i) < -1e-12)
      throw Error(ErrorKind::Construction,
                  "measure weight " + std::to_string(i) + " is negative");
}

MeasureDecomposition measure_lebesgue(const Measure& mu, const Measure& nu) {
  require_same_size(mu.atoms(), nu.atoms(), "measure_lebesgue");
  RealVector regular = RealVector::Zero(mu.atoms());
  RealVector singular = RealVector::Zero(mu.atoms());
  for (int i = 0; i < mu.atoms(); ++i)
    (nu.weights()(i) > 0.0 ? regular : singular)(i) = mu.weights()(i);
  return {Measure(regular), Measure(singular)};
}

double measure_infimum_on_set(const Measure& mu, const Measure& nu,
                              unsigned set_mask) {
  const int m = mu.atoms();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned split = 0; split < (1u << m); ++split) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      if (!(set_mask & (1u << i))) continue;
      total += (split & (1u << i)) ? mu.weights()(i) : nu.weights()(i);
    }
    best = std::min(best, total);
  }
  return best;
}

Measure measure_infimum(const Measure& mu, const Measure& nu) {
  require_same_size(mu.atoms(), nu.atoms(), "measure_infimum");
  const int m = mu.atoms();
  RealVector low = mu.weights().cwiseMin(nu.weights());
  if (m <= 10) {
    const double tol = 1e-12 * (1.0 + mu.weights().cwiseAbs().sum() +
                                nu.weights().cwiseAbs().sum());
    const unsigned full = (1u << m) - 1u;
    if (std::abs(measure_infimum_on_set(mu, nu, full) - low.sum()) > tol)
      throw Error(ErrorKind::CrossCheckFailed,
                  "measure_infimum: subset formula disagrees on the full set");
    for (int i = 0; i < m; ++i)
      if (std::abs(measure_infimum_on_set(mu, nu, 1u << i) - low(i)) > tol)
        throw Error(ErrorKind::CrossCheckFailed,
                    "measure_infimum: subset formula disagrees on atom " +
                        std::to_string(i));
  }
  return Measure(low);
}

Measure measure_parallel_sum(const Measure& mu, const Measure& nu) {
  require_same_size(mu.atoms(), nu.atoms(), "measure_parallel_sum");
  RealVector out = RealVector::Zero(mu.atoms());
  for (int i = 0; i < mu.atoms(); ++i) {
    const double a = mu.weights()(i);
    const double b = nu.weights()(i);
    if (a + b > 0.0) out(i) = a * b / (a + b);
  }
  return Measure(out);
}

bool measure_singular(const Measure& mu, const Measure& nu, double tol) {
  require_same_size(mu.atoms(), nu.atoms(), "measure_singular");
  for (int i = 0; i < mu.atoms(); ++i)
    if (std::min(mu.weights()(i), nu.weights()(i)) > tol) return false;
  return true;
}

Measure measure_of(const Functional& f) {
  if (f.algebra()->kind() != AlgebraKind::Functions)
    throw Error(ErrorKind::NotCommutativeAlgebra,
                f.algebra()->label() + " is not a function algebra");
  return Measure(f.values().real());
}

Functional functional_of(const AlgebraPtr& algebra, const Measure& mu) {
  if (algebra->kind() != AlgebraKind::Functions)
    throw Error(ErrorKind::NotCommutativeAlgebra,
                algebra->label() + " is not a function algebra");
  require_same_size(algebra->dim(), mu.atoms(), "functional_of");
  return {algebra, mu.weights().cast<Complex>()};
}

TraceMatrix::TraceMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw Error(ErrorKind::Construction, "trace matrix must be square");
  const double tol = 1e-9 * (1.0 + entry_scale(entries_));
  if (entry_scale(Matrix(entries_ - entries_.adjoint())) > tol)
    throw Error(ErrorKind::Construction, "trace matrix is not Hermitian");
  if (min_eigenvalue(entries_) < -tol)
    throw Error(ErrorKind::Construction, "trace matrix is not PSD");
  entries_ = symmetrized(entries_);
}

TraceMatrix matrix_parallel_sum(const TraceMatrix& a, const TraceMatrix& b) {
  require_same_size(a.size(), b.size(), "matrix_parallel_sum");
  const Matrix& am = a.entries();
  const Matrix& bm = b.entries();
  const Matrix out = shorted(am, bm);

  // Variational check on fixed probe vectors.
  const int n = a.size();
  const Matrix minimizer = pseudo_inverse(am + bm) * am;
  const double tol = 1e-8 * (1.0 + entry_scale(am) + entry_scale(bm));
  for (int probe = 0; probe < 3; ++probe) {
    Vector x(n);
    for (int i = 0; i < n; ++i)
      x(i) = Complex(std::cos(1.0 + i * (probe + 1)), std::sin(0.5 + 2 * i + probe));
    x /= x.norm();
    const Vector y = minimizer * x;
    const double direct = x.dot(out * x).real();
    const double split =
        (x - y).dot(am * (x - y)).real() + y.dot(bm * y).real();
    if (std::abs(direct - split) > tol)
      throw Error(ErrorKind::CrossCheckFailed,
                  "matrix_parallel_sum: variational check off by " +
                      std::to_string(std::abs(direct - split)));
  }
  return TraceMatrix(out);
}

Matrix matrix_regular_part_limit(const Matrix& a, const Matrix& b) {
  // s_k = A:(2^k t0 B) = L + c1 2^-k + c2 4^-k + ...; two Richardson levels.
  // Rounding in the pseudo-inverse grows like 2^k, so the increments reach
  // a floor; keep the level with the smallest increment. A jump in the raw
  // increments means the pseudo-inverse cutoff dropped a direction.
  const double stop = 1e-11 * (1.0 + entry_scale(a));
  const double b_scale = entry_scale(b);
  if (b_scale == 0.0) return Matrix::Zero(a.rows(), a.cols());
  const double t0 =
      std::exp2(std::max(0.0, std::ceil(std::log2(entry_scale(a) / b_scale))));
  Matrix s_prev = shorted(a, t0 * b);
  Matrix r_prev;
  Matrix t_prev;
  Matrix best = s_prev;
  double best_step = std::numeric_limits<double>::infinity();
  double last_raw = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    const Matrix s = shorted(a, std::ldexp(t0, k) * b);
    const double raw = entry_scale(Matrix(s - s_prev));
    const bool contracting = raw <= 0.75 * last_raw || raw < stop;
    if (best_step < std::numeric_limits<double>::infinity() &&
        raw > 4.0 * last_raw && raw > stop)
      break;
    last_raw = raw;
    const Matrix r = 2.0 * s - s_prev;
    if (k >= 2) {
      const Matrix t = (4.0 * r - r_prev) / 3.0;
      if (k >= 3 && contracting) {
        const double step = entry_scale(Matrix(t - t_prev));
        if (step < best_step) {
          best_step = step;
          best = t;
        }
        if (step < stop) return t;
      }
      t_prev = t;
    }
    r_prev = r;
    s_prev = s;
  }
  return best;
}

TraceMatrix matrix_regular_part(const TraceMatrix& a, const TraceMatrix& b) {
  require_same_size(a.size(), b.size(), "matrix_regular_part");
  const int n = a.size();
  const Matrix root = psd_sqrt(a.entries());
  const Matrix pb = [&] {
    const Matrix basis = range_basis(b.entries());
    return Matrix(basis * basis.adjoint());
  }();
  const Matrix leak = (Matrix::Identity(n, n) - pb) * root;

  Eigen::JacobiSVD<Matrix> svd(leak, Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, entry_scale(root));
  Matrix null_basis(n, 0);
  {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < n; ++i)
      if (sv(i) <= cut) cols.push_back(i);
    null_basis.resize(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      null_basis.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(cols[c]);
  }
  const Matrix closed =
      symmetrized(root * null_basis * null_basis.adjoint() * root);

  const Matrix limit = matrix_regular_part_limit(a.entries(), b.entries());
  const double gap = entry_scale(Matrix(closed - limit));
  if (gap > 1e-6 * (1.0 + entry_scale(a.entries())))
    throw Error(ErrorKind::CrossCheckFailed,
                "matrix_regular_part: closed form and limit differ by " +
                    std::to_string(gap));
  return TraceMatrix(closed);
}

bool matrix_leq(const TraceMatrix& a, const TraceMatrix& b) {
  require_same_size(a.size(), b.size(), "matrix_leq");
  const double tol =
      1e-9 * (1.0 + std::max(entry_scale(a.entries()), entry_scale(b.entries())));
  return min_eigenvalue(b.entries() - a.entries()) >= -tol;
}

double matrix_domination_constant(const TraceMatrix& a, const TraceMatrix& b) {
  require_same_size(a.size(), b.size(), "matrix_domination_constant");
  const int n = a.size();
  Eigen::JacobiSVD<Matrix> svd(b.entries(), Eigen::ComputeFullU);
  const RealVector& sv = svd.singularValues();
  Eigen::Index rank = 0;
  if (sv.size() && sv(0) > 0.0)
    while (rank < n && sv(rank) > 1e-10 * sv(0)) ++rank;
  const Matrix basis = svd.matrixU().leftCols(rank);
  const Matrix outside = Matrix::Identity(n, n) - basis * basis.adjoint();
  const double leak = entry_scale(Matrix(outside * a.entries() * outside));
  if (leak > 1e-7 * (1.0 + entry_scale(a.entries())))
    throw Error(ErrorKind::NotDominated,
                "matrix_domination_constant: ran A is not inside ran B");
  if (rank == 0) return 0.0;
  const RealVector inv_root = sv.head(rank).cwiseSqrt().cwiseInverse();
  const Matrix lift = basis * inv_root.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      symmetrized(lift.adjoint() * a.entries() * lift), Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

TraceMatrix trace_dual(const Functional& f) {
  const StarAlgebra& alg = *f.algebra();
  if (!alg.is_full_matrix_algebra())
    throw Error(ErrorKind::NotMatrixAlgebra,
                alg.label() + " is not a full matrix algebra");
  const int n = alg.matrix_order();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(j, i) = f.values()(i * n + j);
  return TraceMatrix(out);
}

Functional from_trace_dual(const AlgebraPtr& algebra, const TraceMatrix& f) {
  if (!algebra->is_full_matrix_algebra())
    throw Error(ErrorKind::NotMatrixAlgebra,
                algebra->label() + " is not a full matrix algebra");
  const int n = algebra->matrix_order();
  require_same_size(n, f.size(), "from_trace_dual");
  Vector values(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) values(i * n + j) = f.entries()(j, i);
  return {algebra, std::move(values)};
}

TrendPoint trend_point(int dim) {
  if (dim < 2)
    throw Error(ErrorKind::SizeMismatch, "trend needs dimension >= 2");
  RealVector alpha(dim), beta(dim);
  double expected = 0.0;
  for (int k = 1; k <= dim; ++k) {
    alpha(k - 1) = 1.0 / (static_cast<double>(k) * k);
    beta(k - 1) = alpha(k - 1) * alpha(k - 1);
    expected = std::max(expected, alpha(k - 1) / beta(k - 1));
  }
  const TraceMatrix f(alpha.cast<Complex>().asDiagonal().toDenseMatrix());
  const TraceMatrix g(beta.cast<Complex>().asDiagonal().toDenseMatrix());
  const TraceMatrix regular = matrix_regular_part(f, g);
  TrendPoint point;
  point.dim = dim;
  point.expected = expected;
  point.regular_part_error =
      entry_scale(Matrix(regular.entries() - f.entries()));
  point.c_min = matrix_domination_constant(f, g);
  return point;
}

std::vector<TrendPoint> truncated_counterexample_trend(int d) {
  if (d < 2) throw Error(ErrorKind::SizeMismatch, "trend needs d >= 2");
  std::vector<TrendPoint> out;
  for (int dim = 2; dim <= d; ++dim) out.push_back(trend_point(dim));
  return out;
}

}  // namespace funcord::oracle
