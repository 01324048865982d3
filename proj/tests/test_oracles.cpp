#include <doctest.h>

#include <cmath>

#include "funcord/differential.hpp"
#include "funcord/error.hpp"
#include "funcord/functional.hpp"
#include "funcord/oracles.hpp"
#include "funcord/sampling.hpp"
#include "support/cases.hpp"

using namespace funcord;
using namespace funcord::oracle;

namespace {

Measure measure(std::initializer_list<double> w) {
  RealVector v(static_cast<Eigen::Index>(w.size()));
  Eigen::Index i = 0;
  for (double x : w) v(i++) = x;
  return Measure(v);
}

double gap(const Measure& a, const RealVector& b) {
  return (a.weights() - b).cwiseAbs().maxCoeff();
}

TraceMatrix diag(double a, double b) {
  return TraceMatrix(Matrix(RealVector{{a, b}}.cast<Complex>().asDiagonal()));
}

double gap(const TraceMatrix& a, const Matrix& b) {
  return linalg::max_abs(Matrix(a.entries() - b));
}

}  // namespace

TEST_CASE("measure decompositions") {
  const MeasureDecomposition a = measure_lebesgue(measure({1, 1}), measure({1, 0}));
  CHECK(gap(a.regular, RealVector{{1, 0}}) == 0.0);
  CHECK(gap(a.singular, RealVector{{0, 1}}) == 0.0);
  const MeasureDecomposition b = measure_lebesgue(measure({2, 3}), measure({1, 4}));
  CHECK(gap(b.regular, RealVector{{2, 3}}) == 0.0);
  CHECK(gap(b.singular, RealVector{{0, 0}}) == 0.0);
  const MeasureDecomposition c = measure_lebesgue(measure({0, 0}), measure({1, 4}));
  CHECK(gap(c.regular, RealVector{{0, 0}}) == 0.0);
  CHECK_THROWS_AS(measure_lebesgue(measure({1}), measure({1, 2})), Error);
  CHECK_THROWS_AS(measure({1, -1}), Error);
}

TEST_CASE("measure infima") {
  CHECK(gap(measure_infimum(measure({2, 1}), measure({1, 3})), RealVector{{1, 1}}) == 0.0);
  CHECK(gap(measure_infimum(measure({0.5, 2}), measure({0.5, 2})), RealVector{{0.5, 2}}) ==
        0.0);
  CHECK(gap(measure_infimum(measure({1, 0}), measure({0, 1})), RealVector{{0, 0}}) == 0.0);
  // brute force over splits F of E = {0, 1}
  CHECK(measure_infimum_on_set(measure({2, 1}), measure({1, 3}), 0b11) ==
        doctest::Approx(2.0));
}

TEST_CASE("matrix parallel sums") {
  CHECK(gap(matrix_parallel_sum(diag(1, 1), diag(1, 1)), Matrix::Identity(2, 2) / 2.0) <
        1e-12);
  CHECK(gap(matrix_parallel_sum(diag(1, 0), diag(0, 1)), Matrix::Zero(2, 2)) < 1e-12);
  // (A + B)^-1 = [[1,-1],[-1,2]] and A (A + B)^-1 A = A, so A:B = 0.
  Matrix a(2, 2);
  a << 1, 1, 1, 1;
  const TraceMatrix ab = matrix_parallel_sum(TraceMatrix(a), diag(1, 0));
  CHECK(gap(ab, Matrix::Zero(2, 2)) < 1e-12);
}

TEST_CASE("matrix regular parts") {
  CHECK(gap(matrix_regular_part(diag(1, 1), diag(1, 0)), Matrix(diag(1, 0).entries())) <
        1e-9);
  Matrix a(2, 2);
  a << 1, 1, 1, 1;
  CHECK(gap(matrix_regular_part(TraceMatrix(a), diag(1, 0)), Matrix::Zero(2, 2)) < 1e-9);
  sampling::Rng rng = sampling::case_rng(41, 0);
  const Matrix r = sampling::random_psd(3, 2, rng);
  CHECK(gap(matrix_regular_part(TraceMatrix(r), TraceMatrix(r)), r) < 1e-9);
}

TEST_CASE("trace duality") {
  const AlgebraPtr m2 = matrix_algebra(2);
  const Functional tr = testing::functional(m2, {1.0, 0.0, 0.0, 1.0});
  CHECK(gap(trace_dual(tr), Matrix::Identity(2, 2)) == 0.0);
  const Vector x = Vector{{1.0, Complex(0.0, 1.0)}} / std::sqrt(2.0);
  const Functional state = testing::vector_state(m2, x);
  CHECK(gap(trace_dual(state), x * x.adjoint()) < 1e-15);
  CHECK(hilbert_bound(state) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_dual(testing::functional(function_algebra(2), {1, 1})), Error);

  sampling::Rng rng = sampling::case_rng(42, 0);
  for (int t = 0; t < 20; ++t) {
    const Functional f = sampling::random_representable(matrix_algebra(3), rng);
    CHECK(testing::max_abs(from_trace_dual(f.algebra(), trace_dual(f)).values() -
                           f.values()) == 0.0);
    CHECK(hilbert_bound(f) ==
          doctest::Approx(trace_dual(f).entries().trace().real()).epsilon(1e-9));
  }
}

TEST_CASE("trace duality is bipositive and commutes with the operations") {
  sampling::Rng rng = sampling::case_rng(43, 0);
  for (int t = 0; t < 30; ++t) {
    const AlgebraPtr alg = matrix_algebra(t % 2 ? 2 : 3);
    const Functional f = sampling::random_representable(alg, rng);
    const Functional g = t % 3 ? sampling::random_representable(alg, rng)
                               : f + sampling::random_representable(alg, rng);
    const DualityComparison c = compare_through_duality(f, g);
    CHECK(c.agrees());
    CHECK(c.max_error() <= 1e-6);
  }
}

TEST_CASE("counterexample trend") {
  const std::vector<TrendPoint> points = truncated_counterexample_trend(8);
  REQUIRE(points.size() == 7);
  CHECK(points.front().c_min == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(points.back().c_min == doctest::Approx(64.0).epsilon(1e-9));
  CHECK(trend_point(32).c_min == doctest::Approx(1024.0).epsilon(1e-2));
  for (const TrendPoint& p : points) CHECK(p.regular_part_error <= 1e-6);
  CHECK_THROWS_AS(truncated_counterexample_trend(1), Error);
}

TEST_CASE("infimum backends") {
  const AlgebraPtr f2 = function_algebra(2);
  const Functional f = testing::functional(f2, {2.0, 1.0});
  const Functional g = testing::functional(f2, {1.0, 3.0});
  CHECK(infimum_with_backend(f, g, InfimumBackend::Generic).status ==
        InfimumStatus::Unknown);
  const InfimumResult c = infimum_with_backend(f, g, InfimumBackend::Commutative);
  REQUIRE(c.value.has_value());
  CHECK(testing::max_abs(c.value->values() - Vector{{1.0, 1.0}}) == 0.0);
  CHECK_THROWS_AS(infimum_with_backend(f, g, InfimumBackend::Matrix), Error);

  const AlgebraPtr m2 = matrix_algebra(2);
  const Functional fi = sampling::functional_from_trace_matrix(m2, Matrix::Identity(2, 2));
  const Functional gd = sampling::functional_from_trace_matrix(m2, diag(2.0, 0.5).entries());
  CHECK(infimum_with_backend(fi, gd, InfimumBackend::Matrix).status ==
        InfimumStatus::NotExists);
  CHECK(infimum_with_backend(fi, gd, InfimumBackend::Generic).status ==
        InfimumStatus::NotExists);
}

TEST_CASE("suites are deterministic and ordered") {
  const SuiteReport a = run_suite(Suite::Commutative, 12, 99, 3);
  const SuiteReport b = run_suite(Suite::Commutative, 12, 99, 1);
  REQUIRE(a.records.size() == 12);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].index == static_cast<int>(i));
    CHECK(a.records[i].max_error == b.records[i].max_error);
    CHECK(a.records[i].algebra == b.records[i].algebra);
  }
  CHECK(a.passed());
  CHECK(a.records[0].note == "generic infimum unknown");
}

TEST_CASE("matrix oracle on badly scaled pairs") {
  sampling::Rng rng(5);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  for (int i = 0; i < 40; ++i) {
    const AlgebraPtr alg = matrix_algebra(2 + i % 3);
    const Functional f =
        sampling::random_representable(alg, rng) * std::pow(10.0, exponent(rng));
    const Functional g =
        sampling::random_representable(alg, rng) * std::pow(10.0, exponent(rng));
    const DualityComparison c = compare_through_duality(f, g);
    CHECK(c.agrees());
    CHECK(c.max_error() <= 1e-6 * (1.0 + f.scale() + g.scale()));
  }
}
