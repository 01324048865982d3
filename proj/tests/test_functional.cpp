#include <doctest.h>

#include "funcord/error.hpp"
#include "funcord/functional.hpp"
#include "funcord/functional_detail.hpp"
#include "funcord/sampling.hpp"
#include "support/cases.hpp"

using namespace funcord;
using testing::functional;

namespace {

Functional trace_functional() {
  return functional(matrix_algebra(2), {1.0, 0.0, 0.0, 1.0});
}

Functional state_at_e1() {
  return testing::vector_state(matrix_algebra(2), Vector{{1.0, 0.0}});
}

}  // namespace

TEST_CASE("evaluate is the linear extension") {
  const AlgebraPtr f2 = function_algebra(2);
  const AlgebraElement ones(f2, Vector{{1.0, 1.0}});
  CHECK(evaluate(functional(f2, {2.0, 3.0}), ones) == Complex(5.0));
  CHECK(evaluate(trace_functional(),
                 AlgebraElement::basis(matrix_algebra(2), 1)) == Complex(0.0));
  CHECK(evaluate(Functional::zero(f2), ones) == Complex(0.0));
  CHECK_THROWS_AS(evaluate(trace_functional(), ones), Error);
}

TEST_CASE("Gram matrices") {
  const GramMatrix d = gram_matrix(functional(function_algebra(2), {2.0, 3.0}));
  CHECK(linalg::max_abs(Matrix(d.entries - Matrix(RealVector{{2.0, 3.0}}
                                                      .cast<Complex>()
                                                      .asDiagonal()))) == 0.0);
  const GramMatrix t = gram_matrix(trace_functional());
  CHECK(linalg::max_abs(Matrix(t.entries - Matrix::Identity(4, 4))) == 0.0);
  const GramMatrix z = gram_matrix(functional(zero_product_algebra(1), {1.0}));
  CHECK(z.entries.rows() == 1);
  CHECK(z.entries(0, 0) == Complex(0.0));
}

TEST_CASE("Gram entries follow M[i][j] = f(b_j* b_i)") {
  sampling::Rng rng = sampling::case_rng(3, 0);
  const AlgebraPtr m2 = matrix_algebra(2);
  const Functional f(m2, sampling::gaussian_matrix(4, 1, rng).col(0));
  const GramMatrix gram = gram_matrix(f);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const AlgebraElement bi = AlgebraElement::basis(m2, i);
      const AlgebraElement bj = AlgebraElement::basis(m2, j);
      CHECK(std::abs(gram.entries(i, j) - evaluate(f, multiply(involute(bj), bi))) <
            1e-14);
    }
}

TEST_CASE("positivity with witnesses") {
  const AlgebraPtr f2 = function_algebra(2);
  CHECK(is_positive(functional(f2, {2.0, 3.0})));
  const PositivityReport neg = check_positive(functional(f2, {1.0, -1.0}));
  CHECK_FALSE(neg.positive);
  REQUIRE(neg.witness.has_value());
  CHECK(std::abs(neg.witness->coeffs()(0)) < 1e-12);
  CHECK(std::abs(neg.witness->coeffs()(1)) == doctest::Approx(1.0));
  CHECK(is_positive(functional(zero_product_algebra(1), {1.0})));
}

TEST_CASE("Hilbert bounds") {
  CHECK(hilbert_bound(functional(function_algebra(2), {2.0, 3.0})) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(hilbert_bound(trace_functional()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(hilbert_bound(functional(zero_product_algebra(1), {1.0})), Error);
  try {
    hilbert_bound(functional(zero_product_algebra(1), {1.0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotRepresentable);
  }
}

TEST_CASE("representability conditions") {
  sampling::Rng rng = sampling::case_rng(4, 0);
  for (int m = 1; m <= 6; ++m) {
    const AlgebraPtr alg = function_algebra(m);
    CHECK(is_representable(sampling::functional_from_weights(
        alg, sampling::random_weights(m, 0.3, rng))));
  }
  const RepresentabilityReport z =
      check_representable(functional(zero_product_algebra(1), {1.0}));
  CHECK_FALSE(z.representable);
  CHECK(z.failed_condition == "cyclic_bound");
  CHECK_FALSE(z.hilbert_bound.has_value());

  const RepresentabilityReport s = check_representable(state_at_e1());
  CHECK(s.representable);
  CHECK(gram_matrix(state_at_e1()).entries.fullPivLu().rank() == 2);

  const RepresentabilityReport neg =
      check_representable(functional(function_algebra(2), {1.0, -1.0}));
  CHECK(neg.failed_condition == "positivity");
}

TEST_CASE("quotient action condition") {
  // Two-dimensional algebra spanned by a nilpotent pair: b0 b0 = 0,
  // b0 b1 = b0, b1 b0 = b0, b1 b1 = b1 with b0* = b0, b1* = b1. It is
  // commutative and associative; f(b0) = 0, f(b1) = 1 is positive and the
  // null space of its Gram form contains b0, which left multiplication
  // keeps in the null space, so f is representable.
  std::vector<Complex> c(8, 0.0);
  auto at = [](int i, int j, int k) { return (i * 2 + j) * 2 + k; };
  c[at(0, 1, 0)] = 1.0;
  c[at(1, 0, 0)] = 1.0;
  c[at(1, 1, 1)] = 1.0;
  const AlgebraPtr alg = std::make_shared<const StarAlgebra>(
      "dual_numbers", 2, c, Matrix::Identity(2, 2), Vector{{0.0, 1.0}});
  REQUIRE(validate_structure(*alg).ok());
  const Functional f = functional(alg, {0.0, 1.0});
  CHECK(is_representable(f));
  // f(b0) != 0 makes the Gram form indefinite.
  const RepresentabilityReport r = check_representable(functional(alg, {1.0, 1.0}));
  CHECK_FALSE(r.representable);
  CHECK(r.failed_condition == "positivity");
}

TEST_CASE("GNS triples") {
  const Functional ones = functional(function_algebra(2), {1.0, 1.0});
  const GnsTriple t = gns_triple(ones);
  CHECK(t.space_dim == 2);
  CHECK(t.hilbert_bound() == doctest::Approx(2.0).epsilon(1e-12));
  // pi(delta_1) is a rank-one projection with trace 1
  CHECK(std::abs(t.rep[0].trace() - 1.0) < 1e-12);
  CHECK(linalg::max_abs(Matrix(t.rep[0] * t.rep[0] - t.rep[0])) < 1e-12);

  const GnsTriple s = gns_triple(state_at_e1());
  CHECK(s.space_dim == 2);
  CHECK(s.hilbert_bound() == doctest::Approx(1.0).epsilon(1e-12));

  const GnsTriple z = gns_triple(Functional::zero(matrix_algebra(2)));
  CHECK(z.space_dim == 0);
  CHECK(z.cyclic.size() == 0);

  CHECK_THROWS_AS(gns_triple(functional(zero_product_algebra(1), {1.0})), Error);
}

TEST_CASE("GNS faithfulness and *-homomorphism on random functionals") {
  sampling::Rng rng = sampling::case_rng(5, 0);
  for (int t = 0; t < 40; ++t) {
    const AlgebraPtr alg = testing::random_algebra(rng);
    const Functional f = sampling::random_representable(alg, rng);
    const GnsTriple g = gns_triple(f);
    for (int k = 0; k < 5; ++k) {
      const AlgebraElement a = sampling::random_element(alg, rng);
      const Complex expected = evaluate(f, a);
      const Complex got = g.cyclic.dot(g.represent(a) * g.cyclic);
      CHECK(std::abs(got - expected) <= 1e-8 * (1.0 + std::abs(expected)));
      // Cauchy-Schwarz with the Hilbert bound
      const double sq = evaluate(f, multiply(involute(a), a)).real();
      CHECK(std::norm(expected) <= g.hilbert_bound() * sq + 1e-8);
    }
    for (int i = 0; i < alg->dim(); ++i) {
      const AlgebraElement bi = AlgebraElement::basis(alg, i);
      CHECK(linalg::max_abs(Matrix(g.represent(involute(bi)) -
                                   g.rep[static_cast<std::size_t>(i)].adjoint())) <=
            1e-8);
      for (int j = 0; j < alg->dim(); ++j) {
        const AlgebraElement bj = AlgebraElement::basis(alg, j);
        CHECK(linalg::max_abs(Matrix(g.rep[static_cast<std::size_t>(i)] *
                                         g.rep[static_cast<std::size_t>(j)] -
                                     g.represent(multiply(bi, bj)))) <= 1e-8);
      }
    }
    CHECK(g.hilbert_bound() == doctest::Approx(hilbert_bound(f)).epsilon(1e-9));
  }
}

TEST_CASE("order") {
  const AlgebraPtr f2 = function_algebra(2);
  CHECK(leq(functional(f2, {1.0, 1.0}), functional(f2, {2.0, 1.0})));
  CHECK_FALSE(leq(functional(f2, {2.0, 1.0}), functional(f2, {1.0, 3.0})));
  const Functional f = functional(f2, {0.3, 0.7});
  CHECK(leq(f, f));
  CHECK_THROWS_AS(leq(f, trace_functional()), Error);
}

TEST_CASE("Hilbert bound is monotone") {
  sampling::Rng rng = sampling::case_rng(6, 0);
  for (int t = 0; t < 40; ++t) {
    const AlgebraPtr alg = testing::random_algebra(rng);
    const Functional h = sampling::random_representable(alg, rng);
    const Functional g = h + sampling::random_representable(alg, rng);
    REQUIRE(leq(h, g));
    CHECK(hilbert_bound(h) <= hilbert_bound(g) + 1e-9);
  }
}

TEST_CASE("approximate equality uses the full value vector") {
  const AlgebraPtr z2 = zero_product_algebra(2);
  // Equal Gram forms (both zero) but different values.
  CHECK_FALSE(approx_equal(functional(z2, {1.0, 0.0}), functional(z2, {0.0, 0.0})));
  CHECK(approx_equal(functional(z2, {1.0, 0.0}), functional(z2, {1.0 + 1e-12, 0.0})));
}
