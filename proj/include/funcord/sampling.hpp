#pragma once

#include <cstdint>
#include <random>

#include "funcord/functional.hpp"

namespace funcord::sampling {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for case `index` of a run seeded with
/// `seed`.
Rng case_rng(std::uint64_t seed, std::uint64_t index);

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// B B^H with B of shape n x rank; rank 0 gives the zero matrix.
Matrix random_psd(int n, int rank, Rng& rng);

/// Non-negative weights, each atom zero with probability `zero_probability`.
RealVector random_weights(int m, double zero_probability, Rng& rng);

/// f(T) = trace(F T) on matrix(n).
Functional functional_from_trace_matrix(const AlgebraPtr& algebra,
                                        const Matrix& trace_matrix);

/// f = sum_i w_i delta_i on functions(m).
Functional functional_from_weights(const AlgebraPtr& algebra,
                                   const RealVector& weights);

/// A representable functional on matrix, function and direct-sum algebras
/// (recursively); rank deficiency and zero atoms occur with positive
/// probability. Zero-product algebras only admit the zero functional.
Functional random_representable(const AlgebraPtr& algebra, Rng& rng);

AlgebraElement random_element(const AlgebraPtr& algebra, Rng& rng);

}  // namespace funcord::sampling
