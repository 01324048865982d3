#pragma once

#include <initializer_list>
#include <vector>

#include "funcord/functional.hpp"
#include "funcord/sampling.hpp"

namespace funcord::testing {

/// functions(1..6), matrix(2), matrix(3) and functions(2) (+) matrix(2).
AlgebraPtr random_algebra(sampling::Rng& rng);

struct Pair {
  Functional f;
  Functional g;
};

/// Independent representable f, g; a third of the time g shares part of
/// f's support by construction (g = t f + h).
Pair random_pair(sampling::Rng& rng);

/// A random disjoint part of f: g <= f with g singular to f - g. On
/// matrix blocks this is F^{1/2} P F^{1/2} for a projection P inside the
/// range of F.
Functional random_disjoint_part(const Functional& f, sampling::Rng& rng);

}  // namespace funcord::testing

namespace funcord::testing {

inline Functional functional(const AlgebraPtr& algebra,
                             std::initializer_list<Complex> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex z : values) v(i++) = z;
  return {algebra, v};
}

/// f(T) = <T x, x> on matrix(n).
Functional vector_state(const AlgebraPtr& algebra, const Vector& x);

inline double max_abs(const Vector& v) { return linalg::max_abs(v); }

}  // namespace funcord::testing
