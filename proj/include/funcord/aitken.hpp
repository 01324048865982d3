#pragma once

#include "funcord/linalg.hpp"

namespace funcord {

/// Componentwise Aitken delta-squared estimate from three consecutive
/// iterates,
///
///   s2 - (s2 - s1)^2 / ((s2 - s1) - (s1 - s0)).
///
/// A component whose second difference is below `guard` keeps the raw
/// value s2. `accelerated` (optional) receives the number of components
/// that were actually extrapolated.
Vector aitken_delta2(const Vector& s0, const Vector& s1, const Vector& s2,
                     double guard, int* accelerated = nullptr);

}  // namespace funcord
