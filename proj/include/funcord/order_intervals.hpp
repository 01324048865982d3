#pragma once

#include <optional>
#include <string>

#include "funcord/functional.hpp"

namespace funcord {

/// h is extreme in [lo, hi] iff (h - lo) : (hi - h) = 0. Throws
/// OrderViolation unless lo <= h <= hi.
bool is_extreme_in_interval(const Functional& h, const Functional& lo,
                            const Functional& hi);

/// The two computable characterisations of "g is extreme in [0, f]":
/// g is a disjoint part of f, and [g]f = g.
struct ExtremeEquivalenceReport {
  bool disjoint_part = false;
  bool fixed_by_regular_part = false;
  /// max |g : (f - g)|
  double singularity_residual = 0.0;
  /// max |[g]f - g|
  double regular_gap = 0.0;
  /// tol * (1 + scale(f)); a test is undecided between this and 10x it.
  double threshold = 0.0;
};

/// Throws OrderViolation unless g <= f, and ToleranceConflict when one test
/// is below the threshold while the other is above ten times it.
ExtremeEquivalenceReport extreme_equivalences(const Functional& g,
                                              const Functional& f,
                                              double tol = 1e-7);

enum class InfimumStatus { Exists, NotExists, Unknown };
std::string to_string(InfimumStatus status);

struct InfimumResult {
  InfimumStatus status = InfimumStatus::Unknown;
  std::optional<Functional> value;
  std::string reason;
  /// Both regular parts compared equal within tolerance.
  bool equal = false;
};

/// Comparability of [f]g and [g]f decides existence: the smaller one is
/// the infimum. When they are incomparable the answer is NotExists on a
/// full matrix algebra and Unknown elsewhere.
InfimumResult infimum(const Functional& f, const Functional& g,
                      double tol = 1e-7);

/// u ^ h = [u]h for u extreme in [0, f] and h <= f. When h is extreme too,
/// checks [u]h = [h]u within tol * (1 + scale) and throws ToleranceConflict
/// otherwise. Throws OrderViolation when the preconditions fail.
Functional extreme_meet(const Functional& u, const Functional& h,
                        const Functional& f, double tol = 1e-6);

}  // namespace funcord
