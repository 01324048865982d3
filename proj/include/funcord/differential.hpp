#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "funcord/functional.hpp"
#include "funcord/order_intervals.hpp"

// Differential checks of the generic pipeline against the oracles.

namespace funcord {

/// Generic results mapped through trace duality versus the matrix oracle,
/// for one pair on matrix(n).
struct DualityComparison {
  double roundtrip_error = 0.0;
  double parallel_sum_error = 0.0;
  double regular_part_error = 0.0;   // |Phi([g]f) - [G]F|
  double hilbert_bound_error = 0.0;  // |hilbert_bound(f) - trace F|
  bool order_agrees = true;          // leq(f, g) == (F <= G)
  bool singularity_agrees = true;
  bool continuity_agrees = true;

  double max_error() const;
  bool agrees() const {
    return order_agrees && singularity_agrees && continuity_agrees;
  }
};

DualityComparison compare_through_duality(const Functional& f,
                                          const Functional& g);

/// Generic results versus the measure oracle for one pair on functions(m).
struct MeasureComparison {
  double parallel_sum_error = 0.0;
  double regular_part_error = 0.0;
  double singular_part_error = 0.0;
  bool singularity_agrees = true;
  InfimumStatus generic_infimum = InfimumStatus::Unknown;
  /// |generic infimum - measure infimum| when the generic rule decides.
  double infimum_error = 0.0;

  double max_error() const;
};

MeasureComparison compare_with_measures(const Functional& f,
                                        const Functional& g);

enum class InfimumBackend { Generic, Matrix, Commutative };
std::string to_string(InfimumBackend backend);

/// Generic: the comparability rule. Matrix: the same rule on trace-dual
/// matrices, where comparability is also necessary. Commutative: the
/// measure infimum, which always exists.
InfimumResult infimum_with_backend(const Functional& f, const Functional& g,
                                   InfimumBackend backend, double tol = 1e-7);

enum class Suite { Commutative, Matrix, Trend };
std::string to_string(Suite suite);

struct CaseRecord {
  int index = 0;
  std::string algebra;
  /// Named errors and flags (flags as 0/1).
  std::vector<std::pair<std::string, double>> metrics;
  double max_error = 0.0;
  bool passed = false;
  std::string note;
};

struct SuiteReport {
  Suite suite = Suite::Commutative;
  int cases = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<CaseRecord> records;

  bool passed() const;
};

/// Runs `cases` random cases (the trend suite ignores `cases` and uses
/// d = 2, 4, 8, 16, 32). Cases may run on `threads` workers; records are
/// ordered by case index and depend only on (seed, index).
SuiteReport run_suite(Suite suite, int cases, std::uint64_t seed,
                      unsigned threads = 0);

}  // namespace funcord
