#pragma once

#include <optional>
#include <string>
#include <vector>

#include "funcord/functional.hpp"

namespace funcord {

enum class RegularPartRoute {
  /// sup_k f:(2^k g) with Aitken acceleration. Normative.
  Limit,
  /// Radon-Nikodym operators inside the GNS space of f + g; always
  /// differentially checked against `Limit`.
  Commutant,
};

struct RegularPartOptions {
  double tol = 1e-7;
  int k_max = 40;
  /// Extra doubling steps taken after the increment first drops below tol.
  int refine_steps = 4;
  RegularPartRoute route = RegularPartRoute::Limit;
};

/// Everything the doubling iteration produced.
struct RegularPartTrace {
  Functional value;
  /// Raw iterates s_k = f:(2^k g), k = 0..iterations.
  std::vector<Functional> iterates;
  int iterations = 0;
  /// Whether any component of the returned value came from Aitken rather
  /// than from the raw iterate.
  bool extrapolated = false;
  double final_increment = 0.0;
  /// max |value - last raw iterate|
  double raw_gap = 0.0;
  RegularPartRoute route = RegularPartRoute::Limit;
  /// |commutant - limit| when the commutant route ran.
  std::optional<double> route_divergence;
};

/// Threshold above which the two routes are reported as disagreeing.
inline constexpr double kRouteDivergenceTol = 1e-6;

/// [g]f = sup_n f:(ng). Throws NotRepresentable, or NoConvergence when the
/// extrapolated increment is still above tol at k_max.
RegularPartTrace regular_part_trace(const Functional& f, const Functional& g,
                                    const RegularPartOptions& options = {});
Functional regular_part(const Functional& f, const Functional& g,
                        double tol = 1e-7);

/// [g]f by the commutant route alone (no cross-check).
Functional regular_part_commutant(const Functional& f, const Functional& g);

struct DecompositionReport {
  Functional regular;
  Functional singular;
  double domination_constant = 0.0;
  int iterations = 0;
  bool extrapolated = false;
  double residual_singularity = 0.0;
  double raw_gap = 0.0;
  RegularPartRoute route = RegularPartRoute::Limit;
  std::optional<double> route_divergence;
};

/// f = [g]f + (f - [g]f). Throws NoConvergence, NotRepresentable, or
/// InvalidDecomposition when the singular part is not positive.
DecompositionReport lebesgue_decompose(const Functional& f,
                                       const Functional& g,
                                       const RegularPartOptions& options = {});

/// Relative tolerance for range inclusion of Gram forms.
inline constexpr double kDominationTol = 1e-7;

/// Smallest c with f <= c g, from the largest eigenvalue of
/// Q_g^{+1/2} Q_f Q_g^{+1/2}. Throws NotDominated when the range of Q_f is
/// not contained in the range of Q_g.
double domination_constant(const Functional& f, const Functional& g);

/// In finite dimensions f << g iff f <= c g for some c.
bool is_absolutely_continuous(const Functional& f, const Functional& g);

struct UniquenessCertificate {
  bool unique = false;
  double c = 0.0;
};

/// [g]f <= c g implies the g-Lebesgue decomposition of f is unique.
UniquenessCertificate uniqueness_certificate(
    const Functional& f, const Functional& g,
    const RegularPartOptions& options = {});

std::string to_string(RegularPartRoute route);

}  // namespace funcord
