#pragma once

#include <filesystem>
#include <json.hpp>

#include "funcord/differential.hpp"
#include "funcord/lebesgue.hpp"
#include "funcord/oracles.hpp"
#include "funcord/order_intervals.hpp"
#include "funcord/parallel_sum.hpp"
#include "funcord/star_algebra.hpp"

// JSON encodings. Complex numbers are [re, im] pairs.

namespace funcord::io {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const Vector& v);
/// Row-major nested arrays of pairs.
Json to_json(const Matrix& m);
Complex complex_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

/// Accepts a shorthand label ("matrix(2)"), a shorthand object
/// ({"kind": "matrix", "n": 2}, {"kind": "direct_sum", "summands": [...]})
/// or the full {"label", "dim", "structure", "involution", "unit"} form.
/// Full objects are not validated here; a full object equal to a
/// shorthand constructor resolves to that constructor.
AlgebraPtr algebra_from_json(const Json& j);
Json algebra_to_json(const StarAlgebra& algebra);

/// {"algebra": label-or-object, "values": [...]}. A label that is not a
/// shorthand is resolved against `known` when given. Values may be plain
/// reals or [re, im] pairs.
Functional functional_from_json(const Json& j, const AlgebraPtr& known = nullptr);
/// The algebra is written as its label when the label rebuilds it, and as
/// a full object otherwise.
Json functional_to_json(const Functional& f);

Json read_file(const std::filesystem::path& path);

Json to_json(const ValidationReport& report);
Json to_json(const GramMatrix& gram, const PositivityReport& positivity);
Json to_json(const RepresentabilityReport& report);
Json to_json(const GnsTriple& triple);
Json to_json(const ParallelSumResult& result);
Json to_json(const DecompositionReport& report);
Json to_json(const ExtremeEquivalenceReport& report);
Json to_json(const InfimumResult& result);
Json to_json(const SuiteReport& report);
Json to_json(const oracle::TrendPoint& point);

}  // namespace funcord::io
