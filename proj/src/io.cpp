#include "funcord/io.hpp"

#include <fstream>

#include "funcord/error.hpp"

namespace funcord::io {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorKind::Parse, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int positive_int(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    bad(std::string("'") + key + "' must be a positive integer");
  return v.get<int>();
}

std::optional<AlgebraPtr> try_label(const std::string& label) {
  try {
    return algebra_from_label(label);
  } catch (const Error&) {
    return std::nullopt;
  }
}

AlgebraPtr shorthand_object(const Json& j) {
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) bad("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "matrix") return matrix_algebra(positive_int(j, "n"));
  if (k == "functions")
    return function_algebra(positive_int(j, j.contains("m") ? "m" : "n"));
  if (k == "zero_product") return zero_product_algebra(positive_int(j, "n"));
  if (k == "direct_sum") {
    const Json& parts = field(j, "summands");
    if (!parts.is_array() || parts.size() != 2)
      bad("'summands' must list exactly two algebras");
    return direct_sum(algebra_from_json(parts[0]), algebra_from_json(parts[1]));
  }
  bad("unknown algebra kind '" + k + "'");
}

AlgebraPtr full_object(const Json& j) {
  const int dim = positive_int(j, "dim");
  const std::string label =
      j.contains("label") ? j.at("label").get<std::string>() : "custom";
  const Json& st = field(j, "structure");
  const auto d = static_cast<std::size_t>(dim);
  if (!st.is_array() || st.size() != d) bad("'structure' must be dim x dim x dim");
  std::vector<Complex> flat(d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!st[i].is_array() || st[i].size() != d)
      bad("'structure' must be dim x dim x dim");
    for (std::size_t jj = 0; jj < d; ++jj) {
      const Vector row = vector_from_json(st[i][jj]);
      if (static_cast<std::size_t>(row.size()) != d)
        bad("'structure' must be dim x dim x dim");
      for (std::size_t k = 0; k < d; ++k)
        flat[(i * d + jj) * d + k] = row(static_cast<Eigen::Index>(k));
    }
  }
  const Matrix inv = matrix_from_json(field(j, "involution"));
  std::optional<Vector> unit;
  if (j.contains("unit") && !j.at("unit").is_null())
    unit = vector_from_json(j.at("unit"));
  auto custom = std::make_shared<const StarAlgebra>(
      label, dim, std::move(flat), inv, std::move(unit));
  if (auto named = try_label(label); named && (*named)->same_as(*custom))
    return *named;
  return custom;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad("expected a number or an [re, im] pair, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of scalars");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != rows) bad("expected a square matrix");
    m.row(r) = row.transpose();
  }
  return m;
}

AlgebraPtr algebra_from_json(const Json& j) {
  if (j.is_string()) return algebra_from_label(j.get<std::string>());
  if (!j.is_object()) bad("algebra must be a label or an object");
  if (j.contains("kind")) return shorthand_object(j);
  return full_object(j);
}

Json algebra_to_json(const StarAlgebra& algebra) {
  const int d = algebra.dim();
  Json st = Json::array();
  for (int i = 0; i < d; ++i) {
    Json plane = Json::array();
    for (int j = 0; j < d; ++j) {
      Vector row(d);
      for (int k = 0; k < d; ++k) row(k) = algebra.c(i, j, k);
      plane.push_back(to_json(row));
    }
    st.push_back(std::move(plane));
  }
  Json out = {{"label", algebra.label()},
              {"dim", d},
              {"structure", std::move(st)},
              {"involution", to_json(algebra.involution())}};
  if (algebra.unit()) out["unit"] = to_json(*algebra.unit());
  return out;
}

Functional functional_from_json(const Json& j, const AlgebraPtr& known) {
  const Json& a = field(j, "algebra");
  AlgebraPtr algebra;
  if (a.is_string() && known && known->label() == a.get<std::string>())
    algebra = known;
  else if (a.is_string() && !try_label(a.get<std::string>()) && known)
    bad("functional names algebra '" + a.get<std::string>() +
        "' but the supplied algebra is '" + known->label() + "'");
  else
    algebra = algebra_from_json(a);
  Vector values = vector_from_json(field(j, "values"));
  if (values.size() != algebra->dim())
    throw Error(ErrorKind::SizeMismatch,
                "functional has " + std::to_string(values.size()) +
                    " values, algebra " + algebra->label() + " has dimension " +
                    std::to_string(algebra->dim()));
  return {algebra, std::move(values)};
}

Json functional_to_json(const Functional& f) {
  const StarAlgebra& alg = *f.algebra();
  Json algebra = alg.label();
  if (auto named = try_label(alg.label()); !named || !(*named)->same_as(alg))
    algebra = algebra_to_json(alg);
  return {{"algebra", std::move(algebra)}, {"values", to_json(f.values())}};
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

Json to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const Violation& v : report.violations) {
    Json index = Json::array();
    for (int i : v.index)
      if (i >= 0) index.push_back(i);
    violations.push_back(
        {{"invariant", v.invariant}, {"index", index}, {"residual", v.residual}});
  }
  return {{"valid", report.ok()},
          {"tolerance", report.tolerance},
          {"violations", std::move(violations)}};
}

Json to_json(const GramMatrix& gram, const PositivityReport& positivity) {
  Json out = {{"entries", to_json(gram.entries)},
              {"scale", gram.scale},
              {"positive", positivity.positive},
              {"hermitian_residual", positivity.hermitian_residual},
              {"min_eigenvalue", positivity.min_eigenvalue},
              {"tolerance", positivity.tolerance},
              {"witness", nullptr}};
  if (positivity.witness) out["witness"] = to_json(positivity.witness->coeffs());
  return out;
}

Json to_json(const RepresentabilityReport& report) {
  Json out = {{"representable", report.representable},
              {"failed_condition", nullptr},
              {"hilbert_bound", nullptr},
              {"detail", report.detail},
              {"residual", report.residual},
              {"witness", nullptr}};
  if (!report.failed_condition.empty())
    out["failed_condition"] = report.failed_condition;
  if (report.hilbert_bound) out["hilbert_bound"] = *report.hilbert_bound;
  if (report.witness) out["witness"] = to_json(report.witness->coeffs());
  return out;
}

Json to_json(const GnsTriple& triple) {
  Json rep = Json::array();
  for (const Matrix& m : triple.rep) rep.push_back(to_json(m));
  Json quotient = Json::array();
  for (Eigen::Index r = 0; r < triple.quotient.rows(); ++r)
    quotient.push_back(to_json(Vector(triple.quotient.row(r).transpose())));
  return {{"space_dim", triple.space_dim},
          {"rep", std::move(rep)},
          {"cyclic", to_json(triple.cyclic)},
          {"quotient", std::move(quotient)},
          {"hilbert_bound", triple.hilbert_bound()},
          {"reconstruction_residual", triple.reconstruction_residual}};
}

Json to_json(const ParallelSumResult& result) {
  return {{"value", functional_to_json(result.value)},
          {"projection_rank", result.projection_rank},
          {"residual", result.residual}};
}

Json to_json(const DecompositionReport& report) {
  Json out = {{"regular", functional_to_json(report.regular)},
              {"singular", functional_to_json(report.singular)},
              {"domination_constant", report.domination_constant},
              {"iterations", report.iterations},
              {"extrapolated", report.extrapolated},
              {"residual_singularity", report.residual_singularity},
              {"raw_gap", report.raw_gap},
              {"route", to_string(report.route)},
              {"route_divergence", nullptr}};
  if (report.route_divergence) out["route_divergence"] = *report.route_divergence;
  return out;
}

Json to_json(const ExtremeEquivalenceReport& report) {
  return {{"disjoint_part", report.disjoint_part},
          {"fixed_by_regular_part", report.fixed_by_regular_part},
          {"singularity_residual", report.singularity_residual},
          {"regular_gap", report.regular_gap},
          {"threshold", report.threshold}};
}

Json to_json(const InfimumResult& result) {
  Json out = {{"status", to_string(result.status)},
              {"value", nullptr},
              {"reason", result.reason},
              {"equal", result.equal}};
  if (result.value) out["value"] = functional_to_json(*result.value);
  return out;
}

Json to_json(const SuiteReport& report) {
  Json records = Json::array();
  for (const CaseRecord& r : report.records) {
    Json metrics = Json::object();
    for (const auto& [name, value] : r.metrics) metrics[name] = value;
    records.push_back({{"index", r.index},
                       {"algebra", r.algebra},
                       {"metrics", std::move(metrics)},
                       {"max_error", r.max_error},
                       {"passed", r.passed},
                       {"note", r.note}});
  }
  return {{"suite", to_string(report.suite)},
          {"cases", report.cases},
          {"tolerance", report.tolerance},
          {"passed", report.passed()},
          {"records", std::move(records)}};
}

Json to_json(const oracle::TrendPoint& point) {
  return {{"d", point.dim},
          {"c_min", point.c_min},
          {"expected", point.expected},
          {"regular_part_error", point.regular_part_error}};
}

}  // namespace funcord::io
