#include "funcord/differential.hpp"

#include <algorithm>
#include <future>
#include <thread>

#include "funcord/error.hpp"
#include "funcord/lebesgue.hpp"
#include "funcord/oracles.hpp"
#include "funcord/parallel_sum.hpp"
#include "funcord/sampling.hpp"

namespace funcord {

namespace {

/// F(j, i) = f(e_ij) without the PSD validation of oracle::TraceMatrix, so
/// that slightly noisy generic output can be compared.
Matrix dual_entries(const Functional& f) {
  const int n = f.algebra()->matrix_order();
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(j, i) = f.values()(i * n + j);
  return out;
}

double gap(const Vector& a, const Vector& b) {
  return linalg::max_abs(Vector(a - b));
}

double gap(const Matrix& a, const Matrix& b) {
  return linalg::max_abs(Matrix(a - b));
}

}  // namespace

double DualityComparison::max_error() const {
  return std::max({roundtrip_error, parallel_sum_error, regular_part_error,
                   hilbert_bound_error});
}

double MeasureComparison::max_error() const {
  return std::max({parallel_sum_error, regular_part_error, singular_part_error,
                   infimum_error});
}

DualityComparison compare_through_duality(const Functional& f,
                                          const Functional& g) {
  require_same_algebra(f, g);
  const oracle::TraceMatrix fm = oracle::trace_dual(f);
  const oracle::TraceMatrix gm = oracle::trace_dual(g);
  DualityComparison out;
  out.roundtrip_error =
      gap(oracle::from_trace_dual(f.algebra(), fm).values(), f.values());

  const oracle::TraceMatrix ps = oracle::matrix_parallel_sum(fm, gm);
  out.parallel_sum_error =
      gap(dual_entries(parallel_sum(f, g).value), ps.entries());
  out.regular_part_error =
      gap(dual_entries(regular_part(f, g)),
          oracle::matrix_regular_part(fm, gm).entries());
  out.hilbert_bound_error =
      std::abs(hilbert_bound(f) - fm.entries().trace().real());

  out.order_agrees = leq(f, g) == oracle::matrix_leq(fm, gm);
  const double singular_threshold =
      1e-8 * (1.0 + std::min(f.scale(), g.scale()));
  const bool matrix_singular =
      linalg::max_abs(ps.entries()) <= singular_threshold;
  out.singularity_agrees = is_singular(f, g) == matrix_singular;
  bool matrix_dominated = true;
  try {
    oracle::matrix_domination_constant(fm, gm);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotDominated) throw;
    matrix_dominated = false;
  }
  out.continuity_agrees = is_absolutely_continuous(f, g) == matrix_dominated;
  return out;
}

MeasureComparison compare_with_measures(const Functional& f,
                                        const Functional& g) {
  require_same_algebra(f, g);
  const oracle::Measure mu = oracle::measure_of(f);
  const oracle::Measure nu = oracle::measure_of(g);
  MeasureComparison out;
  out.parallel_sum_error =
      gap(parallel_sum(f, g).value.values(),
          oracle::measure_parallel_sum(mu, nu).weights().cast<Complex>());
  const oracle::MeasureDecomposition split = oracle::measure_lebesgue(mu, nu);
  const Functional regular = regular_part(f, g);
  out.regular_part_error =
      gap(regular.values(), split.regular.weights().cast<Complex>());
  out.singular_part_error = gap(Vector(f.values() - regular.values()),
                                split.singular.weights().cast<Complex>());
  out.singularity_agrees =
      is_singular(f, g) == oracle::measure_singular(mu, nu);
  const InfimumResult generic = infimum(f, g);
  out.generic_infimum = generic.status;
  if (generic.status == InfimumStatus::Exists)
    out.infimum_error =
        gap(generic.value->values(),
            oracle::measure_infimum(mu, nu).weights().cast<Complex>());
  return out;
}

std::string to_string(InfimumBackend backend) {
  switch (backend) {
    case InfimumBackend::Generic: return "generic";
    case InfimumBackend::Matrix: return "matrix";
    case InfimumBackend::Commutative: return "commutative";
  }
  return "generic";
}

InfimumResult infimum_with_backend(const Functional& f, const Functional& g,
                                   InfimumBackend backend, double tol) {
  require_same_algebra(f, g);
  switch (backend) {
    case InfimumBackend::Generic:
      return infimum(f, g, tol);
    case InfimumBackend::Matrix: {
      const oracle::TraceMatrix fm = oracle::trace_dual(f);
      const oracle::TraceMatrix gm = oracle::trace_dual(g);
      const oracle::TraceMatrix u = oracle::matrix_regular_part(gm, fm);  // [F]G
      const oracle::TraceMatrix v = oracle::matrix_regular_part(fm, gm);  // [G]F
      InfimumResult result;
      const bool u_below = oracle::matrix_leq(u, v);
      const bool v_below = oracle::matrix_leq(v, u);
      if (u_below || v_below) {
        result.status = InfimumStatus::Exists;
        result.value = oracle::from_trace_dual(f.algebra(), u_below ? u : v);
        result.equal = u_below && v_below;
        result.reason = u_below ? "trace duality: [F]G <= [G]F; infimum is [f]g"
                                : "trace duality: [G]F <= [F]G; infimum is [g]f";
      } else {
        result.status = InfimumStatus::NotExists;
        result.reason =
            "trace duality: [F]G and [G]F are incomparable, so F ^ G does "
            "not exist";
      }
      return result;
    }
    case InfimumBackend::Commutative: {
      const oracle::Measure low =
          oracle::measure_infimum(oracle::measure_of(f), oracle::measure_of(g));
      InfimumResult result;
      result.status = InfimumStatus::Exists;
      result.value = oracle::functional_of(f.algebra(), low);
      result.reason = "measure infimum: atomwise minimum";
      return result;
    }
  }
  return {};
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Commutative: return "commutative";
    case Suite::Matrix: return "matrix";
    case Suite::Trend: return "trend";
  }
  return "commutative";
}

bool SuiteReport::passed() const {
  return std::all_of(records.begin(), records.end(),
                     [](const CaseRecord& r) { return r.passed; });
}

namespace {

constexpr double kCommutativeTol = 1e-7;
constexpr double kMatrixTol = 1e-6;
constexpr double kTrendRelTol = 1e-2;

CaseRecord commutative_case(std::uint64_t seed, int index) {
  sampling::Rng rng = sampling::case_rng(seed, static_cast<std::uint64_t>(index));
  CaseRecord record;
  record.index = index;
  AlgebraPtr alg;
  RealVector mu, nu;
  if (index == 0) {
    // Incomparable regular parts: the generic rule cannot decide, while the
    // measure infimum (1, 1) exists.
    alg = function_algebra(2);
    mu = RealVector{{2.0, 1.0}};
    nu = RealVector{{1.0, 3.0}};
  } else {
    std::uniform_int_distribution<int> atoms(1, 8);
    alg = function_algebra(atoms(rng));
    mu = sampling::random_weights(alg->dim(), 0.3, rng);
    std::uniform_int_distribution<int> shape(0, 2);
    if (shape(rng) == 0) {
      // Atomwise dominated pair, so the sufficient condition applies.
      std::uniform_real_distribution<double> t(0.0, 1.0);
      nu = mu;
      for (Eigen::Index i = 0; i < nu.size(); ++i) nu(i) *= t(rng);
    } else {
      nu = sampling::random_weights(alg->dim(), 0.3, rng);
    }
  }
  record.algebra = alg->label();
  const Functional f = sampling::functional_from_weights(alg, mu);
  const Functional g = sampling::functional_from_weights(alg, nu);
  const MeasureComparison c = compare_with_measures(f, g);
  record.metrics = {{"parallel_sum_error", c.parallel_sum_error},
                    {"regular_part_error", c.regular_part_error},
                    {"singular_part_error", c.singular_part_error},
                    {"singularity_agrees", c.singularity_agrees ? 1.0 : 0.0},
                    {"infimum_error", c.infimum_error}};
  record.max_error = c.max_error();
  record.note = "generic infimum " + to_string(c.generic_infimum);
  record.passed = c.singularity_agrees && record.max_error <= kCommutativeTol;
  return record;
}

CaseRecord matrix_case(std::uint64_t seed, int index) {
  sampling::Rng rng = sampling::case_rng(seed, static_cast<std::uint64_t>(index));
  CaseRecord record;
  record.index = index;
  std::uniform_int_distribution<int> order(2, 3);
  const AlgebraPtr alg = matrix_algebra(order(rng));
  const Functional f = sampling::random_representable(alg, rng);
  Functional g = sampling::random_representable(alg, rng);
  std::uniform_int_distribution<int> shape(0, 2);
  if (shape(rng) == 0) g = f + g;  // ordered pair
  record.algebra = alg->label();
  const DualityComparison c = compare_through_duality(f, g);
  record.metrics = {{"roundtrip_error", c.roundtrip_error},
                    {"parallel_sum_error", c.parallel_sum_error},
                    {"regular_part_error", c.regular_part_error},
                    {"hilbert_bound_error", c.hilbert_bound_error},
                    {"order_agrees", c.order_agrees ? 1.0 : 0.0},
                    {"singularity_agrees", c.singularity_agrees ? 1.0 : 0.0},
                    {"continuity_agrees", c.continuity_agrees ? 1.0 : 0.0}};
  record.max_error = c.max_error();
  record.passed = c.agrees() && record.max_error <= kMatrixTol;
  return record;
}

CaseRecord trend_case(int index, int dim) {
  CaseRecord record;
  record.index = index;
  record.algebra = "diag(" + std::to_string(dim) + ")";
  const oracle::TrendPoint p = oracle::trend_point(dim);
  const double rel = std::abs(p.c_min - p.expected) / p.expected;
  record.metrics = {{"dim", static_cast<double>(dim)},
                    {"c_min", p.c_min},
                    {"expected", p.expected},
                    {"relative_error", rel},
                    {"regular_part_error", p.regular_part_error}};
  record.max_error = rel;
  record.passed = rel <= kTrendRelTol;
  return record;
}

CaseRecord run_case(Suite suite, std::uint64_t seed, int index) {
  try {
    switch (suite) {
      case Suite::Commutative: return commutative_case(seed, index);
      case Suite::Matrix: return matrix_case(seed, index);
      case Suite::Trend: return trend_case(index, 2 << index);
    }
  } catch (const Error& e) {
    CaseRecord failed;
    failed.index = index;
    failed.note = std::string(to_string(e.kind())) + ": " + e.what();
    return failed;
  }
  return {};
}

}  // namespace

SuiteReport run_suite(Suite suite, int cases, std::uint64_t seed,
                      unsigned threads) {
  SuiteReport report;
  report.suite = suite;
  report.seed = seed;
  report.cases = suite == Suite::Trend ? 5 : std::max(cases, 0);
  report.tolerance = suite == Suite::Commutative ? kCommutativeTol
                     : suite == Suite::Matrix    ? kMatrixTol
                                                 : kTrendRelTol;
  report.records.resize(static_cast<std::size_t>(report.cases));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(report.cases, 1));

  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads; ++w)
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (int i = static_cast<int>(w); i < report.cases;
           i += static_cast<int>(threads))
        report.records[static_cast<std::size_t>(i)] = run_case(suite, seed, i);
    }));
  for (auto& w : workers) w.get();
  return report;
}

}  // namespace funcord
