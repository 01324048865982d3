// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "funcord/differential.hpp"
#include "funcord/error.hpp"
#include "funcord/lebesgue.hpp"
#include "funcord/oracles.hpp"
#include "funcord/order_intervals.hpp"
#include "funcord/parallel_sum.hpp"
#include "funcord/sampling.hpp"
#include "support/cases.hpp"

using namespace funcord;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

double max_abs(const Vector& v) { return linalg::max_abs(v); }

// 1. (ag):(bg) = ab/(a+b) g
Outcome scalar_law() {
  sampling::Rng rng = sampling::case_rng(kSeed, 1);
  std::uniform_real_distribution<double> coef(0.1, 10.0);
  std::uniform_int_distribution<int> kind(0, 6);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    const int k = kind(rng);
    const AlgebraPtr alg = k < 6 ? function_algebra(k + 1) : matrix_algebra(2);
    const Functional g = sampling::random_representable(alg, rng);
    const double a = coef(rng), b = coef(rng);
    const Functional got = parallel_sum(g * a, g * b).value;
    const double err = max_abs(got.values() - (a * b / (a + b)) * g.values());
    const double bound = 1e-8 * (1.0 + std::max(a, b) * g.scale());
    worst = std::max(worst, err / bound);
    if (err > bound) ++failures;
  }
  return {failures == 0, "200 cases, worst error/bound " + fmt("%.3g", worst)};
}

// 2. projection route vs variational formula on squares
Outcome formula_agreement() {
  sampling::Rng rng = sampling::case_rng(kSeed, 2);
  std::uniform_int_distribution<int> kind(0, 7);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int k = kind(rng);
    const AlgebraPtr alg =
        k < 6    ? function_algebra(k + 1)
        : k == 6 ? matrix_algebra(2)
                 : direct_sum(function_algebra(2), matrix_algebra(2));
    const Functional f = sampling::random_representable(alg, rng);
    const Functional g = sampling::random_representable(alg, rng);
    const AlgebraElement a = sampling::random_element(alg, rng);
    const Functional fg = parallel_sum(f, g).value;
    const double projected = evaluate(fg, multiply(involute(a), a)).real();
    const double variational = variational_value(f, g, a);
    // Relative error; values below 1e-8 of the input scale count as zero.
    const double floor = 1e-8 * (1.0 + f.scale() + g.scale());
    const double rel =
        std::abs(projected - variational) / std::max(std::abs(variational), floor);
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-7, "200 cases, worst relative error " + fmt("%.3g", worst)};
}

struct PairRun {
  Functional f;
  Functional g;
  RegularPartTrace trace;
};

std::vector<PairRun> decomposition_pairs(std::uint64_t stream) {
  sampling::Rng rng = sampling::case_rng(kSeed, stream);
  std::vector<PairRun> runs;
  for (int i = 0; i < 100; ++i) {
    testing::Pair p = testing::random_pair(rng);
    RegularPartTrace t = regular_part_trace(p.f, p.g);
    runs.push_back({p.f, p.g, std::move(t)});
  }
  return runs;
}

// 3. Lebesgue validity
Outcome lebesgue_validity() {
  const std::vector<PairRun> runs = decomposition_pairs(3);
  int failures = 0;
  std::string first;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const PairRun& r = runs[i];
    auto fail = [&](const std::string& what) {
      if (failures++ == 0) first = "case " + std::to_string(i) + ": " + what;
    };
    try {
      const DecompositionReport rep = lebesgue_decompose(r.f, r.g);
      const double sum_err =
          max_abs(rep.regular.values() + rep.singular.values() - r.f.values());
      if (sum_err > 1e-8 * (1.0 + r.f.scale())) fail("regular + singular != f");
      if (!is_singular(rep.singular, r.g)) fail("singular part not singular to g");
      domination_constant(rep.regular, r.g);
      for (const Functional& s : r.trace.iterates)
        if (!leq(s, rep.regular)) {
          fail("iterate above regular part");
          break;
        }
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return {failures == 0, "100 pairs, " + std::to_string(failures) + " failures" +
                             (first.empty() ? "" : " (" + first + ")")};
}

// 4. [g]f = [[f]g]f and mutual domination of the regular parts
Outcome identity_suite() {
  sampling::Rng rng = sampling::case_rng(kSeed, 4);
  double worst = 0.0;
  int failures = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    const testing::Pair p = testing::random_pair(rng);
    try {
      const Functional gf = regular_part(p.f, p.g);
      const Functional fg = regular_part(p.g, p.f);
      const Functional iterated = regular_part(p.f, fg);
      worst = std::max(worst, max_abs(gf.values() - iterated.values()));
      const bool gf_zero = gf.scale() <= 1e-8 * (1.0 + p.f.scale());
      const bool fg_zero = fg.scale() <= 1e-8 * (1.0 + p.g.scale());
      if (!gf_zero && !fg_zero) {
        domination_constant(gf, fg);
        domination_constant(fg, gf);
      }
    } catch (const Error& e) {
      if (failures++ == 0) first = "case " + std::to_string(i) + ": " + e.what();
    }
  }
  return {failures == 0 && worst <= 1e-6,
          "100 pairs, worst identity gap " + fmt("%.3g", worst) +
              (first.empty() ? "" : ", " + first)};
}

// 5. disjoint part <=> [g]f = g
Outcome extreme_equivalence() {
  sampling::Rng rng = sampling::case_rng(kSeed, 5);
  int disagreements = 0, wrong = 0, banded = 0;
  auto check = [&](const Functional& g, const Functional& f, bool expected) {
    try {
      const ExtremeEquivalenceReport r = extreme_equivalences(g, f);
      if (r.disjoint_part != r.fixed_by_regular_part)
        ++banded;  // inside the hysteresis band
      else if (r.disjoint_part != expected)
        ++wrong;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ToleranceConflict) throw;
      ++disagreements;
    }
  };
  int built = 0;
  while (built < 100) {
    const AlgebraPtr alg = testing::random_algebra(rng);
    const Functional f = sampling::random_representable(alg, rng);
    check(testing::random_disjoint_part(f, rng), f, true);
    ++built;
  }
  int midpoints = 0;
  while (midpoints < 100) {
    const AlgebraPtr alg = testing::random_algebra(rng);
    const Functional f = sampling::random_representable(alg, rng);
    const Functional d1 = testing::random_disjoint_part(f, rng);
    const Functional d2 = testing::random_disjoint_part(f, rng);
    if (max_abs(d1.values() - d2.values()) < 1e-3 * (1.0 + f.scale())) continue;
    check((d1 + d2) * 0.5, f, false);
    ++midpoints;
  }
  return {disagreements == 0 && wrong == 0,
          "200 instances, " + std::to_string(disagreements) +
              " disagreements, " + std::to_string(wrong) + " wrong verdicts, " +
              std::to_string(banded) + " in band"};
}

// 6. commutative oracle
Outcome commutative_oracle() {
  const SuiteReport rep = run_suite(Suite::Commutative, 100, kSeed);
  double worst = 0.0;
  for (const CaseRecord& r : rep.records) worst = std::max(worst, r.max_error);

  const AlgebraPtr alg = function_algebra(2);
  const Functional f(alg, Vector{{2.0, 1.0}});
  const Functional g(alg, Vector{{1.0, 3.0}});
  const InfimumResult generic = infimum(f, g);
  const InfimumResult measure =
      infimum_with_backend(f, g, InfimumBackend::Commutative);
  const bool pinned =
      generic.status == InfimumStatus::Unknown && measure.value &&
      max_abs(measure.value->values() - Vector{{1.0, 1.0}}) <= 1e-12;
  return {rep.passed() && pinned,
          "100 cases, worst error " + fmt("%.3g", worst) +
              ", (2,1)^(1,3): generic " + to_string(generic.status) +
              ", oracle (1,1)" + (pinned ? "" : " MISMATCH")};
}

// 7. matrix oracle through trace duality
Outcome matrix_oracle() {
  const SuiteReport rep = run_suite(Suite::Matrix, 100, kSeed);
  double worst = 0.0;
  int failed = 0;
  std::string first;
  for (const CaseRecord& r : rep.records) {
    worst = std::max(worst, r.max_error);
    if (!r.passed && failed++ == 0)
      first = "case " + std::to_string(r.index) + " " + r.note;
  }
  return {rep.passed(), "100 cases, worst error " + fmt("%.3g", worst) +
                            (first.empty() ? "" : ", " + first)};
}

// 8. c_min(d) = d^2
Outcome counterexample_trend() {
  const SuiteReport rep = run_suite(Suite::Trend, 0, kSeed);
  std::string table;
  for (const CaseRecord& r : rep.records)
    for (const auto& [name, v] : r.metrics)
      if (name == "c_min") table += fmt(" %.6g", v);
  return {rep.passed(), "c_min over d=2,4,8,16,32:" + table};
}

// 9. representability gate and Hilbert bound = trace F
Outcome representability_gate() {
  const AlgebraPtr zp = zero_product_algebra(1);
  const RepresentabilityReport r =
      check_representable(Functional(zp, Vector{{1.0}}));
  const bool rejected = !r.representable && r.failed_condition == "cyclic_bound";

  sampling::Rng rng = sampling::case_rng(kSeed, 9);
  const AlgebraPtr m2 = matrix_algebra(2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Functional f = sampling::random_representable(m2, rng);
    const double trace = (f.values()(0) + f.values()(3)).real();
    worst = std::max(worst, std::abs(hilbert_bound(f) - trace));
  }
  return {rejected && worst <= 1e-8,
          std::string("zero_product(1) ") +
              (rejected ? "rejected (cyclic_bound)" : "NOT rejected") +
              ", worst |bound - trace F| " + fmt("%.3g", worst)};
}

// 10. extrapolation does work
Outcome convergence_diagnostics(const std::vector<Outcome>& earlier) {
  const std::vector<PairRun> runs = decomposition_pairs(3);
  const double tol = RegularPartOptions{}.tol;
  int working = 0;
  double largest = 0.0;
  for (const PairRun& r : runs) {
    largest = std::max(largest, r.trace.raw_gap);
    if (r.trace.raw_gap > tol) ++working;
  }
  bool others = true;
  for (std::size_t i = 2; i <= 6 && i < earlier.size(); ++i)
    others = others && earlier[i].pass;
  return {working > 0 && others,
          std::to_string(working) + "/100 cases with |extrapolated - raw| > tol, "
              "largest " + fmt("%.3g", largest) +
              (others ? "" : ", criteria 3-7 not all passing")};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "parallel-sum scalar law", 10.0, scalar_law},
      {2, "projection vs variational formula", 30.0, formula_agreement},
      {3, "Lebesgue decomposition validity", 120.0, lebesgue_validity},
      {4, "iterated regular part identity", 0.0, identity_suite},
      {5, "extreme-point equivalence", 0.0, extreme_equivalence},
      {6, "commutative oracle", 0.0, commutative_oracle},
      {7, "matrix oracle", 0.0, matrix_oracle},
      {8, "counterexample trend", 5.0, counterexample_trend},
      {9, "representability gate", 0.0, representability_gate},
  };
  std::vector<Outcome> outcomes;
  bool all = true;
  auto report = [&](int id, const std::string& name, Outcome o, double secs,
                    double limit) {
    if (limit > 0.0 && secs > limit) {
      o.pass = false;
      o.detail += ", over time limit";
    }
    std::printf("%s criterion %d: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL",
                id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
    outcomes.push_back(o);
  };
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    report(c.id, c.name, o, secs, c.time_limit_s);
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome o10;
  try {
    o10 = convergence_diagnostics(outcomes);
  } catch (const std::exception& e) {
    o10 = {false, std::string("exception: ") + e.what()};
  }
  report(10, "convergence diagnostics",
         o10,
         std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
             .count(),
         0.0);
  return all ? 0 : 1;
}
