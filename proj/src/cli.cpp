#include "funcord/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "funcord/error.hpp"
#include "funcord/io.hpp"
#include "funcord/oracles.hpp"
#include "funcord/version.hpp"

namespace funcord::cli {

namespace {

using io::Json;

struct CommandSpec {
  Command command;
  const char* name;
  std::vector<std::string> required;
  std::vector<std::string> optional;
  const char* help;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table = {
      {Command::Validate, "validate", {"--algebra"}, {}, "check the *-algebra axioms"},
      {Command::Gram, "gram", {"--f"}, {}, "Gram matrix and positivity"},
      {Command::Gns, "gns", {"--f"}, {}, "representability and GNS triple"},
      {Command::Parsum, "parsum", {"--f", "--g"}, {}, "parallel sum f:g"},
      {Command::Lebesgue, "lebesgue", {"--f", "--g"}, {}, "decomposition f = [g]f + singular"},
      {Command::Extreme, "extreme", {"--h", "--hi"}, {"--lo"}, "is h extreme in [lo, hi]"},
      {Command::Infimum, "infimum", {"--f", "--g"}, {}, "infimum f ^ g"},
      {Command::OracleCheck, "oracle-check", {}, {}, "differential checks against the oracles"},
      {Command::Trend, "trend", {}, {}, "truncated diagonal counterexample, c_min(d)"},
  };
  return table;
}

const CommandSpec& spec_of(Command command) {
  for (const CommandSpec& s : commands())
    if (s.command == command) return s;
  return commands().front();
}

std::string timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream s;
  s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

struct Inputs {
  AlgebraPtr algebra;
  std::map<std::string, Functional> functionals;

  const Functional& at(const std::string& flag) const {
    return functionals.at(flag);
  }
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  if (auto it = cfg.inputs.find("--algebra"); it != cfg.inputs.end())
    in.algebra = io::algebra_from_json(io::read_file(it->second));
  for (const auto& [flag, path] : cfg.inputs) {
    if (flag == "--algebra") continue;
    in.functionals.emplace(
        flag, io::functional_from_json(io::read_file(path), in.algebra));
  }
  const Functional* first = nullptr;
  for (const auto& [flag, f] : in.functionals) {
    if (!first) {
      first = &f;
      continue;
    }
    require_same_algebra(*first, f);
  }
  if (first) {
    const ValidationReport report = validate_structure(*first->algebra());
    if (!report.ok())
      throw Error(ErrorKind::Construction,
                  "algebra " + first->algebra()->label() + " violates " +
                      report.violations.front().invariant);
  }
  return in;
}

struct Outcome {
  Json result;
  int exit_code = 0;
  std::string summary;
  std::optional<Json> error;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string values_text(const Functional& f) {
  std::ostringstream s;
  s << "(";
  for (Eigen::Index i = 0; i < f.values().size(); ++i) {
    const Complex z = f.values()(i);
    if (i) s << ", ";
    s << num(z.real());
    if (std::abs(z.imag()) > 1e-12) s << (z.imag() < 0 ? "-" : "+") << num(std::abs(z.imag())) << "i";
  }
  s << ")";
  return s.str();
}

Outcome run_validate(const RunConfig& cfg) {
  const AlgebraPtr alg =
      io::algebra_from_json(io::read_file(cfg.inputs.at("--algebra")));
  const ValidationReport report = validate_structure(*alg);
  Outcome o;
  o.result = io::to_json(report);
  o.result["algebra"] = alg->label();
  o.result["dim"] = alg->dim();
  o.exit_code = report.ok() ? 0 : 2;
  o.summary = alg->label() + ": " +
              (report.ok() ? "valid"
                           : std::to_string(report.violations.size()) +
                                 " violation(s), first " +
                                 report.violations.front().invariant);
  return o;
}

Outcome run_gram(const Inputs& in) {
  const Functional& f = in.at("--f");
  const PositivityReport pos = check_positive(f);
  Outcome o;
  o.result = io::to_json(gram_matrix(f), pos);
  o.summary = std::string("positive: ") + (pos.positive ? "yes" : "no") +
              ", min eigenvalue " + num(pos.min_eigenvalue);
  return o;
}

Outcome run_gns(const Inputs& in) {
  const Functional& f = in.at("--f");
  const RepresentabilityReport rep = check_representable(f);
  Outcome o;
  o.result = io::to_json(rep);
  if (!rep.representable) {
    o.exit_code = 2;
    o.error = Json{{"kind", "NotRepresentable"},
                   {"message", rep.failed_condition + ": " + rep.detail}};
    o.summary = "not representable: " + rep.failed_condition + " fails";
    return o;
  }
  const GnsTriple triple = gns_triple(f);
  o.result["gns"] = io::to_json(triple);
  o.summary = "representable, GNS dimension " + std::to_string(triple.space_dim) +
              ", Hilbert bound " + num(triple.hilbert_bound());
  return o;
}

Outcome run_parsum(const Inputs& in) {
  const Functional& f = in.at("--f");
  const Functional& g = in.at("--g");
  const ParallelSumResult r = parallel_sum(f, g);
  Outcome o;
  o.result = io::to_json(r);
  const bool singular = is_singular(f, g);
  o.result["singular"] = singular;
  o.summary = "f:g = " + values_text(r.value) + (singular ? ", f and g singular" : "");
  return o;
}

Outcome run_lebesgue(const RunConfig& cfg, const Inputs& in) {
  RegularPartOptions options;
  options.tol = cfg.tol;
  options.route = cfg.route == "commutant" ? RegularPartRoute::Commutant
                                           : RegularPartRoute::Limit;
  const DecompositionReport r = lebesgue_decompose(in.at("--f"), in.at("--g"), options);
  Outcome o;
  o.result = io::to_json(r);
  const bool diverged = r.route_divergence && *r.route_divergence > kRouteDivergenceTol;
  o.result["routes_agree"] = !diverged;
  o.summary = "regular " + values_text(r.regular) + ", singular " +
              values_text(r.singular) + ", c = " + num(r.domination_constant) +
              ", " + std::to_string(r.iterations) + " doublings";
  if (diverged)
    o.summary += "\nwarning: commutant and limit routes differ by " +
                 num(*r.route_divergence);
  return o;
}

Outcome run_extreme(const RunConfig& cfg, const Inputs& in) {
  const Functional& h = in.at("--h");
  const Functional& hi = in.at("--hi");
  const bool has_lo = in.functionals.count("--lo") > 0;
  const Functional lo = has_lo ? in.at("--lo") : Functional::zero(h.algebra());
  Outcome o;
  const bool extreme = is_extreme_in_interval(h, lo, hi);
  o.result = {{"extreme", extreme},
              {"singularity_residual", singularity_residual(h - lo, hi - h)},
              {"equivalences", nullptr}};
  if (lo.scale() == 0.0)
    o.result["equivalences"] = io::to_json(extreme_equivalences(h, hi, cfg.tol));
  o.summary = std::string("h is ") + (extreme ? "" : "not ") + "extreme in [lo, hi]";
  return o;
}

Outcome run_infimum(const RunConfig& cfg, const Inputs& in) {
  InfimumBackend backend = InfimumBackend::Generic;
  if (cfg.backend == "matrix") backend = InfimumBackend::Matrix;
  if (cfg.backend == "commutative") backend = InfimumBackend::Commutative;
  const InfimumResult r =
      infimum_with_backend(in.at("--f"), in.at("--g"), backend, cfg.tol);
  Outcome o;
  o.result = io::to_json(r);
  o.result["backend"] = to_string(backend);
  o.summary = "infimum " + to_string(r.status) +
              (r.value ? " " + values_text(*r.value) : std::string()) + ": " +
              r.reason;
  return o;
}

Outcome run_oracle_check(const RunConfig& cfg) {
  Suite suite = Suite::Commutative;
  if (cfg.suite == "matrix") suite = Suite::Matrix;
  if (cfg.suite == "trend") suite = Suite::Trend;
  const SuiteReport r = run_suite(suite, cfg.cases, cfg.seed, cfg.threads);
  Outcome o;
  o.result = io::to_json(r);
  o.exit_code = r.passed() ? 0 : 2;
  std::ostringstream s;
  if (suite == Suite::Trend) {
    s << std::setw(6) << "d" << std::setw(14) << "c_min" << std::setw(14) << "d^2";
    for (const CaseRecord& c : r.records) {
      double d = 0, cmin = 0, expected = 0;
      for (const auto& [name, v] : c.metrics) {
        if (name == "dim") d = v;
        if (name == "c_min") cmin = v;
        if (name == "expected") expected = v;
      }
      s << "\n" << std::setw(6) << d << std::setw(14) << num(cmin)
        << std::setw(14) << num(expected);
    }
    s << "\n";
  }
  const auto passed = std::count_if(r.records.begin(), r.records.end(),
                                    [](const CaseRecord& c) { return c.passed; });
  s << to_string(suite) << ": " << passed << "/" << r.records.size() << " cases passed";
  o.summary = s.str();
  return o;
}

Outcome run_trend(const RunConfig& cfg) {
  const std::vector<oracle::TrendPoint> points =
      oracle::truncated_counterexample_trend(cfg.d);
  Outcome o;
  o.result = {{"points", Json::array()}};
  bool ok = true;
  std::ostringstream s;
  s << std::setw(6) << "d" << std::setw(14) << "c_min";
  for (const oracle::TrendPoint& p : points) {
    o.result["points"].push_back(io::to_json(p));
    ok = ok && std::abs(p.c_min - p.expected) <= 1e-2 * p.expected;
    s << "\n" << std::setw(6) << p.dim << std::setw(14) << num(p.c_min);
  }
  o.result["within_one_percent"] = ok;
  o.exit_code = ok ? 0 : 2;
  o.summary = s.str();
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Validate: return run_validate(cfg);
    case Command::OracleCheck: return run_oracle_check(cfg);
    case Command::Trend: return run_trend(cfg);
    default: break;
  }
  const Inputs in = load_inputs(cfg);
  switch (cfg.command) {
    case Command::Gram: return run_gram(in);
    case Command::Gns: return run_gns(in);
    case Command::Parsum: return run_parsum(in);
    case Command::Lebesgue: return run_lebesgue(cfg, in);
    case Command::Extreme: return run_extreme(cfg, in);
    case Command::Infimum: return run_infimum(cfg, in);
    default: break;
  }
  return {};
}

}  // namespace

std::string to_string(Command command) { return spec_of(command).name; }

std::string usage() {
  std::ostringstream s;
  s << "usage: funcord <command> [flags]\n\ncommands:\n";
  for (const CommandSpec& c : commands()) {
    s << "  " << std::left << std::setw(14) << c.name << c.help;
    for (const std::string& f : c.required) s << "  " << f << " FILE";
    for (const std::string& f : c.optional) s << "  [" << f << " FILE]";
    s << "\n";
  }
  s << "\ncommon flags: --tol X (default 1e-7), --seed N, --out FILE, --pretty,\n"
       "  --algebra FILE (algebra for functionals given by a custom label)\n"
       "lebesgue: --route limit|commutant\n"
       "infimum: --backend generic|matrix|commutative\n"
       "oracle-check: --suite commutative|matrix|trend --cases N --threads N\n"
       "trend: --d N (default 32)\n"
       "FUNCORD_SEED overrides --seed.\n";
  return s.str();
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty())
    throw UsageError(UsageErrorKind::UnknownCommand, "", "no command given");
  const std::string& name = args.front();
  const auto& table = commands();
  const auto spec = std::find_if(table.begin(), table.end(),
                                 [&](const CommandSpec& c) { return name == c.name; });
  if (spec == table.end())
    throw UsageError(UsageErrorKind::UnknownCommand, name,
                     "unknown command '" + name + "'");

  RunConfig cfg;
  cfg.command = spec->command;
  CLI::App app{spec->help, std::string("funcord ") + spec->name};
  app.set_help_flag();
  std::map<std::string, std::string> files;
  std::vector<std::string> file_flags = spec->required;
  file_flags.insert(file_flags.end(), spec->optional.begin(), spec->optional.end());
  if (std::find(file_flags.begin(), file_flags.end(), "--algebra") == file_flags.end())
    file_flags.push_back("--algebra");
  for (const std::string& flag : file_flags) app.add_option(flag, files[flag]);

  std::string tol_text;
  std::string out;
  app.add_option("--tol", tol_text);
  app.add_option("--seed", cfg.seed);
  app.add_option("--out", out);
  app.add_flag("--pretty", cfg.pretty);
  if (cfg.command == Command::Lebesgue)
    app.add_option("--route", cfg.route)->check(CLI::IsMember({"limit", "commutant"}));
  if (cfg.command == Command::Infimum)
    app.add_option("--backend", cfg.backend)
        ->check(CLI::IsMember({"generic", "matrix", "commutative"}));
  if (cfg.command == Command::OracleCheck) {
    app.add_option("--suite", cfg.suite)
        ->check(CLI::IsMember({"commutative", "matrix", "trend"}));
    app.add_option("--cases", cfg.cases)->check(CLI::NonNegativeNumber);
    app.add_option("--threads", cfg.threads);
  }
  if (cfg.command == Command::Trend)
    app.add_option("--d", cfg.d)->check(CLI::Range(2, 4096));

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw UsageError(UsageErrorKind::BadArgument, name, e.what());
  }

  if (!tol_text.empty()) {
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(tol_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tol_text.size() || !(tol > 0.0) || !std::isfinite(tol))
      throw UsageError(UsageErrorKind::BadTolerance, "--tol",
                       "--tol must be a positive number, got '" + tol_text + "'");
    cfg.tol = tol;
  }
  for (const std::string& flag : spec->required)
    if (files[flag].empty())
      throw UsageError(UsageErrorKind::MissingInput, flag,
                       std::string(spec->name) + " needs " + flag);
  if (cfg.command == Command::OracleCheck && cfg.suite.empty())
    throw UsageError(UsageErrorKind::MissingInput, "--suite",
                     "oracle-check needs --suite");
  for (const auto& [flag, path] : files)
    if (!path.empty()) cfg.inputs[flag] = path;
  if (!out.empty()) cfg.out = out;

  if (const char* env = std::getenv("FUNCORD_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(UsageErrorKind::BadArgument, "FUNCORD_SEED",
                       std::string("FUNCORD_SEED is not an integer: ") + env);
    }
  }
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json report = {{"command", to_string(cfg.command)},
                 {"version", kVersion},
                 {"tolerance", cfg.tol},
                 {"seed", cfg.seed},
                 {"timestamp", timestamp()},
                 {"inputs", cfg.inputs},
                 {"result", nullptr},
                 {"error", nullptr}};
  Outcome o;
  try {
    o = dispatch(cfg);
  } catch (const Error& e) {
    o.exit_code = is_mathematical(e.kind()) ? 2 : 1;
    o.error = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    o.summary = std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    o.exit_code = 1;
    o.error = Json{{"kind", "IO"}, {"message", e.what()}};
    o.summary = std::string("error: ") + e.what();
  }
  report["result"] = o.result;
  if (o.error) report["error"] = *o.error;
  report["exit_code"] = o.exit_code;

  const std::string text = report.dump(2) + "\n";
  if (cfg.out) {
    std::ofstream file(*cfg.out);
    if (!(file << text)) {
      err << "cannot write " << *cfg.out << "\n";
      return 1;
    }
  } else {
    out << text;
  }
  if (cfg.pretty) (cfg.out ? out : err) << o.summary << "\n";
  else if (o.error) err << o.summary << "\n";
  return o.exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  if (!args.empty() && (args.front() == "--help" || args.front() == "-h")) {
    out << usage();
    return 0;
  }
  try {
    return execute(parse_config(args), out, err);
  } catch (const UsageError& e) {
    err << "funcord: " << e.what() << " (see funcord --help)\n";
    return 1;
  }
}

}  // namespace funcord::cli
