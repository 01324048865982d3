#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace funcord::cli {

enum class Command {
  Validate,
  Gram,
  Gns,
  Parsum,
  Lebesgue,
  Extreme,
  Infimum,
  OracleCheck,
  Trend,
};

std::string to_string(Command command);

struct RunConfig {
  Command command = Command::Validate;
  /// Input flag ("--f", "--g", ...) to file path.
  std::map<std::string, std::string> inputs;
  double tol = 1e-7;
  std::uint64_t seed = 1;
  std::optional<std::string> out;
  bool pretty = false;
  std::string backend = "generic";
  std::string route = "limit";
  std::string suite;
  int cases = 100;
  int d = 32;
  unsigned threads = 0;
};

enum class UsageErrorKind { UnknownCommand, MissingInput, BadTolerance, BadArgument };

class UsageError : public std::runtime_error {
 public:
  UsageError(UsageErrorKind kind, std::string subject, const std::string& message)
      : std::runtime_error(message), kind_(kind), subject_(std::move(subject)) {}
  UsageErrorKind kind() const noexcept { return kind_; }
  /// The offending command or flag.
  const std::string& subject() const noexcept { return subject_; }

 private:
  UsageErrorKind kind_;
  std::string subject_;
};

/// `args` excludes the program name. FUNCORD_SEED in the environment
/// overrides --seed.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs the command and writes the JSON report to cfg.out or `out`.
/// Returns 0 on success, 2 on a mathematical failure and 1 on an input or
/// output failure. The --pretty summary goes to `out` when the report is
/// written to a file and to `err` otherwise.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + execute, with usage errors reported on `err` (exit 1).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

std::string usage();

}  // namespace funcord::cli
