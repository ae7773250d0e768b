#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "asw/padic.hpp"

namespace asw::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 2,
  kInvariantFailure = 3,
  kPrecisionExhausted = 4,
};

/// c * pi0^k with an integer coefficient c.
struct MonomialSpec {
  mpz_class coefficient = 1;
  int exponent = 0;

  std::string text() const;
  K0Element to_element(const BaseFieldPtr& field) const;
  bool operator==(const MonomialSpec&) const = default;
};

/// Accepts "c*pi^k", "pi^k", "-pi^k", "c*pi", "pi" and bare integers; spaces are
/// ignored. Throws std::invalid_argument on anything else.
MonomialSpec parse_monomial(std::string_view text);

struct JobConfig {
  unsigned p = 0;
  int e0 = 0;
  std::optional<MonomialSpec> a1;
  std::optional<MonomialSpec> mu;
  /// Working v2-precision; 0 picks the default.
  int precision = 0;
  bool json = false;
};

/// Applies "key = value" lines (keys p, e0, a1, mu, precision, format) on top
/// of `base`. Blank lines and '#' comments are skipped.
JobConfig parse_config(std::string_view text, JobConfig base = {});
JobConfig load_config(const std::string& path, JobConfig base = {});

/// p = 3, e0 = 6, a1 = mu = pi0^-1.
JobConfig worked_example_config();

struct AuditRequest {
  int samples = 0;
  std::uint64_t seed = 0;
  /// Empty, or "sigma1" to perturb sigma1 before the suites run.
  std::string fault;
};

struct Outcome {
  int exit_code = kOk;
  nlohmann::json report;
};

Outcome cmd_validate(const JobConfig& config);
Outcome cmd_analyze(const JobConfig& config);
Outcome cmd_audit(const JobConfig& config, const AuditRequest& request);
/// Runs the worked example and compares it with the embedded golden tables.
Outcome cmd_reproduce_example(int precision = 0);

/// Plain-text rendering of a report, showing exactly the numbers in the JSON.
std::string render_text(const nlohmann::json& report);

/// Full command line: parses argv, runs the subcommand, prints to out/err and
/// returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asw::cli
