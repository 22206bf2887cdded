#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "residua/error.hpp"
#include "residua/report.hpp"

namespace residua {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitRefused = 2,
  kExitVerifyFail = 3,
  kExitInternal = 4,
};

int exit_code_for(ErrorCode code) noexcept;

struct EvalOptions {
  std::map<std::string, mpq_class> params;
  bool oracle = true;
  bool timings = false;
  /// added to the closed value before verification (negative controls)
  std::optional<BigReal> perturb;
  double oracle_tol = 1e-12;
};

/// Bad command line or missing parameter binding.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse, classify, evaluate and (optionally) verify one integral.
/// Errors before a verdict propagate as Error / UsageError.
EvaluationReport evaluate_text(const std::string& text, const EvalOptions& opts);

/// "a=1/3" or "a=0.5"
std::pair<std::string, mpq_class> parse_param(const std::string& spec);

struct GoldenCase {
  std::string text;
  std::map<std::string, mpq_class> params;
  std::function<BigReal()> expected;
  /// the companion integral must vanish
  bool companion_zero = false;
};

struct GoldenRow {
  std::string id;
  std::vector<GoldenCase> cases;
};

/// The eleven worked integrals, rows a through l.
const std::vector<GoldenRow>& golden_rows();

/// Full command line, argv[0] excluded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace residua
