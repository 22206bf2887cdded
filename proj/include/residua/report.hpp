#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "residua/big_complex.hpp"

namespace residua {

inline constexpr const char* kSchema = "residua/1";

using Json = nlohmann::ordered_json;

struct PoleRow {
  BigComplex location;
  int order = 1;
  std::string region;
  friend bool operator==(const PoleRow&, const PoleRow&) = default;
};

struct ResidueRow {
  BigComplex location;
  BigComplex value;
  std::string method;
  std::optional<BigReal> crosscheck_delta;
  friend bool operator==(const ResidueRow&, const ResidueRow&) = default;
};

struct OracleRow {
  BigReal value;
  BigReal abs_error_estimate;
  long n_evals = 0;
  bool converged = false;
  friend bool operator==(const OracleRow&, const OracleRow&) = default;
};

struct ErrorRow {
  std::string code;
  std::string message;
  friend bool operator==(const ErrorRow&, const ErrorRow&) = default;
};

struct EvaluationReport {
  std::string input;
  std::string family;
  std::string bounds;
  std::string trig_part;
  std::map<std::string, BigReal> params;
  std::vector<PoleRow> poles;
  std::vector<ResidueRow> residues;
  std::optional<BigReal> closed_value;
  std::optional<BigReal> companion;
  std::optional<OracleRow> oracle;
  /// PASS, FAIL or unverified
  std::string verdict = "unverified";
  std::optional<BigReal> gap;
  std::string formula_note;
  int precision_bits = 0;
  /// milliseconds as decimal strings, present only on request
  std::optional<std::vector<std::pair<std::string, std::string>>> timings;
  std::optional<ErrorRow> error;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

/// {"dec": shortest round-trip decimal, "bits": precision}
Json to_json(const BigReal& x);
Json to_json(const BigComplex& z);
Json to_json(const EvaluationReport& r);

BigReal big_real_from_json(const Json& j);
BigComplex big_complex_from_json(const Json& j);
/// Inverse of to_json; throws DomainError on a malformed document.
EvaluationReport report_from_json(const Json& j);

}  // namespace residua
