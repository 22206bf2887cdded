#include "residua/report.hpp"

#include "residua/error.hpp"

namespace residua {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::DomainError, "malformed report: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

template <class T, class F>
Json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : Json(nullptr);
}

template <class F>
auto optional_from(const Json& j, const char* key, F&& f) -> std::optional<decltype(f(j))> {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return f(v);
}

}  // namespace

Json to_json(const BigReal& x) {
  Json j;
  j["dec"] = x.to_string();
  j["bits"] = x.precision();
  return j;
}

Json to_json(const BigComplex& z) {
  Json j;
  j["re"] = to_json(z.re);
  j["im"] = to_json(z.im);
  return j;
}

BigReal big_real_from_json(const Json& j) {
  const Json& bits = field(j, "bits");
  if (!bits.is_number_integer()) malformed("bits is not an integer");
  PrecisionScope scope(bits.get<int>());
  return BigReal::from_string(text(j, "dec"));
}

BigComplex big_complex_from_json(const Json& j) {
  return {big_real_from_json(field(j, "re")), big_real_from_json(field(j, "im"))};
}

Json to_json(const EvaluationReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["input"] = r.input;
  j["family"] = r.family;
  j["bounds"] = r.bounds;
  j["trig_part"] = r.trig_part;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = to_json(v);
  j["params"] = params;
  Json poles = Json::array();
  for (const auto& p : r.poles) {
    Json row;
    row["location"] = to_json(p.location);
    row["order"] = p.order;
    row["region"] = p.region;
    poles.push_back(row);
  }
  j["poles"] = poles;
  Json residues = Json::array();
  for (const auto& x : r.residues) {
    Json row;
    row["location"] = to_json(x.location);
    row["value"] = to_json(x.value);
    row["method"] = x.method;
    row["crosscheck_delta"] = optional_json(x.crosscheck_delta, [](const BigReal& d) { return to_json(d); });
    residues.push_back(row);
  }
  j["residues"] = residues;
  j["closed_value"] = optional_json(r.closed_value, [](const BigReal& v) { return to_json(v); });
  j["companion"] = optional_json(r.companion, [](const BigReal& v) { return to_json(v); });
  j["oracle"] = optional_json(r.oracle, [](const OracleRow& o) {
    Json row;
    row["value"] = to_json(o.value);
    row["abs_error_estimate"] = to_json(o.abs_error_estimate);
    row["n_evals"] = o.n_evals;
    row["converged"] = o.converged;
    return row;
  });
  j["verdict"] = r.verdict;
  j["gap"] = optional_json(r.gap, [](const BigReal& v) { return to_json(v); });
  j["formula_note"] = r.formula_note;
  j["precision_bits"] = r.precision_bits;
  j["timings"] = optional_json(r.timings, [](const auto& t) {
    Json row = Json::object();
    for (const auto& [k, v] : t) row[k] = v;
    return row;
  });
  j["error"] = optional_json(r.error, [](const ErrorRow& e) {
    Json row;
    row["code"] = e.code;
    row["message"] = e.message;
    return row;
  });
  return j;
}

EvaluationReport report_from_json(const Json& j) {
  if (text(j, "schema") != kSchema) malformed("unknown schema");
  EvaluationReport r;
  r.input = text(j, "input");
  r.family = text(j, "family");
  r.bounds = text(j, "bounds");
  r.trig_part = text(j, "trig_part");
  for (const auto& [k, v] : field(j, "params").items()) r.params[k] = big_real_from_json(v);
  for (const auto& row : field(j, "poles")) {
    const Json& order = field(row, "order");
    if (!order.is_number_integer()) malformed("pole order is not an integer");
    r.poles.push_back({big_complex_from_json(field(row, "location")), order.get<int>(), text(row, "region")});
  }
  for (const auto& row : field(j, "residues")) {
    ResidueRow x;
    x.location = big_complex_from_json(field(row, "location"));
    x.value = big_complex_from_json(field(row, "value"));
    x.method = text(row, "method");
    x.crosscheck_delta = optional_from(row, "crosscheck_delta", big_real_from_json);
    r.residues.push_back(std::move(x));
  }
  r.closed_value = optional_from(j, "closed_value", big_real_from_json);
  r.companion = optional_from(j, "companion", big_real_from_json);
  r.oracle = optional_from(j, "oracle", [](const Json& o) {
    const Json& n = field(o, "n_evals");
    const Json& c = field(o, "converged");
    if (!n.is_number_integer() || !c.is_boolean()) malformed("oracle row");
    return OracleRow{big_real_from_json(field(o, "value")), big_real_from_json(field(o, "abs_error_estimate")),
                     n.get<long>(), c.get<bool>()};
  });
  r.verdict = text(j, "verdict");
  r.gap = optional_from(j, "gap", big_real_from_json);
  r.formula_note = text(j, "formula_note");
  const Json& bits = field(j, "precision_bits");
  if (!bits.is_number_integer()) malformed("precision_bits is not an integer");
  r.precision_bits = bits.get<int>();
  r.timings = optional_from(j, "timings", [](const Json& t) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : t.items()) {
      if (!v.is_string()) malformed("timing is not a string");
      out.emplace_back(k, v.get<std::string>());
    }
    return out;
  });
  r.error = optional_from(j, "error", [](const Json& e) { return ErrorRow{text(e, "code"), text(e, "message")}; });
  return r;
}

}  // namespace residua
