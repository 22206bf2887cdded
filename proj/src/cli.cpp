#include "residua/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "residua/parser.hpp"
#include "residua/strategies.hpp"

namespace residua {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DegreeTooHigh:
    case ErrorCode::NonPolynomial:
    case ErrorCode::DomainError:
      return kExitUsage;
    case ErrorCode::Unclassifiable:
    case ErrorCode::InvalidParams:
    case ErrorCode::PoleOnContour:
    case ErrorCode::BranchPoleConflict:
      return kExitRefused;
    case ErrorCode::MaxSubdivisions:
    case ErrorCode::TailDivergence:
      return kExitVerifyFail;
    default:
      return kExitInternal;
  }
}

std::pair<std::string, mpq_class> parse_param(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
    throw UsageError("parameter must look like name=value, got '" + spec + "'");
  }
  std::string name = spec.substr(0, eq);
  std::string v = spec.substr(eq + 1);
  try {
    if (v.find('/') != std::string::npos) {
      mpq_class q;
      const bool neg = v[0] == '-';
      if (q.set_str(neg ? v.substr(1) : v, 10) != 0 || q.get_den() == 0) throw UsageError("bad rational");
      q.canonicalize();
      return {name, neg ? mpq_class(-q) : q};
    }
    return {name, parse_decimal(v)};
  } catch (const std::exception&) {
    throw UsageError("cannot read the value of parameter '" + name + "': '" + v + "'");
  }
}

namespace {

using Clock = std::chrono::steady_clock;

std::string millis(Clock::time_point a, Clock::time_point b) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << std::chrono::duration<double, std::milli>(b - a).count();
  return os.str();
}

Integral bind_params(const std::string& text, const std::map<std::string, mpq_class>& params) {
  Integral i = substitute(parse(text), params);
  const auto free = free_parameters(i.integrand, i.var);
  if (!free.empty()) throw UsageError("missing --param " + *free.begin() + "=VALUE");
  return i;
}

void describe(EvaluationReport& r, const IntegralProblem& p) {
  r.family = std::string(to_string(p.family));
  r.bounds = std::string(to_string(p.bounds));
  r.trig_part = std::string(to_string(p.trig_part));
  r.params = p.params;
}

PoleRow pole_row(const Pole& p) {
  return {p.root.location, p.root.multiplicity, std::string(to_string(p.region))};
}

}  // namespace

EvaluationReport evaluate_text(const std::string& text, const EvalOptions& opts) {
  EvaluationReport r;
  r.input = text;
  r.precision_bits = working_precision();
  const auto t0 = Clock::now();
  const IntegralProblem p = classify(bind_params(text, opts.params));
  describe(r, p);
  const auto t1 = Clock::now();
  ClosedValue v = evaluate(p);
  const auto t2 = Clock::now();
  for (const auto& rec : v.residues) {
    r.poles.push_back(pole_row(rec.pole));
    r.residues.push_back({rec.pole.root.location, rec.value, std::string(to_string(rec.method)), rec.crosscheck_delta});
  }
  BigReal closed = v.value;
  if (opts.perturb) closed += *opts.perturb;
  r.closed_value = closed;
  r.companion = v.companion;
  r.formula_note = v.formula_note;
  auto t3 = t2;
  if (opts.oracle) {
    try {
      QuadResult q = oracle_integrate(p.source, oracle_hint(p), BigReal(opts.oracle_tol));
      r.oracle = OracleRow{q.value, q.abs_error_estimate, q.n_evals, q.converged};
      Verdict verdict = verify(closed, q, BigReal(kVerifyDefaultRelTol));
      r.verdict = verdict.pass ? "PASS" : "FAIL";
      r.gap = verdict.gap;
    } catch (const Error& e) {
      if (exit_code_for(e.code()) != kExitVerifyFail) throw;
      r.verdict = "FAIL";
      r.error = ErrorRow{std::string(to_string(e.code())), e.what()};
    }
    t3 = Clock::now();
  }
  if (opts.timings) {
    r.timings = std::vector<std::pair<std::string, std::string>>{
        {"classify_ms", millis(t0, t1)}, {"closed_ms", millis(t1, t2)}, {"oracle_ms", millis(t2, t3)}};
  }
  return r;
}

const std::vector<GoldenRow>& golden_rows() {
  static const std::vector<GoldenRow> rows = [] {
    auto pi = [] { return BigReal::pi(); };
    using Q = mpq_class;
    std::vector<GoldenRow> g;
    g.push_back({"a", {{"int 0 inf (x^2+1)/(x^4+1) dx", {}, [=] { return pi() / sqrt(BigReal(2L)); }}}});
    g.push_back({"b", {{"int -inf inf x/(x^2+4*x+13)^2 dx", {}, [=] { return -pi() / 27L; }}}});
    g.push_back({"c",
                 {{"int 0 inf 1/(x^2+1)^n dx", {{"n", 1}}, [=] { return pi() / 2L; }},
                  {"int 0 inf 1/(x^2+1)^n dx", {{"n", 2}}, [=] { return pi() / 4L; }},
                  {"int 0 inf 1/(x^2+1)^n dx", {{"n", 3}}, [=] { return pi() * 3L / 16L; }},
                  {"int 0 inf 1/(x^2+1)^n dx", {{"n", 4}}, [=] { return pi() * 5L / 32L; }}}});
    g.push_back({"d",
                 {{"int -inf inf cos(a*x)/(x^2+b^2) dx",
                   {{"a", 1}, {"b", 2}},
                   [=] { return pi() / 2L * exp(BigReal(-2L)); },
                   true}}});
    g.push_back({"e", {{"int -inf inf x*sin(x)/(x^2+a^2) dx", {{"a", 2}}, [=] { return pi() * exp(BigReal(-2L)); }}}});
    g.push_back({"f", {{"int 0 inf x^a/(1+x)^2 dx", {{"a", Q(1, 2)}}, [=] { return pi() / 2L; }}}});
    g.push_back({"g",
                 {{"int 0 2pi 1/(a+b*cos(x)) dx", {{"a", 5}, {"b", 3}}, [=] { return pi() / 2L; }},
                  {"int 0 2pi 1/(a+b*sin(x)) dx", {{"a", 5}, {"b", 3}}, [=] { return pi() / 2L; }}}});
    g.push_back({"h", {{"int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", Q(1, 2)}}, [=] { return pi(); }}}});
    g.push_back({"i", {{"int 0 2pi cos(3*x)^2/(5-4*cos(2*x)) dx", {}, [=] { return pi() * 3L / 8L; }}}});
    g.push_back({"j",
                 {{"int 0 inf exp(-x^2)*cos(2*b*x) dx",
                   {{"b", 1}},
                   [=] { return sqrt(pi()) / 2L * exp(BigReal(-1L)); }}}});
    g.push_back({"l",
                 {{"int 0 inf sin(a*x)/sinh(x) dx", {{"a", 1}}, [=] { return pi() / 2L * tanh(pi() / 2L); }}}});
    return g;
  }();
  return rows;
}

namespace {

struct Common {
  std::string text;
  std::vector<std::string> params;
  int precision = 0;
  bool json = false;
};

int resolve_precision(int flag) {
  if (flag != 0) return flag;
  if (const char* env = std::getenv("RESIDUA_PRECISION"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0 || v > kMaxPrecision) {
      throw UsageError(std::string("RESIDUA_PRECISION must be a bit count, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return kDefaultPrecision;
}

std::map<std::string, mpq_class> param_map(const std::vector<std::string>& specs) {
  std::map<std::string, mpq_class> m;
  for (const auto& s : specs) {
    auto [k, v] = parse_param(s);
    m[k] = v;
  }
  return m;
}

std::string short_dec(const BigReal& x) { return x.to_string(25); }

std::string short_dec(const BigComplex& z) {
  return short_dec(z.re) + (z.im.sign() < 0 ? " - " : " + ") + short_dec(abs(z.im)) + "i";
}

void print_error_json(std::ostream& out, const std::string& input, const std::string& code, const std::string& msg) {
  Json j;
  j["schema"] = kSchema;
  j["input"] = input;
  j["precision_bits"] = working_precision();
  j["error"] = {{"code", code}, {"message", msg}};
  out << j.dump(2) << '\n';
}

void print_report_text(std::ostream& out, const EvaluationReport& r) {
  out << "input:     " << r.input << '\n';
  out << "family:    " << r.family << " (" << r.bounds;
  if (r.trig_part != "none") out << ", " << r.trig_part;
  out << ")\n";
  for (const auto& [k, v] : r.params) out << "param:     " << k << " = " << short_dec(v) << '\n';
  for (std::size_t i = 0; i < r.residues.size(); ++i) {
    const auto& x = r.residues[i];
    out << "residue:   at " << short_dec(x.location) << " order " << r.poles[i].order << " [" << r.poles[i].region
        << "] = " << short_dec(x.value) << " (" << x.method;
    if (x.crosscheck_delta) out << ", delta " << x.crosscheck_delta->to_string(3);
    out << ")\n";
  }
  if (r.closed_value) out << "closed:    " << r.closed_value->to_string() << '\n';
  if (r.companion) out << "companion: " << short_dec(*r.companion) << '\n';
  if (r.oracle) {
    out << "oracle:    " << short_dec(r.oracle->value) << " (error estimate " << r.oracle->abs_error_estimate.to_string(3)
        << ", " << r.oracle->n_evals << " evaluations)\n";
  }
  out << "verdict:   " << r.verdict;
  if (r.gap) out << " (gap " << r.gap->to_string(3) << ")";
  out << '\n';
  if (r.error) out << "oracle error: " << r.error->code << ": " << r.error->message << '\n';
  out << "note:      " << r.formula_note << '\n';
  out << "precision: " << r.precision_bits << " bits\n";
  if (r.timings)
    for (const auto& [k, v] : *r.timings) out << "time:      " << k << " " << v << '\n';
}

int verdict_exit(const EvaluationReport& r) { return r.verdict == "FAIL" ? kExitVerifyFail : kExitOk; }

int cmd_eval(const Common& c, bool no_oracle, bool timings, std::ostream& out) {
  EvalOptions o;
  o.params = param_map(c.params);
  o.oracle = !no_oracle;
  o.timings = timings;
  EvaluationReport r = evaluate_text(c.text, o);
  if (c.json) {
    out << to_json(r).dump(2) << '\n';
  } else {
    print_report_text(out, r);
  }
  return verdict_exit(r);
}

int cmd_poles(const Common& c, std::ostream& out) {
  IntegralProblem p = classify(bind_params(c.text, param_map(c.params)));
  EvaluationReport r;
  r.input = c.text;
  r.precision_bits = working_precision();
  describe(r, p);
  for (const auto& pole : relevant_poles(p)) r.poles.push_back(pole_row(pole));
  if (c.json) {
    out << to_json(r).dump(2) << '\n';
    return kExitOk;
  }
  out << "family: " << r.family << " (" << r.bounds << ")\n";
  for (const auto& [k, v] : r.params) out << "param:  " << k << " = " << short_dec(v) << '\n';
  out << "location,order,region\n";
  for (const auto& row : r.poles) out << short_dec(row.location) << ',' << row.order << ',' << row.region << '\n';
  return kExitOk;
}

int cmd_residues(const Common& c, std::ostream& out) {
  EvalOptions o;
  o.params = param_map(c.params);
  o.oracle = false;
  EvaluationReport r = evaluate_text(c.text, o);
  if (c.json) {
    out << to_json(r).dump(2) << '\n';
    return kExitOk;
  }
  out << "location,order,residue,method,crosscheck_delta\n";
  for (std::size_t i = 0; i < r.residues.size(); ++i) {
    const auto& x = r.residues[i];
    out << short_dec(x.location) << ',' << r.poles[i].order << ',' << short_dec(x.value) << ',' << x.method << ','
        << (x.crosscheck_delta ? x.crosscheck_delta->to_string(3) : "none") << '\n';
  }
  return kExitOk;
}

int cmd_arc(const Common& c, const std::vector<std::string>& radii, const std::string& piece_name,
            std::ostream& out) {
  IntegralProblem p = classify(bind_params(c.text, param_map(c.params)));
  std::vector<BigReal> rs;
  for (const auto& s : radii) {
    try {
      rs.push_back(BigReal::from_string(s));
    } catch (const Error&) {
      throw UsageError("bad radius '" + s + "'");
    }
  }
  ContourPiece piece = decay_piece(p.family);
  if (piece_name == "semicircle") piece = ContourPiece::Semicircle;
  if (piece_name == "rectangle-side") piece = ContourPiece::RectangleSide;
  if (piece_name == "small-indent") piece = ContourPiece::SmallIndent;
  DecayReport d = arc_decay_check(p.kernel, piece, rs);
  if (c.json) {
    Json j;
    j["schema"] = kSchema;
    j["input"] = c.text;
    j["family"] = std::string(to_string(p.family));
    j["piece"] = std::string(to_string(d.piece));
    j["model"] = d.model;
    j["exponent"] = to_json(d.exponent);
    Json rows = Json::array();
    for (const auto& row : d.rows) rows.push_back({{"R", to_json(row.radius)}, {"bound", to_json(row.bound)}});
    j["rows"] = rows;
    j["csv"] = d.csv();
    j["precision_bits"] = working_precision();
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "# piece " << to_string(d.piece) << ", " << d.model << " fit exponent " << d.exponent.to_string(6) << '\n';
  out << d.csv();
  return kExitOk;
}

int cmd_oracle(const Common& c, double tol, std::ostream& out) {
  Integral i = bind_params(c.text, param_map(c.params));
  OracleHint hint;
  try {
    hint = oracle_hint(classify(i));
  } catch (const Error&) {
    // quadrature on its own still makes sense for integrals outside every family
  }
  QuadResult q = oracle_integrate(normalize(i), hint, BigReal(tol));
  if (c.json) {
    Json j;
    j["schema"] = kSchema;
    j["input"] = c.text;
    j["value"] = to_json(q.value);
    j["abs_error_estimate"] = to_json(q.abs_error_estimate);
    j["n_evals"] = q.n_evals;
    j["converged"] = q.converged;
    j["precision_bits"] = working_precision();
    out << j.dump(2) << '\n';
  } else {
    out << "oracle: " << q.value.to_string() << "\nerror estimate: " << q.abs_error_estimate.to_string(3)
        << "\nevaluations: " << q.n_evals << "\nconverged: " << (q.converged ? "yes" : "no") << '\n';
  }
  return q.converged ? kExitOk : kExitVerifyFail;
}

struct CaseOutcome {
  bool pass = false;
  Json json;
  std::string closed;
};

CaseOutcome run_case(const GoldenCase& gc, const std::optional<BigReal>& perturb) {
  CaseOutcome o;
  const BigReal expected = gc.expected();
  const BigReal tol = residue_xcheck_tol();
  Json j;
  j["integral"] = gc.text;
  Json params = Json::object();
  for (const auto& [k, v] : gc.params) params[k] = v.get_str();
  j["params"] = params;
  j["expected"] = to_json(expected);
  try {
    EvalOptions opts;
    opts.params = gc.params;
    opts.perturb = perturb;
    EvaluationReport r = evaluate_text(gc.text, opts);
    bool ok = r.verdict == "PASS";
    ok = ok && abs(*r.closed_value - expected) <= tol * max(BigReal(1L), abs(expected));
    for (const auto& x : r.residues) ok = ok && x.crosscheck_delta && *x.crosscheck_delta <= tol;
    if (gc.companion_zero) ok = ok && r.companion && abs(*r.companion) <= tol;
    o.closed = r.closed_value->to_string(25);
    j["report"] = to_json(r);
    o.pass = ok;
  } catch (const Error& e) {
    j["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    o.closed = std::string("error: ") + std::string(to_string(e.code()));
  }
  j["pass"] = o.pass;
  o.json = std::move(j);
  return o;
}

int cmd_selftest(bool json, const std::string& perturb_text, const std::vector<std::string>& only,
                 std::ostream& out) {
  std::optional<BigReal> perturb;
  if (!perturb_text.empty()) {
    try {
      perturb = BigReal::from_string(perturb_text);
    } catch (const Error&) {
      throw UsageError("bad --perturb value '" + perturb_text + "'");
    }
  }
  for (const auto& id : only) {
    bool known = false;
    for (const auto& row : golden_rows()) known = known || row.id == id;
    if (!known) throw UsageError("unknown golden row '" + id + "'");
  }
  Json rows = Json::array();
  int passed = 0;
  int total = 0;
  std::ostringstream table;
  table << std::left << std::setw(4) << "row" << std::setw(8) << "verdict" << std::setw(34) << "closed"
        << "integral\n";
  for (const auto& row : golden_rows()) {
    if (!only.empty() && std::find(only.begin(), only.end(), row.id) == only.end()) continue;
    ++total;
    bool row_pass = true;
    Json cases = Json::array();
    std::vector<std::string> closed;
    for (const auto& gc : row.cases) {
      CaseOutcome o = run_case(gc, perturb);
      row_pass = row_pass && o.pass;
      closed.push_back(o.closed);
      cases.push_back(std::move(o.json));
    }
    if (row_pass) ++passed;
    rows.push_back({{"id", row.id}, {"pass", row_pass}, {"cases", cases}});
    table << std::left << std::setw(4) << row.id << std::setw(8) << (row_pass ? "PASS" : "FAIL") << std::setw(34)
          << closed.front() << row.cases.front().text;
    if (row.cases.size() > 1) table << "  (+" << row.cases.size() - 1 << " more)";
    table << '\n';
  }
  const bool all = passed == total;
  if (json) {
    Json j;
    j["schema"] = kSchema;
    j["precision_bits"] = working_precision();
    j["perturb"] = perturb ? Json(to_json(*perturb)) : Json(nullptr);
    j["rows"] = rows;
    j["passed"] = passed;
    j["total"] = total;
    j["pass"] = all;
    out << j.dump(2) << '\n';
  } else {
    out << table.str() << passed << "/" << total << " rows PASS\n";
  }
  return all ? kExitOk : kExitVerifyFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"residua: definite integrals by the residue theorem, checked by quadrature"};
  app.require_subcommand(1);
  Common c;
  bool no_oracle = false;
  bool timings = false;
  std::vector<std::string> radii;
  std::string piece;
  double tol = kOracleDefaultTol;
  std::string perturb;
  std::vector<std::string> only;

  auto common = [&](CLI::App* s) {
    s->add_option("integral", c.text, "integral text, e.g. \"int 0 inf 1/(x^2+1) dx\"")->required();
    s->add_option("--param", c.params, "parameter binding name=value (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    s->add_option("--precision", c.precision, "working precision in bits");
    s->add_flag("--json", c.json, "machine-readable report");
  };
  CLI::App* eval = app.add_subcommand("eval", "full pipeline: classify, residues, closed value, oracle");
  common(eval);
  eval->add_flag("--no-oracle", no_oracle, "skip quadrature; verdict becomes unverified");
  eval->add_flag("--timings", timings, "include stage timings");
  CLI::App* poles = app.add_subcommand("poles", "classification and pole table");
  common(poles);
  CLI::App* residues = app.add_subcommand("residues", "residues with cross-check deltas");
  common(residues);
  CLI::App* arc = app.add_subcommand("arc-check", "decay of |k| along a contour piece");
  common(arc);
  arc->add_option("--radii", radii, "comma-separated radii")->delimiter(',')->required();
  arc->add_option("--piece", piece, "semicircle, rectangle-side or small-indent")
      ->check(CLI::IsMember({"semicircle", "rectangle-side", "small-indent"}));
  CLI::App* oracle = app.add_subcommand("oracle", "quadrature only");
  common(oracle);
  oracle->add_option("--tol", tol, "relative tolerance");
  CLI::App* selftest = app.add_subcommand("selftest", "run the golden integrals");
  selftest->add_flag("--json", c.json, "machine-readable table");
  selftest->add_option("--precision", c.precision, "working precision in bits");
  selftest->add_option("--perturb", perturb, "add this offset to every closed value");
  selftest->add_option("--only", only, "comma-separated row ids")->delimiter(',');

  std::vector<const char*> argv{"residua"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string input = c.text;
  try {
    PrecisionScope scope(resolve_precision(c.precision));
    if (eval->parsed()) return cmd_eval(c, no_oracle, timings, out);
    if (poles->parsed()) return cmd_poles(c, out);
    if (residues->parsed()) return cmd_residues(c, out);
    if (arc->parsed()) return cmd_arc(c, radii, piece, out);
    if (oracle->parsed()) return cmd_oracle(c, tol, out);
    if (selftest->parsed()) return cmd_selftest(c.json, perturb, only, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    if (c.json) print_error_json(out, input, std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    if (c.json) print_error_json(out, input, std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace residua
