#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "residua/error.hpp"
#include "residua/parser.hpp"
#include "residua/strategies.hpp"

using namespace residua;

namespace {

const BigReal kGoldenTol(1e-20);

BigReal pi() { return BigReal::pi(); }
BigReal num(long n, long d = 1) { return BigReal(n) / d; }

IntegralProblem problem(const char* text, std::map<std::string, mpq_class> params = {}) {
  return classify(substitute(parse(text), params));
}

BigReal value(const char* text, std::map<std::string, mpq_class> params = {}) {
  return evaluate(problem(text, params)).value;
}

bool close(const BigReal& got, const BigReal& want, const BigReal& tol) {
  return abs(got - want) <= tol * max(BigReal(1L), abs(want));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InternalInconsistency;
}

struct Golden {
  const char* text;
  std::map<std::string, mpq_class> params;
  BigReal expected;
};

std::vector<Golden> golden() {
  const BigReal s2 = sqrt(num(2));
  return {
      {"int 0 inf (x^2+1)/(x^4+1) dx", {}, pi() / s2},
      {"int -inf inf x/(x^2+4*x+13)^2 dx", {}, -pi() / 27L},
      {"int 0 inf 1/(x^2+1)^n dx", {{"n", 1}}, pi() / 2L},
      {"int 0 inf 1/(x^2+1)^n dx", {{"n", 2}}, pi() / 4L},
      {"int 0 inf 1/(x^2+1)^n dx", {{"n", 3}}, pi() * 3L / 16L},
      {"int 0 inf 1/(x^2+1)^n dx", {{"n", 4}}, pi() * 5L / 32L},
      {"int -inf inf cos(a*x)/(x^2+b^2) dx", {{"a", 1}, {"b", 2}}, pi() / 2L * exp(num(-2))},
      {"int -inf inf x*sin(x)/(x^2+a^2) dx", {{"a", 2}}, pi() * exp(num(-2))},
      {"int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(1, 2)}}, pi() / 2L},
      {"int 0 2pi 1/(a+b*cos(x)) dx", {{"a", 5}, {"b", 3}}, pi() / 2L},
      {"int 0 2pi 1/(a+b*sin(x)) dx", {{"a", 5}, {"b", 3}}, pi() / 2L},
      {"int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(1, 2)}}, pi()},
      {"int 0 2pi cos(3*x)^2/(5-4*cos(2*x)) dx", {}, pi() * 3L / 8L},
      {"int 0 inf exp(-x^2)*cos(2*b*x) dx", {{"b", 1}}, sqrt(pi()) / 2L * exp(num(-1))},
      {"int 0 inf sin(a*x)/sinh(x) dx", {{"a", 1}}, pi() / 2L * tanh(pi() / 2L)},
  };
}

}  // namespace

TEST_CASE("classification of worked examples") {
  IntegralProblem a = problem("int 0 inf (x^2+1)/(x^4+1) dx");
  CHECK(a.family == Family::RationalLine);
  CHECK(a.bounds == BoundsKind::HalfLine);
  CHECK(a.scale == mpq_class(1, 2));

  IntegralProblem d = problem("int -inf inf cos(2*x)/(x^2+9) dx");
  CHECK(d.family == Family::FourierRational);
  CHECK(d.trig_part == TrigPart::Cos);
  CHECK(d.params.at("a") == BigReal(2L));
  CHECK(d.params.at("b") == BigReal(3L));

  CHECK(problem("int 0 inf 1/(x^2+1)^n dx", {{"n", 3}}).params.at("n") == BigReal(3L));
  CHECK(problem("int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(1, 3)}}).family == Family::KeyholePower);
  CHECK(problem("int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(1, 3)}}).family == Family::ExpRectangle);
  CHECK(problem("int 0 inf exp(-x^2) dx").family == Family::GaussianShift);
  CHECK(problem("int 0 inf sin(2*x)/sinh(x) dx").family == Family::SinhKernel);
  IntegralProblem g = problem("int 0 2pi 1/(5+3*cos(x)) dx");
  CHECK(g.family == Family::TrigUnitCircle);
  CHECK(g.params.at("a") == BigReal(5L));
  CHECK(g.params.at("b") == BigReal(3L));
}

TEST_CASE("cos(0 x) degenerates to the rational family") {
  IntegralProblem p = problem("int -inf inf cos(a*x)/(x^2+1) dx", {{"a", 0}});
  CHECK(p.family == Family::RationalLine);
  CHECK(close(evaluate(p).value, pi(), kGoldenTol));
}

TEST_CASE("refusals") {
  CHECK(code_of([] { evaluate(problem("int -inf inf 1/(x^2-1) dx")); }) == ErrorCode::PoleOnContour);
  CHECK(code_of([] { problem("int -inf inf x/(x^2+1) dx"); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { problem("int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(3, 2)}}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { problem("int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(3, 2)}}); }) ==
        ErrorCode::InvalidParams);
  CHECK(code_of([] { problem("int 0 inf x^a/(1+x)^2 dx"); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { problem("int 0 1 1/(x^2+1) dx"); }) == ErrorCode::Unclassifiable);
  CHECK(code_of([] { problem("int -inf inf exp(x)*cos(x)/(x^2+1) dx"); }) == ErrorCode::Unclassifiable);
  CHECK(code_of([] { problem("int 0 2pi x*cos(x) dx"); }) == ErrorCode::Unclassifiable);
  CHECK(code_of([] { evaluate(problem("int 0 2pi 1/(3+3*cos(x)) dx")); }) == ErrorCode::PoleOnContour);
  CHECK(code_of([] { evaluate(problem("int 0 inf x^a/(1-x)^2 dx", {{"a", mpq_class(1, 2)}})); }) ==
        ErrorCode::BranchPoleConflict);
}

TEST_CASE("golden values") {
  for (const auto& g : golden()) {
    CAPTURE(g.text);
    ClosedValue v = evaluate(problem(g.text, g.params));
    CHECK(close(v.value, g.expected, kGoldenTol));
    CHECK(abs(v.discarded_imag) <= assembly_tol());
    for (const auto& r : v.residues) {
      REQUIRE(r.crosscheck_delta.has_value());
      CHECK(*r.crosscheck_delta <= residue_xcheck_tol());
    }
  }
}

TEST_CASE("fourier companion and derivative family") {
  ClosedValue d = evaluate(problem("int -inf inf cos(x)/(x^2+4) dx"));
  REQUIRE(d.companion.has_value());
  CHECK(abs(*d.companion) <= kGoldenTol);

  ClosedValue e1 = evaluate(problem("int -inf inf x*sin(a*x)/(x^2+b^2) dx", {{"a", 1}, {"b", 1}}));
  CHECK(close(e1.value, pi() * exp(num(-1)), kGoldenTol));
  IntegralProblem e2 = problem("int -inf inf x*sin(a*x)/(x^2+b^2) dx", {{"a", 1}, {"b", 2}});
  ClosedValue pd = eval_param_derivative(e2);
  CHECK(close(pd.value, pi() * exp(num(-2)), kGoldenTol));
  CHECK(abs(pd.value - eval_fourier_rational(e2).second.value) <= assembly_tol());
  CHECK(evaluate(e2).formula_note.find("(pi/b) e^{-ab}") != std::string::npos);
  CHECK(code_of([&] { eval_param_derivative(problem("int -inf inf cos(x)/(x^2+4) dx")); }) ==
        ErrorCode::InvalidParams);
}

TEST_CASE("further family values") {
  const BigReal third = num(1, 3);
  CHECK(close(value("int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(1, 3)}}), pi() * third / sin(pi() * third),
              kGoldenTol));
  CHECK(close(value("int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(-1, 3)}}), pi() * third / sin(pi() * third),
              kGoldenTol));
  CHECK(close(value("int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(1, 3)}}),
              ldexp(pi(), 1) / sqrt(num(3)), kGoldenTol));
  CHECK(close(value("int 0 inf exp(-x^2)*cos(2*b*x) dx", {{"b", 2}}), sqrt(pi()) / 2L * exp(num(-4)),
              kGoldenTol));
  CHECK(close(value("int 0 inf exp(-x^2) dx"), sqrt(pi()) / 2L, kGoldenTol));
  CHECK(close(value("int 0 inf sin(a*x)/sinh(x) dx", {{"a", 2}}), pi() / 2L * tanh(pi()), kGoldenTol));
  CHECK(close(value("int 0 2pi 1/5 dx"), ldexp(pi(), 1) / 5L, kGoldenTol));
  CHECK(close(value("int 0 inf 1/(1+x)^2 dx"), num(1), kGoldenTol));
  // quadrature value frozen from an independent evaluation
  CHECK(close(value("int 0 inf x^2/(1+x)^4 + 1/(x^3+1) dx"),
              BigReal::from_string("1.54253290948947856706271883843"), BigReal(1e-28)));
  CHECK(close(value("int 0 inf x^2/(1+x)^4 + 1/(x^3+1) dx"), num(1, 3) + ldexp(pi(), 1) / (sqrt(num(3)) * 3L),
              kGoldenTol));
}

TEST_CASE("scale equivariance and evenness") {
  BigReal base = value("int 0 inf (x^2+1)/(x^4+1) dx");
  CHECK(close(value("int 0 inf 7/3*(x^2+1)/(x^4+1) dx"), base * 7L / 3L, kGoldenTol));
  BigReal full = value("int -inf inf (x^2+1)/(x^4+1) dx");
  CHECK(base == full / 2L);
  CHECK(close(value("int 0 inf 5*sin(a*x)/sinh(x) dx", {{"a", 1}}), pi() * 5L / 2L * tanh(pi() / 2L), kGoldenTol));
}

TEST_CASE("closure through the text form") {
  for (const auto& g : golden()) {
    CAPTURE(g.text);
    IntegralProblem p = problem(g.text, g.params);
    IntegralProblem q = classify(parse(render(p.source)));
    CHECK(p == q);
  }
}

TEST_CASE("oracle agreement on every golden") {
  for (const auto& g : golden()) {
    CAPTURE(g.text);
    IntegralProblem p = problem(g.text, g.params);
    ClosedValue v = evaluate(p);
    QuadResult q = oracle_integrate(p.source, oracle_hint(p), BigReal(kOracleDefaultTol));
    Verdict ok = verify(v.value, q, BigReal(kVerifyDefaultRelTol));
    CHECK(ok.pass);
    CHECK_FALSE(verify(v.value + BigReal(1e-4), q, BigReal(kVerifyDefaultRelTol)).pass);
    CHECK_FALSE(verify(v.value + max(BigReal(1L), abs(v.value)) * BigReal(1e3 * kVerifyDefaultRelTol), q,
                       BigReal(kVerifyDefaultRelTol))
                    .pass);
  }
  IntegralProblem e = problem("int -inf inf x*sin(x)/(x^2+a^2) dx", {{"a", 2}});
  QuadResult q = oracle_integrate(e.source, oracle_hint(e), BigReal(kOracleDefaultTol));
  CHECK_FALSE(verify(pi() / 2L * exp(num(-2)), q, BigReal(kVerifyDefaultRelTol)).pass);
}

TEST_CASE("arc decay diagnostics") {
  std::vector<BigReal> radii{num(10), num(100), num(1000)};
  IntegralProblem a = problem("int 0 inf (x^2+1)/(x^4+1) dx");
  DecayReport r = arc_decay_check(a.kernel, ContourPiece::Semicircle, radii);
  CHECK(abs(r.exponent + 1L) <= BigReal(0.2));
  CHECK(r.rows.size() == 3);
  // |k| <= R^2/(R^4 - 1) on the arc
  for (const auto& row : r.rows) {
    BigReal R = row.radius;
    CHECK(row.bound <= pi() * R * (square(R) + 1L) / (square(square(R)) - 1L));
  }
  CHECK(r.csv().rfind("R,bound\n", 0) == 0);

  IntegralProblem one = problem("int -inf inf 1/(x^2+1) dx");
  CHECK(abs(arc_decay_check(one.kernel, ContourPiece::Semicircle, radii).exponent + 1L) <= BigReal(0.2));

  IntegralProblem h = problem("int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(1, 2)}});
  DecayReport side = arc_decay_check(h.kernel, ContourPiece::RectangleSide, {num(5), num(10), num(20)});
  CHECK(abs(side.exponent + num(1, 2)) <= BigReal(0.05));
}
