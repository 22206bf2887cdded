#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "residua/error.hpp"
#include "residua/oracle.hpp"
#include "residua/parser.hpp"

using namespace residua;

namespace {

const BigReal kTol(1e-12);

Integral load(const char* text, std::map<std::string, mpq_class> params = {}) {
  return normalize(substitute(parse(text), params));
}

bool close(const BigReal& got, const BigReal& want, const BigReal& tol) {
  return abs(got - want) <= tol * max(BigReal(1L), abs(want));
}

TailClass trig(long a, bool cosine) {
  TailClass t;
  t.kind = TailKind::Trig;
  t.a = BigReal(a);
  t.phase = cosine ? BigReal(1L) / 2L : BigReal(0L);
  return t;
}

TailClass decaying() {
  TailClass t;
  t.kind = TailKind::DecayingExp;
  return t;
}

}  // namespace

TEST_CASE("finite interval basics") {
  RealFn fifth = [](const BigReal&) { return BigReal(1L) / 5L; };
  BigReal two_pi = ldexp(BigReal::pi(), 1);
  QuadResult r = quad_finite(fifth, BigReal(0L), two_pi, kTol);
  CHECK(r.converged);
  CHECK(close(r.value, two_pi / 5L, BigReal(1e-30)));

  QuadResult i = oracle_integrate(load("int 0 2pi cos(3*x)^2/(5-4*cos(2*x)) dx"), {}, kTol);
  CHECK(i.converged);
  CHECK(close(i.value, BigReal(3L) * BigReal::pi() / 8L, kTol));
  CHECK(i.abs_error_estimate <= kTol * max(BigReal(1L), abs(i.value)));
}

TEST_CASE("endpoint singularity substitution") {
  RealFn f = [](const BigReal& x) { return BigReal(1L) / sqrt(x); };
  QuadResult r = quad_finite(f, BigReal(0L), BigReal(1L), kTol, BigReal(-1L) / 2L);
  CHECK(r.converged);
  CHECK(close(r.value, BigReal(2L), kTol));
  CHECK(r.n_evals < 2000);
}

TEST_CASE("reversed interval negates") {
  RealFn f = [](const BigReal& x) { return x * x; };
  QuadResult r = quad_finite(f, BigReal(1L), BigReal(0L), kTol);
  CHECK(close(r.value, BigReal(-1L) / 3L, kTol));
}

TEST_CASE("subdivision limit") {
  RealFn f = [](const BigReal& x) { return BigReal(1L) / x; };
  CHECK_THROWS_AS(quad_finite(f, BigReal(0L), BigReal(1L), kTol), Error);
  try {
    quad_finite(f, BigReal(0L), BigReal(1L), kTol);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaxSubdivisions);
  }
}

TEST_CASE("half line rational tail") {
  QuadResult r = oracle_integrate(load("int 0 inf (x^2+1)/(x^4+1) dx"), {}, kTol);
  CHECK(r.converged);
  CHECK(close(r.value, BigReal::pi() / sqrt(BigReal(2L)), kTol));
}

TEST_CASE("gaussian polar constant") {
  OracleHint h{decaying(), std::nullopt};
  QuadResult r = oracle_integrate(load("int 0 inf exp(-x^2) dx"), h, kTol);
  CHECK(r.converged);
  CHECK(close(r.value, sqrt(BigReal::pi()) / 2L, kTol));
}

TEST_CASE("sin over sinh under both maps") {
  Integral l = load("int 0 inf sin(a*x)/sinh(x) dx", {{"a", 1}});
  const BigReal want = BigReal::pi() / 2L * tanh(BigReal::pi() / 2L);
  for (TailClass t : {decaying(), trig(1, false)}) {
    OracleHint h{t, std::nullopt};
    QuadResult a = oracle_integrate(l, h, kTol, HalfLineMap::Rational);
    QuadResult b = oracle_integrate(l, h, kTol, HalfLineMap::Reciprocal);
    CHECK(close(a.value, want, kTol));
    CHECK(close(b.value, want, kTol));
    CHECK(abs(a.value - b.value) <= BigReal(10L) * kTol);
  }
}

TEST_CASE("oscillatory full line") {
  OracleHint h{trig(1, false), std::nullopt};
  Integral e = load("int -inf inf x*sin(x)/(x^2+a^2) dx", {{"a", 2}});
  QuadResult r = oracle_integrate(e, h, kTol);
  CHECK(close(r.value, BigReal::pi() * exp(BigReal(-2L)), kTol));

  BigReal closed = BigReal::pi() * exp(BigReal(-2L));
  CHECK(verify(closed, r, BigReal(kVerifyDefaultRelTol)).pass);
  Verdict other = verify(BigReal::pi() / 2L * exp(BigReal(-2L)), r, BigReal(kVerifyDefaultRelTol));
  CHECK_FALSE(other.pass);
  CHECK(other.gap > BigReal(0.1));
}

TEST_CASE("verify controls") {
  QuadResult r = oracle_integrate(load("int 0 inf (x^2+1)/(x^4+1) dx"), {}, kTol);
  const BigReal closed = BigReal::pi() / sqrt(BigReal(2L));
  Verdict ok = verify(closed, r, BigReal(kVerifyDefaultRelTol));
  CHECK(ok.pass);
  CHECK(ok.gap <= BigReal(1e-11));
  CHECK_FALSE(verify(closed + BigReal(1e-4), r, BigReal(kVerifyDefaultRelTol)).pass);
  CHECK_FALSE(verify(closed * (BigReal(1L) + BigReal(1e3 * kVerifyDefaultRelTol)), r,
                     BigReal(kVerifyDefaultRelTol))
                  .pass);
  QuadResult bad = r;
  bad.converged = false;
  CHECK_FALSE(verify(closed, bad, BigReal(kVerifyDefaultRelTol)).pass);
}

TEST_CASE("keyhole integrand with negative exponent") {
  Integral k = load("int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(-1, 3)}});
  OracleHint h{TailClass{}, BigReal(-1L) / 3L};
  QuadResult r = oracle_integrate(k, h, kTol);
  // pi a / sin(pi a) at a = -1/3
  const BigReal a = BigReal(-1L) / 3L;
  CHECK(close(r.value, BigReal::pi() * a / sin(BigReal::pi() * a), kTol));
}

TEST_CASE("tail maps agree on golden integrands") {
  struct Case {
    const char* text;
    std::map<std::string, mpq_class> params;
    TailClass tail;
    std::optional<BigReal> alpha;
  };
  const Case cases[] = {
      {"int 0 inf (x^2+1)/(x^4+1) dx", {}, {}, {}},
      {"int -inf inf x/(x^2+4*x+13)^2 dx", {}, {}, {}},
      {"int 0 inf 1/(x^2+1)^n dx", {{"n", 3}}, {}, {}},
      {"int -inf inf cos(a*x)/(x^2+b^2) dx", {{"a", 1}, {"b", 2}}, trig(1, true), {}},
      {"int -inf inf x*sin(x)/(x^2+a^2) dx", {{"a", 2}}, trig(1, false), {}},
      {"int 0 inf x^a/(1+x)^2 dx", {{"a", mpq_class(1, 3)}}, {}, {}},
      {"int -inf inf exp(a*x)/(1+exp(x)) dx", {{"a", mpq_class(1, 3)}}, decaying(), {}},
      {"int 0 inf exp(-x^2)*cos(2*b*x) dx", {{"b", 2}}, decaying(), {}},
      {"int 0 inf sin(a*x)/sinh(x) dx", {{"a", 2}}, decaying(), {}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    Integral l = load(c.text, c.params);
    OracleHint h{c.tail, c.alpha};
    QuadResult a = oracle_integrate(l, h, kTol, HalfLineMap::Rational);
    QuadResult b = oracle_integrate(l, h, kTol, HalfLineMap::Reciprocal);
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(abs(a.value - b.value) <= BigReal(10L) * kTol * max(BigReal(1L), abs(a.value)));
  }
}

TEST_CASE("evaluator rejects unbound symbols and poles") {
  CHECK_THROWS_AS(RealEvaluator(parse_expression("a*x"), "x"), Error);
  RealEvaluator f(parse_expression("1/(x-1)"), "x");
  CHECK_THROWS_AS(f(BigReal(1L)), Error);
  CHECK(f(BigReal(3L)) == BigReal(1L) / 2L);
  RealEvaluator g(parse_expression("sqrt(x)*ln(x)+cosh(x)-sinh(x)"), "x");
  CHECK(close(g(BigReal(4L)), BigReal(2L) * log(BigReal(4L)) + exp(BigReal(-4L)), BigReal(1e-35)));
}
