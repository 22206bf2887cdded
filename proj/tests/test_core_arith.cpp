#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "residua/big_complex.hpp"
#include "residua/error.hpp"
#include "residua/polynomial.hpp"

using namespace residua;

namespace {

BigReal dec(const char* s) { return BigReal::from_string(s); }

bool near(const BigComplex& a, const BigComplex& b, const BigReal& tol) { return abs(a - b) <= tol; }

BigComplex random_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-1000, 1000);
  return {BigReal(d(rng)) / 257L, BigReal(d(rng)) / 263L};
}

Polynomial random_poly(std::mt19937_64& rng, int deg) {
  std::vector<BigComplex> c;
  for (int k = 0; k <= deg; ++k) c.push_back(random_complex(rng));
  if (c.back().is_zero()) c.back() = BigComplex(1L);
  return Polynomial(c);
}

}  // namespace

TEST_CASE("precision scope nests and restores") {
  CHECK(working_precision() == 128);
  {
    PrecisionScope outer(256);
    BigReal x(1L);
    CHECK(x.precision() == 256);
    {
      PrecisionScope inner(64);
      CHECK(BigReal(2L).precision() == 64);
      BigReal copy = x;
      CHECK(copy.precision() == 256);
    }
    CHECK(working_precision() == 256);
  }
  CHECK(working_precision() == 128);
  CHECK_THROWS_AS(PrecisionScope(2), Error);
}

TEST_CASE("decimal output round-trips") {
  BigReal v = BigReal::pi() / sqrt(BigReal(2L));
  std::string s = v.to_string();
  CHECK(s.rfind("2.22144146907918312350794049503034", 0) == 0);
  CHECK(BigReal::from_string(s) == v);
  CHECK(abs(v - dec("2.2214414690791831235079404950303468493073108446878451115427")) < dec("1e-37"));
  CHECK_THROWS_AS(BigReal::from_string("1.2.3"), Error);
  CHECK_THROWS_AS(BigReal::from_string(""), Error);
  CHECK(BigReal::infinity().to_string() == "inf");
}

TEST_CASE("moved-from values can be reassigned") {
  BigReal a(3L);
  BigReal b(std::move(a));
  a = BigReal(5L);
  CHECK(a == 5L);
  CHECK(b == 3L);
  BigReal c;
  c = std::move(b);
  b = c;
  CHECK(b == 3L);
}

TEST_CASE("complex elementary functions") {
  const BigReal tol = dec("1e-36");
  BigComplex e = exp(BigComplex(BigReal(1L), BigReal(2L)));
  CHECK(near(e, {dec("-1.1312043837568136384312552555107947106288679958265257502177"),
                 dec("2.4717266720048189276169308935516645327361903692410081842008")},
             tol));
  CHECK(near(sqrt(BigComplex(BigReal(-3L), BigReal(-4L))), {BigReal(1L), BigReal(-2L)}, tol));
  CHECK(near(log(BigComplex(BigReal(-1L), BigReal(1L))),
             {dec("0.34657359027997265470861606072908828403775006718012762706034"),
              dec("2.3561944901923449288469825374596271631478770495313293657312")},
             tol));
  CHECK(abs(arg_0_2pi(BigComplex(BigReal(0L), BigReal(-1L))) - BigReal::pi() * 3L / 2L) < tol);
  CHECK(abs(BigComplex(BigReal(3L), BigReal(4L))) == 5L);
  BigComplex big{ldexp(BigReal(1L), 1L << 20), ldexp(BigReal(1L), 1L << 20)};
  CHECK(abs(big).is_finite());
  BigComplex z{BigReal(1L) / 3L, BigReal(2L) / 7L};
  CHECK(near(sinh(z) * sinh(z) - cosh(z) * cosh(z), BigComplex(-1L), tol));
  CHECK(near(sin(z) * sin(z) + cos(z) * cos(z), BigComplex(1L), tol));
}

TEST_CASE("poly_eval examples") {
  const BigReal tol = dec("1e-36");
  Polynomial p4({BigComplex(1L), 0, 0, 0, BigComplex(1L)});
  BigComplex w = expi(BigReal::pi() / 4L);
  CHECK(abs(poly_eval(p4, w)) < tol);
  PolyEval pe = poly_eval_with_bound(p4, w);
  CHECK(abs(pe.value) <= pe.error_bound);
  CHECK(abs(pe.abs_sum - 2L) < tol);

  Polynomial one = Polynomial::constant(BigComplex(1L));
  CHECK(poly_eval(one, BigComplex(BigReal(17L), BigReal(-3L))) == BigComplex(1L));

  Polynomial q({BigComplex(13L), BigComplex(4L), BigComplex(1L)});
  CHECK(poly_eval(q, BigComplex(BigReal(-2L), BigReal(3L))).is_zero());
  CHECK(Polynomial().degree() == -1);
}

TEST_CASE("poly_derivative examples") {
  Polynomial p4({BigComplex(1L), 0, 0, 0, BigComplex(1L)});
  CHECK(poly_derivative(p4) == Polynomial({0, 0, 0, BigComplex(4L)}));
  CHECK(poly_derivative(Polynomial::constant(BigComplex(5L))).is_zero());
  Polynomial q({BigComplex(13L), BigComplex(4L), BigComplex(1L)});
  CHECK(poly_derivative(q) == Polynomial({BigComplex(4L), BigComplex(2L)}));
}

TEST_CASE("poly_arith examples") {
  Polynomial zmi({-BigComplex::i(), BigComplex(1L)});
  Polynomial zpi({BigComplex::i(), BigComplex(1L)});
  CHECK(zmi * zpi == Polynomial({BigComplex(1L), 0, BigComplex(1L)}));
  Polynomial a({BigComplex(1L), 0, BigComplex(1L)});
  Polynomial b({0, 0, BigComplex(-1L)});
  CHECK(a + b == Polynomial::constant(BigComplex(1L)));
  CHECK((a + b).degree() == 0);
  BigComplex s{BigReal(0L), ldexp(BigReal::pi(), 1)};
  Polynomial sc = poly_scale(a, s);
  CHECK(sc.coeff(0) == s);
  CHECK(sc.coeff(1).is_zero());
  CHECK(sc.coeff(2) == s);
}

TEST_CASE("near-cancellation is trimmed") {
  BigReal third = BigReal(1L) / 3L;
  Polynomial a({BigComplex(1L), BigComplex(third * 3L)});
  Polynomial b({0, BigComplex(1L)});
  CHECK((a - b).degree() == 0);
}

TEST_CASE("taylor shift and from_roots") {
  Polynomial q({BigComplex(13L), BigComplex(4L), BigComplex(1L)});
  Polynomial s = taylor_shift(q, BigComplex(BigReal(-2L), BigReal(3L)));
  // (h + z0)^2 + 4(h + z0) + 13 at the root: constant term vanishes, linear term is 2 z0 + 4 = 6i
  CHECK(s.coeff(0).is_zero());
  CHECK(s.coeff(1) == BigComplex(BigReal(0L), BigReal(6L)));
  CHECK(s.coeff(2) == BigComplex(1L));
  Polynomial r = Polynomial::from_roots({BigComplex(BigReal(-2L), BigReal(3L)), BigComplex(BigReal(-2L), BigReal(-3L))});
  CHECK(r == q);
  CHECK(pow(Polynomial({BigComplex(1L), BigComplex(1L)}), 3) ==
        Polynomial({BigComplex(1L), BigComplex(3L), BigComplex(3L), BigComplex(1L)}));
}

TEST_CASE("product evaluation property") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    Polynomial p = random_poly(rng, 1 + t % 8);
    Polynomial q = random_poly(rng, 1 + (t * 3) % 7);
    BigComplex z = random_complex(rng);
    PolyEval lhs = poly_eval_with_bound(p * q, z);
    PolyEval pa = poly_eval_with_bound(p, z);
    PolyEval qa = poly_eval_with_bound(q, z);
    // 8 ulp of the natural scale sum |pq coeffs| |z|^k <= (sum |p| |z|^k)(sum |q| |z|^k)
    BigReal ulp8 = ldexp(pa.abs_sum * qa.abs_sum, 3 - working_precision());
    BigReal budget = ulp8 * static_cast<long>(p.degree() + q.degree() + 2) + lhs.error_bound;
    CHECK(abs(lhs.value - pa.value * qa.value) <= budget);
  }
}

TEST_CASE("derivative linearity is coefficient-exact") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Polynomial p = random_poly(rng, 5);
    Polynomial q = random_poly(rng, 5);
    BigComplex a = random_complex(rng);
    BigComplex b = random_complex(rng);
    Polynomial lhs = poly_derivative(poly_scale(p, a) + poly_scale(q, b));
    Polynomial rhs = poly_scale(poly_derivative(p), a) + poly_scale(poly_derivative(q), b);
    // k (a p_k + b q_k) vs a (k p_k) + b (k q_k): distinct roundings, so compare to roundoff
    for (int k = 0; k <= std::max(lhs.degree(), rhs.degree()); ++k) {
      CHECK(abs(lhs.coeff(k) - rhs.coeff(k)) <= ldexp(BigReal(100L), -working_precision() + 8));
    }
  }
}

TEST_CASE("conjugate evaluation is bit-exact for real coefficients") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<BigComplex> c;
    for (int k = 0; k < 7; ++k) c.emplace_back(random_complex(rng).re);
    Polynomial p(c);
    REQUIRE(p.is_real());
    BigComplex z = random_complex(rng);
    CHECK(poly_eval(p, conj(z)) == conj(poly_eval(p, z)));
  }
}

TEST_CASE("rational function basics") {
  RationalFunction f(Polynomial({0, 0, BigComplex(1L)}), Polynomial({0, BigComplex(1L), BigComplex(1L)}));
  RationalFunction g = f.strip_common_z();
  CHECK(g.num == Polynomial({0, BigComplex(1L)}));
  CHECK(g.den == Polynomial({BigComplex(1L), BigComplex(1L)}));
  CHECK_THROWS_AS(RationalFunction(Polynomial(), Polynomial()), Error);
}
