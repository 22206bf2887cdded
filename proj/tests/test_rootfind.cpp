#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "residua/error.hpp"
#include "residua/rootfind.hpp"

using namespace residua;

namespace {

BigComplex c(long re, long im = 0) { return {BigReal(re), BigReal(im)}; }

Polynomial z4p1() { return Polynomial({c(1), 0, 0, 0, c(1)}); }

const BigReal& tight() {
  static const BigReal t = pow2(-120);
  return t;
}

}  // namespace

TEST_CASE("roots of z^4+1 are the odd eighth roots of unity") {
  auto roots = find_roots(z4p1());
  REQUIRE(roots.size() == 4);
  for (int k = 0; k < 4; ++k) {
    BigComplex expect = expi(BigReal::pi() * static_cast<long>(2 * k + 1) / 4L);
    CHECK(abs(roots[static_cast<std::size_t>(k)].location - expect) < tight());
    CHECK(roots[static_cast<std::size_t>(k)].multiplicity == 1);
    CHECK(roots[static_cast<std::size_t>(k)].residual <= root_accept_tol(z4p1()));
  }
  // real input: conjugate closure is exact
  CHECK(roots[3].location == conj(roots[0].location));
  CHECK(roots[2].location == conj(roots[1].location));
}

TEST_CASE("roots of z^2+4z+13") {
  auto roots = find_roots(Polynomial({c(13), c(4), c(1)}));
  REQUIRE(roots.size() == 2);
  CHECK(abs(roots[0].location - c(-2, 3)) < tight());
  CHECK(abs(roots[1].location - c(-2, -3)) < tight());
}

TEST_CASE("cubed factor merges into multiplicity 3") {
  Polynomial p = pow(Polynomial({c(1), 0, c(1)}), 3);
  auto roots = find_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(abs(roots[0].location - c(0, 1)) < tight());
  CHECK(abs(roots[1].location - c(0, -1)) < tight());
  CHECK(roots[0].multiplicity == 3);
  CHECK(roots[1].multiplicity == 3);
  CHECK(argument_principle_count(p, roots[0].location, BigReal(1L) / 10L) == 3);
  CHECK(argument_principle_count(p, roots[0].location, cluster_radius() * 4L) == 3);
}

TEST_CASE("zero roots are stripped exactly") {
  Polynomial p({0, 0, c(-1), 0, c(1)});  // z^2 (z^2 - 1)
  auto roots = find_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].location.is_zero());
  CHECK(roots[0].multiplicity == 2);
  CHECK(abs(roots[1].location - c(1)) < tight());
  CHECK(roots[2].location.im.is_zero());
}

TEST_CASE("degree limits") {
  CHECK_THROWS_AS(find_roots(Polynomial::constant(c(3))), Error);
  std::vector<BigComplex> big(66);
  big[0] = c(1);
  big[65] = c(1);
  try {
    find_roots(Polynomial(big));
    FAIL("expected DegreeTooHigh");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooHigh);
  }
  std::vector<BigComplex> ok(65);
  ok[0] = c(-1);
  ok[64] = c(1);
  auto roots = find_roots(Polynomial(ok));
  CHECK(roots.size() == 64);
}

TEST_CASE("argument principle examples") {
  Polynomial cube = pow(Polynomial({c(0, -1), c(1)}), 3);
  CHECK(argument_principle_count(cube, c(0, 1), BigReal(1L) / 2L) == 3);
  CHECK(argument_principle_count(z4p1(), expi(BigReal::pi() / 4L), BigReal(3L) / 10L) == 1);
  CHECK(argument_principle_count(Polynomial({c(1), 0, c(1)}), c(5), BigReal(1L) / 10L) == 0);
}

TEST_CASE("classify_poles examples") {
  RationalFunction a(Polynomial({c(1), 0, c(1)}), z4p1());
  auto poles = classify_poles(a, ContourKind::RealLine);
  REQUIRE(poles.size() == 4);
  int upper = 0;
  for (const auto& p : poles) {
    if (p.region == Region::UpperHalfPlane) {
      ++upper;
      CHECK(p.root.location.im.sign() > 0);
    }
  }
  CHECK(upper == 2);
  CHECK(abs(poles[0].root.location - expi(BigReal::pi() / 4L)) < tight());
  CHECK(abs(poles[1].root.location - expi(BigReal::pi() * 3L / 4L)) < tight());

  RationalFunction b(Polynomial::constant(c(1)), Polynomial({c(-1), 0, c(1)}));
  try {
    classify_poles(b, ContourKind::RealLine);
    FAIL("expected PoleOnContour");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleOnContour);
  }

  // y^2 - 5/2 y + 1
  RationalFunction u(Polynomial::constant(c(1)),
                     Polynomial({c(1), BigComplex(BigReal(-5L) / 2L), c(1)}));
  auto up = classify_poles(u, ContourKind::UnitCircle);
  REQUIRE(up.size() == 2);
  CHECK(abs(up[0].root.location - BigComplex(BigReal(1L) / 2L)) < tight());
  CHECK(up[0].region == Region::InsideUnitDisk);
  CHECK(abs(up[1].root.location - c(2)) < tight());
  CHECK(up[1].region == Region::OutsideUnitDisk);
}

TEST_CASE("numerator roots cancel poles") {
  // (z - i)(z + 2) / ((z - i)^2 (z^2 + 1))
  Polynomial zi({c(0, -1), c(1)});
  Polynomial num = zi * Polynomial({c(2), c(1)});
  Polynomial den = zi * zi * Polynomial({c(1), 0, c(1)});
  auto poles = classify_poles(RationalFunction(num, den), ContourKind::RealLine);
  REQUIRE(poles.size() == 2);
  CHECK(abs(poles[0].root.location - c(0, 1)) < tight());
  CHECK(poles[0].root.multiplicity == 2);
  CHECK(poles[1].root.multiplicity == 1);
  // full cancellation drops the pole
  auto none = classify_poles(RationalFunction(zi, zi * Polynomial({c(0, 1), c(1)})), ContourKind::RealLine);
  REQUIRE(none.size() == 1);
  CHECK(abs(none[0].root.location - c(0, -1)) < tight());
}

TEST_CASE("keyhole and strip regions") {
  RationalFunction k(Polynomial::constant(c(1)), pow(Polynomial({c(1), c(1)}), 2));
  auto kp = classify_poles(k, ContourKind::Keyhole);
  REQUIRE(kp.size() == 1);
  CHECK(kp[0].region == Region::InsideKeyhole);
  CHECK(kp[0].root.multiplicity == 2);
  try {
    classify_poles(RationalFunction(Polynomial::constant(c(1)), Polynomial({c(-2), c(1)})), ContourKind::Keyhole);
    FAIL("expected BranchPoleConflict");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BranchPoleConflict);
  }
  // 1 + w has its root at w = -1, i.e. z = i pi
  auto sp = classify_poles(RationalFunction(Polynomial::constant(c(1)), Polynomial({c(1), c(1)})), ContourKind::ExpStrip);
  REQUIRE(sp.size() == 1);
  CHECK(sp[0].region == Region::InsideStrip);
  CHECK(abs(sp[0].root.location - BigComplex(BigReal(0L), BigReal::pi())) < tight());
}

TEST_CASE("random polynomials with clustered roots reconstruct") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coord(-64, 64);
  std::uniform_int_distribution<int> mult(1, 4);
  for (int t = 0; t < 40; ++t) {
    std::vector<BigComplex> roots;
    std::vector<BigComplex> distinct;
    int deg = 0;
    while (deg < 10) {
      BigComplex r{BigReal(coord(rng)) / 16L, BigReal(coord(rng)) / 16L};
      bool clash = false;
      for (const auto& d : distinct) clash = clash || abs(d - r) < BigReal(1L) / 8L;
      if (clash) continue;
      int m = std::min(mult(rng), 12 - deg);
      distinct.push_back(r);
      for (int k = 0; k < m; ++k) roots.push_back(r);
      deg += m;
    }
    Polynomial p = Polynomial::from_roots(roots, c(3, 1));
    auto found = find_roots(p);
    std::vector<BigComplex> expanded;
    int total = 0;
    for (const auto& r : found) {
      total += r.multiplicity;
      for (int k = 0; k < r.multiplicity; ++k) expanded.push_back(r.location);
      CHECK(argument_principle_count(p, r.location, cluster_radius() * 4L) == r.multiplicity);
    }
    CHECK(total == p.degree());
    Polynomial back = Polynomial::from_roots(expanded, p.leading());
    BigReal err(0L);
    for (int k = 0; k <= p.degree(); ++k) err = max(err, abs(back.coeff(k) - p.coeff(k)));
    CHECK(err / p.max_abs_coeff() <= pow2(-64));
  }
}
