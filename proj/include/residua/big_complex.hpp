#pragma once

#include <string>

#include "residua/big_real.hpp"

namespace residua {

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() = default;
  BigComplex(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
  BigComplex(int r) : re(static_cast<long>(r)) {}  // NOLINT(google-explicit-constructor)
  BigComplex(BigReal r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  static BigComplex i() { return {BigReal(0L), BigReal(1L)}; }
  /// r * e^{i theta}
  static BigComplex polar(const BigReal& r, const BigReal& theta);

  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }

  BigComplex& operator+=(const BigComplex& z);
  BigComplex& operator-=(const BigComplex& z);
  BigComplex& operator*=(const BigComplex& z);
  BigComplex& operator/=(const BigComplex& z);
  BigComplex& operator*=(const BigReal& s);
  BigComplex& operator/=(const BigReal& s);

  friend bool operator==(const BigComplex& a, const BigComplex& b) noexcept {
    return a.re == b.re && a.im == b.im;
  }

  /// "re+imi" in round-trip decimal, for diagnostics.
  std::string to_string() const;
};

BigComplex operator-(const BigComplex& z);
BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigReal& s);
BigComplex operator*(const BigReal& s, const BigComplex& a);
BigComplex operator/(const BigComplex& a, const BigReal& s);
BigComplex operator*(const BigComplex& a, long s);
BigComplex operator/(const BigComplex& a, long s);

BigReal abs(const BigComplex& z);
/// |z|^2
BigReal norm(const BigComplex& z);
/// Principal argument in (-pi, pi].
BigReal arg(const BigComplex& z);
/// Argument in [0, 2pi).
BigReal arg_0_2pi(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);
/// e^{i t}
BigComplex expi(const BigReal& t);
BigComplex sqrt(const BigComplex& z);
BigComplex pow(const BigComplex& z, long n);
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex sinh(const BigComplex& z);
BigComplex cosh(const BigComplex& z);
/// max(|re|, |im|), cheap magnitude for tolerances.
BigReal abs_max(const BigComplex& z);

}  // namespace residua
