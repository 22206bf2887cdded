#include "residua/big_complex.hpp"

namespace residua {

BigComplex BigComplex::polar(const BigReal& r, const BigReal& theta) {
  BigReal s, c;
  sin_cos(theta, s, c);
  return {r * c, r * s};
}

BigComplex& BigComplex::operator+=(const BigComplex& z) {
  re += z.re;
  im += z.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& z) {
  re -= z.re;
  im -= z.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& z) {
  *this = *this * z;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& z) {
  *this = *this / z;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigReal& s) {
  re *= s;
  im *= s;
  return *this;
}

BigComplex& BigComplex::operator/=(const BigReal& s) {
  re /= s;
  im /= s;
  return *this;
}

std::string BigComplex::to_string() const {
  std::string s = re.to_string();
  std::string t = im.to_string();
  if (t.empty() || (t[0] != '-' && t[0] != '+')) t = "+" + t;
  return s + t + "i";
}

BigComplex operator-(const BigComplex& z) { return {-z.re, -z.im}; }
BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, BigReal(0L)};
  BigReal r, i;
  // fused forms keep one rounding per component
  mpfr_fmms(r.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(i.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  return {std::move(r), std::move(i)};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
  BigReal d;
  mpfr_fmma(d.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  BigReal r, i;
  mpfr_fmma(r.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(i.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  return {r / d, i / d};
}

BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re * s, a.im * s}; }
BigComplex operator*(const BigReal& s, const BigComplex& a) { return {a.re * s, a.im * s}; }
BigComplex operator/(const BigComplex& a, const BigReal& s) { return {a.re / s, a.im / s}; }
BigComplex operator*(const BigComplex& a, long s) { return {a.re * s, a.im * s}; }
BigComplex operator/(const BigComplex& a, long s) { return {a.re / s, a.im / s}; }

BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }

BigReal norm(const BigComplex& z) {
  BigReal r;
  mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

BigReal arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigReal arg_0_2pi(const BigComplex& z) {
  BigReal t = atan2(z.im, z.re);
  if (t.sign() < 0) t += ldexp(BigReal::pi(), 1);
  return t;
}

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex exp(const BigComplex& z) {
  if (z.im.is_zero()) return {exp(z.re), BigReal(0L)};
  return BigComplex::polar(exp(z.re), z.im);
}

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex expi(const BigReal& t) { return BigComplex::polar(BigReal(1L), t); }

BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return {};
  // principal branch: Re >= 0
  BigReal m = abs(z);
  BigReal r = sqrt(ldexp(m + abs(z.re), -1));
  if (z.re.sign() >= 0) {
    return {r, z.im / ldexp(r, 1)};
  }
  BigReal i = abs(z.im) / ldexp(r, 1);
  BigReal re = std::move(i);
  BigReal im = z.im.sign() < 0 ? -r : r;
  return {std::move(re), std::move(im)};
}

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return BigComplex(1L) / pow(z, -n);
  BigComplex result(1L);
  BigComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

BigComplex sin(const BigComplex& z) {
  BigReal s, c;
  sin_cos(z.re, s, c);
  return {s * cosh(z.im), c * sinh(z.im)};
}

BigComplex cos(const BigComplex& z) {
  BigReal s, c;
  sin_cos(z.re, s, c);
  return {c * cosh(z.im), -(s * sinh(z.im))};
}

BigComplex sinh(const BigComplex& z) {
  BigReal s, c;
  sin_cos(z.im, s, c);
  return {sinh(z.re) * c, cosh(z.re) * s};
}

BigComplex cosh(const BigComplex& z) {
  BigReal s, c;
  sin_cos(z.im, s, c);
  return {cosh(z.re) * c, sinh(z.re) * s};
}

BigReal abs_max(const BigComplex& z) {
  BigReal a = abs(z.re);
  BigReal b = abs(z.im);
  return a < b ? b : a;
}

}  // namespace residua
