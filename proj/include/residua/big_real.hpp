#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace residua {

inline constexpr int kDefaultPrecision = 128;
inline constexpr int kMinPrecision = 32;
inline constexpr int kMaxPrecision = 1 << 16;

/// Precision (bits) used for every value created on the calling thread.
int working_precision() noexcept;

/// RAII override of the thread's working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

/// Binary floating-point real at a fixed precision, rounded to nearest-even.
///
/// Fresh results (operators, free functions) are rounded to the thread's
/// working precision. Copies keep the precision of their source, and the
/// compound assignments round into the destination's precision.
class BigReal {
 public:
  BigReal();
  BigReal(long value);  // NOLINT(google-explicit-constructor)
  BigReal(int value) : BigReal(static_cast<long>(value)) {}  // NOLINT
  explicit BigReal(double value);
  explicit BigReal(const mpq_class& value);
  explicit BigReal(mpfr_srcptr value);

  /// Parses a decimal literal ("1.5", "-3e-4", "inf"). Throws DomainError.
  static BigReal from_string(std::string_view text);
  static BigReal pi();
  static BigReal infinity(int sign = 1);
  static BigReal nan();

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int precision() const noexcept { return static_cast<int>(mpfr_get_prec(value_)); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1. Zero maps to a large negative.
  long exponent() const noexcept;

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(value_, MPFR_RNDN); }
  /// Shortest decimal form that reads back to the same bits at this precision.
  std::string to_string() const;
  std::string to_string(int significant_digits) const;

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend bool operator==(const BigReal& a, const BigReal& b) noexcept {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend bool operator==(const BigReal& a, long b) noexcept {
    return !a.is_nan() && mpfr_cmp_si(a.value_, b) == 0;
  }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept;
  friend std::partial_ordering operator<=>(const BigReal& a, long b) noexcept;

 private:
  mpfr_t value_;
};

BigReal operator-(const BigReal& a);
BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator+(const BigReal& a, long b);
BigReal operator-(const BigReal& a, long b);
BigReal operator*(const BigReal& a, long b);
BigReal operator/(const BigReal& a, long b);
inline BigReal operator+(long a, const BigReal& b) { return b + a; }
inline BigReal operator-(long a, const BigReal& b) { return -(b - a); }
inline BigReal operator*(long a, const BigReal& b) { return b * a; }
BigReal operator/(long a, const BigReal& b);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal square(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
/// sin and cos of the same argument in one call.
void sin_cos(const BigReal& x, BigReal& s, BigReal& c);
BigReal tan(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal tanh(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal hypot(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
/// x * 2^e, exact.
BigReal ldexp(const BigReal& x, long e);
BigReal floor(const BigReal& x);
BigReal trunc(const BigReal& x);
BigReal round_nearest(const BigReal& x);
const BigReal& max(const BigReal& a, const BigReal& b);
const BigReal& min(const BigReal& a, const BigReal& b);

/// 2^e at working precision.
BigReal pow2(long e);
/// 10^e at working precision.
BigReal pow10(long e);

}  // namespace residua
