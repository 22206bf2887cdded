#include "residua/big_real.hpp"

#include <cstdlib>
#include <memory>

#include "residua/error.hpp"

namespace residua {

namespace {

thread_local int t_precision = kDefaultPrecision;

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

mpfr_prec_t current() { return static_cast<mpfr_prec_t>(t_precision); }

struct MpfrStringDeleter {
  void operator()(char* p) const { mpfr_free_str(p); }
};

}  // namespace

int working_precision() noexcept { return t_precision; }

PrecisionScope::PrecisionScope(int bits) : saved_(t_precision) {
  if (bits < kMinPrecision || bits > kMaxPrecision) {
    throw Error(ErrorCode::DomainError,
                "precision " + std::to_string(bits) + " bits is outside [" +
                    std::to_string(kMinPrecision) + ", " + std::to_string(kMaxPrecision) + "]");
  }
  t_precision = bits;
}

PrecisionScope::~PrecisionScope() { t_precision = saved_; }

BigReal::BigReal() {
  mpfr_init2(value_, current());
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value) {
  mpfr_init2(value_, current());
  mpfr_set_si(value_, value, kRound);
}

BigReal::BigReal(double value) {
  mpfr_init2(value_, current());
  mpfr_set_d(value_, value, kRound);
}

BigReal::BigReal(const mpq_class& value) {
  mpfr_init2(value_, current());
  mpfr_set_q(value_, value.get_mpq_t(), kRound);
}

BigReal::BigReal(mpfr_srcptr value) {
  mpfr_init2(value_, current());
  mpfr_set(value_, value, kRound);
}

BigReal BigReal::from_string(std::string_view text) {
  BigReal r;
  std::string buffer(text);
  char* end = nullptr;
  if (!buffer.empty()) mpfr_strtofr(r.value_, buffer.c_str(), &end, 10, kRound);
  if (buffer.empty() || end != buffer.c_str() + buffer.size()) {
    throw Error(ErrorCode::DomainError, "not a decimal number: '" + buffer + "'");
  }
  return r;
}

BigReal BigReal::pi() {
  BigReal r;
  mpfr_const_pi(r.value_, kRound);
  return r;
}

BigReal BigReal::infinity(int sign) {
  BigReal r;
  mpfr_set_inf(r.value_, sign);
  return r;
}

BigReal BigReal::nan() {
  BigReal r;
  mpfr_set_nan(r.value_);
  return r;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

BigReal::BigReal(BigReal&& other) noexcept {
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d == nullptr) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
  } else if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
  }
  mpfr_set(value_, other.value_, kRound);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
  return *this;
}

BigReal::~BigReal() {
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
}

long BigReal::exponent() const noexcept {
  if (!mpfr_regular_p(value_)) return mpfr_zero_p(value_) ? -(1L << 40) : (1L << 40);
  return static_cast<long>(mpfr_get_exp(value_));
}

std::string BigReal::to_string() const {
  const int digits = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_)));
  return to_string(digits);
}

std::string BigReal::to_string(int significant_digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
  if (significant_digits < 1) significant_digits = 1;
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Re", significant_digits - 1, value_);
  std::unique_ptr<char, MpfrStringDeleter> holder(raw);
  return std::string(raw);
}

BigReal& BigReal::operator+=(const BigReal& rhs) {
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}
BigReal& BigReal::operator-=(const BigReal& rhs) {
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}
BigReal& BigReal::operator*=(const BigReal& rhs) {
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}
BigReal& BigReal::operator/=(const BigReal& rhs) {
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}
BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  return *this;
}
BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRound);
  return *this;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) noexcept {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigReal& a, long b) noexcept {
  if (a.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define RESIDUA_UNARY(name, fn)        \
  BigReal name(const BigReal& x) {     \
    BigReal r;                         \
    fn(r.get(), x.get(), kRound);      \
    return r;                          \
  }

#define RESIDUA_BINARY(name, fn)                       \
  BigReal name(const BigReal& a, const BigReal& b) {   \
    BigReal r;                                         \
    fn(r.get(), a.get(), b.get(), kRound);             \
    return r;                                          \
  }

RESIDUA_UNARY(operator-, mpfr_neg)
RESIDUA_BINARY(operator+, mpfr_add)
RESIDUA_BINARY(operator-, mpfr_sub)
RESIDUA_BINARY(operator*, mpfr_mul)
RESIDUA_BINARY(operator/, mpfr_div)
RESIDUA_UNARY(abs, mpfr_abs)
RESIDUA_UNARY(sqrt, mpfr_sqrt)
RESIDUA_UNARY(square, mpfr_sqr)
RESIDUA_UNARY(exp, mpfr_exp)
RESIDUA_UNARY(log, mpfr_log)
RESIDUA_UNARY(sin, mpfr_sin)
RESIDUA_UNARY(cos, mpfr_cos)
RESIDUA_UNARY(tan, mpfr_tan)
RESIDUA_UNARY(sinh, mpfr_sinh)
RESIDUA_UNARY(cosh, mpfr_cosh)
RESIDUA_UNARY(tanh, mpfr_tanh)
RESIDUA_BINARY(atan2, mpfr_atan2)
RESIDUA_BINARY(hypot, mpfr_hypot)
RESIDUA_BINARY(pow, mpfr_pow)

#undef RESIDUA_UNARY
#undef RESIDUA_BINARY

BigReal operator+(const BigReal& a, long b) {
  BigReal r;
  mpfr_add_si(r.get(), a.get(), b, kRound);
  return r;
}
BigReal operator-(const BigReal& a, long b) {
  BigReal r;
  mpfr_sub_si(r.get(), a.get(), b, kRound);
  return r;
}
BigReal operator*(const BigReal& a, long b) {
  BigReal r;
  mpfr_mul_si(r.get(), a.get(), b, kRound);
  return r;
}
BigReal operator/(const BigReal& a, long b) {
  BigReal r;
  mpfr_div_si(r.get(), a.get(), b, kRound);
  return r;
}
BigReal operator/(long a, const BigReal& b) {
  BigReal r;
  mpfr_si_div(r.get(), a, b.get(), kRound);
  return r;
}

void sin_cos(const BigReal& x, BigReal& s, BigReal& c) {
  BigReal ss, cc;
  mpfr_sin_cos(ss.get(), cc.get(), x.get(), kRound);
  s = std::move(ss);
  c = std::move(cc);
}

BigReal pow(const BigReal& x, long n) {
  BigReal r;
  mpfr_pow_si(r.get(), x.get(), n, kRound);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r;
  mpfr_mul_2si(r.get(), x.get(), e, kRound);
  return r;
}

BigReal floor(const BigReal& x) {
  BigReal r;
  mpfr_floor(r.get(), x.get());
  return r;
}

BigReal trunc(const BigReal& x) {
  BigReal r;
  mpfr_trunc(r.get(), x.get());
  return r;
}

BigReal round_nearest(const BigReal& x) {
  BigReal r;
  mpfr_rint(r.get(), x.get(), MPFR_RNDN);
  return r;
}

const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
const BigReal& min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

BigReal pow2(long e) {
  BigReal r(1L);
  mpfr_mul_2si(r.get(), r.get(), e, kRound);
  return r;
}

BigReal pow10(long e) {
  BigReal r;
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), kRound);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), kRound);
  return r;
}

}  // namespace residua
