#include "residua/series.hpp"

#include <algorithm>

#include "residua/error.hpp"

namespace residua {

Series::Series(std::size_t length, const BigComplex& constant) : c_(length) {
  if (length > 0) c_[0] = constant;
}

Series Series::from_polynomial(const Polynomial& p, std::size_t length) {
  Series s(length);
  for (std::size_t j = 0; j < length && j < p.coeffs().size(); ++j) s.c_[j] = p.coeffs()[j];
  return s;
}

Series Series::identity_at(const BigComplex& z0, std::size_t length) {
  Series s(length, z0);
  if (length > 1) s.c_[1] = BigComplex(1L);
  return s;
}

std::size_t Series::order(const BigReal& tol) const {
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (abs(c_[j]) > tol) return j;
  }
  return c_.size();
}

BigReal Series::max_abs() const {
  BigReal m(0L);
  for (const auto& x : c_) m = max(m, abs(x));
  return m;
}

Series& Series::operator+=(const Series& s) {
  for (std::size_t j = 0; j < c_.size() && j < s.c_.size(); ++j) c_[j] += s.c_[j];
  return *this;
}

Series& Series::operator-=(const Series& s) {
  for (std::size_t j = 0; j < c_.size() && j < s.c_.size(); ++j) c_[j] -= s.c_[j];
  return *this;
}

Series& Series::operator*=(const BigComplex& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.length(), b.length());
  Series r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series divide(const Series& a, const Series& b) {
  if (b.length() == 0 || b[0].is_zero()) throw Error(ErrorCode::DomainError, "series division by h");
  const std::size_t n = std::min(a.length(), b.length());
  Series q(n);
  const BigComplex inv = BigComplex(1L) / b[0];
  for (std::size_t k = 0; k < n; ++k) {
    BigComplex acc = a[k];
    for (std::size_t j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc * inv;
  }
  return q;
}

Series exp(const Series& s) {
  const std::size_t n = s.length();
  Series g(n);
  if (n == 0) return g;
  g[0] = exp(s[0]);
  for (std::size_t k = 1; k < n; ++k) {
    BigComplex acc;
    for (std::size_t j = 1; j <= k; ++j) acc += s[j] * g[k - j] * static_cast<long>(j);
    g[k] = acc / static_cast<long>(k);
  }
  return g;
}

Series pow(const Series& s, const BigComplex& alpha, const BigComplex& s0_pow) {
  const std::size_t n = s.length();
  Series g(n);
  if (n == 0) return g;
  if (s[0].is_zero()) throw Error(ErrorCode::DomainError, "series power at a zero constant term");
  g[0] = s0_pow;
  const BigComplex inv = BigComplex(1L) / s[0];
  // s g' = alpha s' g
  for (std::size_t k = 1; k < n; ++k) {
    BigComplex acc;
    for (std::size_t j = 1; j <= k; ++j) {
      BigComplex w = alpha * static_cast<long>(j) - BigComplex(static_cast<long>(k - j));
      acc += w * s[j] * g[k - j];
    }
    g[k] = acc * inv / static_cast<long>(k);
  }
  return g;
}

Series log(const Series& s, const BigComplex& log_s0) {
  const std::size_t n = s.length();
  Series g(n);
  if (n == 0) return g;
  if (s[0].is_zero()) throw Error(ErrorCode::DomainError, "series log at a zero constant term");
  g[0] = log_s0;
  const BigComplex inv = BigComplex(1L) / s[0];
  // s g' = s'
  for (std::size_t k = 1; k < n; ++k) {
    BigComplex acc = s[k] * static_cast<long>(k);
    for (std::size_t j = 1; j < k; ++j) acc -= g[j] * s[k - j] * static_cast<long>(j);
    g[k] = acc * inv / static_cast<long>(k);
  }
  return g;
}

Series compose(const Polynomial& p, const Series& s) {
  const std::size_t n = s.length();
  if (p.is_zero()) return Series(n);
  Series acc(n, p.leading());
  for (int k = p.degree() - 1; k >= 0; --k) {
    acc = acc * s;
    acc[0] += p.coeffs()[static_cast<std::size_t>(k)];
  }
  return acc;
}

Series shift_down(const Series& s, std::size_t k) {
  Series r(s.length());
  for (std::size_t j = 0; j + k < s.length(); ++j) r[j] = s[j + k];
  return r;
}

}  // namespace residua
