#pragma once

#include <vector>

#include "residua/polynomial.hpp"

namespace residua {

/// Truncated power series sum c_j h^j, j < length.
class Series {
 public:
  explicit Series(std::size_t length) : c_(length) {}
  Series(std::size_t length, const BigComplex& constant);
  /// The first `length` coefficients of a polynomial.
  static Series from_polynomial(const Polynomial& p, std::size_t length);
  /// z0 + h
  static Series identity_at(const BigComplex& z0, std::size_t length);

  std::size_t length() const noexcept { return c_.size(); }
  const BigComplex& operator[](std::size_t j) const { return c_[j]; }
  BigComplex& operator[](std::size_t j) { return c_[j]; }

  /// Index of the first coefficient with |c| > tol, or length() if none.
  std::size_t order(const BigReal& tol) const;
  BigReal max_abs() const;

  Series& operator+=(const Series& s);
  Series& operator-=(const Series& s);
  Series& operator*=(const BigComplex& s);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const BigComplex& s) { return a *= s; }

 private:
  std::vector<BigComplex> c_;
};

/// a / b; b[0] must be nonzero.
Series divide(const Series& a, const Series& b);
/// e^s
Series exp(const Series& s);
/// s^alpha with the constant term's power supplied as s0_pow (fixes the branch).
Series pow(const Series& s, const BigComplex& alpha, const BigComplex& s0_pow);
/// log s with log(s[0]) supplied as log_s0.
Series log(const Series& s, const BigComplex& log_s0);
/// p(s)
Series compose(const Polynomial& p, const Series& s);
/// Drops the first k coefficients (division by h^k), keeping the length.
Series shift_down(const Series& s, std::size_t k);

}  // namespace residua
