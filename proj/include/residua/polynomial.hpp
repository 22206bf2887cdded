#pragma once

#include <vector>

#include <gmpxx.h>

#include "residua/big_complex.hpp"

namespace residua {

/// Dense polynomial with complex coefficients, ascending by degree.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  /// Drops exactly-zero leading coefficients only.
  explicit Polynomial(std::vector<BigComplex> coeffs);

  static Polynomial constant(const BigComplex& c);
  /// c * z^k
  static Polynomial monomial(const BigComplex& c, int k);
  static Polynomial from_rationals(const std::vector<mpq_class>& coeffs);
  /// lead * prod (z - r_i)
  static Polynomial from_roots(const std::vector<BigComplex>& roots,
                               const BigComplex& lead = BigComplex(1L));

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigComplex>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^k; zero outside the stored range.
  BigComplex coeff(int k) const;
  const BigComplex& leading() const { return coeffs_.back(); }
  /// Every coefficient has an exactly zero imaginary part.
  bool is_real() const noexcept;
  BigReal max_abs_coeff() const;
  /// Multiplicity of the root at 0 (count of exactly-zero low coefficients).
  int low_order() const noexcept;
  /// p(z) / z^k for k <= low_order().
  Polynomial shift_down(int k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigComplex> coeffs_;
};

struct PolyEval {
  BigComplex value;
  /// sum |c_k| |z|^k, the scale of the rounding error
  BigReal abs_sum;
  /// a-priori bound on |computed - exact|, roughly 4 (deg+1) u abs_sum
  BigReal error_bound;
};

BigComplex poly_eval(const Polynomial& p, const BigComplex& z);
PolyEval poly_eval_with_bound(const Polynomial& p, const BigComplex& z);
Polynomial poly_derivative(const Polynomial& p);

enum class PolyOp { add, sub, mul };
/// Result trimmed: leading c removed while |c| <= 2^(-prec+8) max|coeffs|.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);
Polynomial poly_scale(const Polynomial& a, const BigComplex& c);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const BigComplex& c);
Polynomial pow(const Polynomial& p, int n);
/// Coefficients of q(h) = p(z0 + h).
Polynomial taylor_shift(const Polynomial& p, const BigComplex& z0);
/// Applies the tolerance trim to an arbitrary coefficient list.
Polynomial trimmed(std::vector<BigComplex> coeffs);

/// Quotient of polynomials, kept unreduced.
struct RationalFunction {
  Polynomial num;
  Polynomial den;

  RationalFunction() : num(), den(Polynomial::constant(BigComplex(1L))) {}
  /// Throws DomainError on a zero denominator.
  RationalFunction(Polynomial n, Polynomial d);

  BigComplex eval(const BigComplex& z) const;
  /// deg den - deg num (large for a zero numerator).
  int degree_gap() const noexcept;
  /// Removes the common factor z^k exactly.
  RationalFunction strip_common_z() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace residua
