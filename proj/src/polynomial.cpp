#include "residua/polynomial.hpp"

#include <algorithm>

#include "residua/error.hpp"

namespace residua {

Polynomial::Polynomial(std::vector<BigComplex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const BigComplex& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const BigComplex& c, int k) {
  std::vector<BigComplex> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_rationals(const std::vector<mpq_class>& coeffs) {
  std::vector<BigComplex> v;
  v.reserve(coeffs.size());
  for (const auto& q : coeffs) v.emplace_back(BigReal(q));
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<BigComplex>& roots, const BigComplex& lead) {
  std::vector<BigComplex> v{lead};
  for (const auto& r : roots) {
    std::vector<BigComplex> next(v.size() + 1);
    for (std::size_t k = 0; k < v.size(); ++k) {
      next[k + 1] += v[k];
      next[k] -= v[k] * r;
    }
    v = std::move(next);
  }
  return Polynomial(std::move(v));
}

BigComplex Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

bool Polynomial::is_real() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigComplex& c) { return c.im.is_zero(); });
}

BigReal Polynomial::max_abs_coeff() const {
  BigReal m(0L);
  for (const auto& c : coeffs_) {
    BigReal a = abs(c);
    if (a > m) m = std::move(a);
  }
  return m;
}

int Polynomial::low_order() const noexcept {
  int k = 0;
  while (k <= degree() && coeffs_[static_cast<std::size_t>(k)].is_zero()) ++k;
  return k;
}

Polynomial Polynomial::shift_down(int k) const {
  if (k <= 0) return *this;
  if (k > degree()) return {};
  return Polynomial(std::vector<BigComplex>(coeffs_.begin() + k, coeffs_.end()));
}

BigComplex poly_eval(const Polynomial& p, const BigComplex& z) {
  const auto& c = p.coeffs();
  if (c.empty()) return {};
  BigComplex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc *= z;
    acc += c[k];
  }
  return acc;
}

PolyEval poly_eval_with_bound(const Polynomial& p, const BigComplex& z) {
  PolyEval out;
  const auto& c = p.coeffs();
  out.value = BigComplex();
  out.abs_sum = BigReal(0L);
  if (c.empty()) {
    out.error_bound = BigReal(0L);
    return out;
  }
  const BigReal az = abs(z);
  BigComplex acc = c.back();
  BigReal mu = abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    acc *= z;
    acc += c[k];
    mu *= az;
    mu += abs(c[k]);
  }
  out.value = std::move(acc);
  out.error_bound = ldexp(mu * static_cast<long>(4 * c.size()), -working_precision());
  out.abs_sum = std::move(mu);
  return out;
}

Polynomial poly_derivative(const Polynomial& p) {
  if (p.degree() < 1) return {};
  std::vector<BigComplex> v;
  v.reserve(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) v.push_back(p.coeffs()[static_cast<std::size_t>(k)] * static_cast<long>(k));
  return Polynomial(std::move(v));
}

Polynomial trimmed(std::vector<BigComplex> coeffs) {
  BigReal m(0L);
  for (const auto& c : coeffs) {
    BigReal a = abs(c);
    if (a > m) m = std::move(a);
  }
  const BigReal tol = ldexp(m, 8 - working_precision());
  while (!coeffs.empty() && abs(coeffs.back()) <= tol) coeffs.pop_back();
  return Polynomial(std::move(coeffs));
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  if (op == PolyOp::mul) {
    if (x.empty() || y.empty()) return {};
    std::vector<BigComplex> v(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j) v[i + j] += x[i] * y[j];
    }
    return trimmed(std::move(v));
  }
  std::vector<BigComplex> v(std::max(x.size(), y.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < x.size()) v[i] = x[i];
    if (i < y.size()) {
      if (op == PolyOp::add) v[i] += y[i];
      else v[i] -= y[i];
    }
  }
  return trimmed(std::move(v));
}

Polynomial poly_scale(const Polynomial& a, const BigComplex& c) {
  std::vector<BigComplex> v;
  v.reserve(a.coeffs().size());
  for (const auto& x : a.coeffs()) v.push_back(x * c);
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_arith(a, b, PolyOp::add); }
Polynomial operator-(const Polynomial& a, const Polynomial& b) { return poly_arith(a, b, PolyOp::sub); }
Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_arith(a, b, PolyOp::mul); }
Polynomial operator*(const Polynomial& a, const BigComplex& c) { return poly_scale(a, c); }

Polynomial pow(const Polynomial& p, int n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "negative polynomial power");
  Polynomial result = Polynomial::constant(BigComplex(1L));
  Polynomial base = p;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial taylor_shift(const Polynomial& p, const BigComplex& z0) {
  std::vector<BigComplex> c = p.coeffs();
  const int n = p.degree();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) {
      c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k) + 1] * z0;
    }
  }
  return Polynomial(std::move(c));
}

RationalFunction::RationalFunction(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(ErrorCode::DomainError, "rational function with zero denominator");
}

BigComplex RationalFunction::eval(const BigComplex& z) const { return poly_eval(num, z) / poly_eval(den, z); }

int RationalFunction::degree_gap() const noexcept {
  if (num.is_zero()) return 1 << 20;
  return den.degree() - num.degree();
}

RationalFunction RationalFunction::strip_common_z() const {
  if (num.is_zero()) return *this;
  const int k = std::min(num.low_order(), den.low_order());
  if (k == 0) return *this;
  return {num.shift_down(k), den.shift_down(k)};
}

}  // namespace residua
