#include "residua/residue.hpp"

#include <cmath>

#include "residua/error.hpp"
#include "residua/series.hpp"

namespace residua {

namespace {

struct Expansion {
  Series num;
  Series den;
};

BigComplex i_times(const BigReal& a) { return {BigReal(0L), a}; }

std::size_t series_length(const Kernel& k) {
  return static_cast<std::size_t>(2 * std::max(k.rational.den.degree(), 1) + 6);
}

Series sinh_series(const Series& z) {
  Series e = exp(z);
  Series m = exp(z * BigComplex(-1L));
  Series s = e - m;
  s *= BigComplex(BigReal(1L) / 2L);
  return s;
}

Expansion expand(const Kernel& k, const BigComplex& z0) {
  const std::size_t len = series_length(k);
  const Series z = Series::identity_at(z0, len);
  const auto& num = k.rational.num;
  const auto& den = k.rational.den;
  auto shifted = [&](const Polynomial& p) { return Series::from_polynomial(taylor_shift(p, z0), len); };
  switch (k.multiplier) {
    case Multiplier::None:
      return {shifted(num), shifted(den)};
    case Multiplier::ExpIaz:
      return {exp(z * i_times(k.a)) * shifted(num), shifted(den)};
    case Multiplier::PowerLog: {
      if (z0.is_zero()) throw Error(ErrorCode::DomainError, "expansion at the branch point");
      BigComplex p0 = exp(log_0_2pi(z0) * BigComplex(k.a));
      return {pow(z, BigComplex(k.a), p0) * shifted(num), shifted(den)};
    }
    case Multiplier::Log:
      if (z0.is_zero()) throw Error(ErrorCode::DomainError, "expansion at the branch point");
      return {log(z, log_0_2pi(z0)) * shifted(num), shifted(den)};
    case Multiplier::ExpAz: {
      Series w = exp(z);
      return {exp(z * BigComplex(k.a)) * compose(num, w), compose(den, w)};
    }
    case Multiplier::GaussShift: {
      Series e = z * z * BigComplex(-1L) + z * i_times(ldexp(k.b, 1));
      return {exp(e) * shifted(num), shifted(den)};
    }
    case Multiplier::ExpIazOverSinh:
      return {exp(z * i_times(k.a)) * shifted(num), shifted(den) * sinh_series(z)};
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown multiplier");
}

struct Orders {
  std::size_t num;
  std::size_t den;
};

Orders orders(const Expansion& e) {
  const long half = -working_precision() / 2;
  BigReal tn = ldexp(e.num.max_abs(), half);
  BigReal td = ldexp(e.den.max_abs(), half);
  // an all-zero series has order == length
  return {e.num.order(tn), e.den.order(td)};
}

BigReal scaled_tol(long decimal_digits_at_128) {
  // 10^(-d p / 128)
  BigReal e = BigReal(-decimal_digits_at_128 * working_precision()) / 128L;
  return pow(BigReal(10L), e);
}

BigComplex contour_sum(const Kernel& k, const BigComplex& z0, const BigReal& radius, int n, int n_start) {
  if (!(radius.sign() > 0)) throw Error(ErrorCode::DomainError, "contour radius must be positive");
  const BigReal tol = residue_xcheck_tol();
  const BigReal two_pi = ldexp(BigReal::pi(), 1);
  int count = std::max(n_start, 4);
  auto term = [&](int j, int total) {
    BigComplex offset = BigComplex::polar(radius, two_pi * static_cast<long>(j) / static_cast<long>(total));
    return k.eval(z0 + offset) * pow(offset, static_cast<long>(n));
  };
  BigComplex sum;
  for (int j = 0; j < count; ++j) sum += term(j, count);
  BigComplex est = sum / static_cast<long>(count);
  while (count < (1 << 16)) {
    const int next = 2 * count;
    for (int j = 1; j < next; j += 2) sum += term(j, next);
    count = next;
    BigComplex fresh = sum / static_cast<long>(count);
    BigReal diff = abs(fresh - est);
    BigReal scale = max(BigReal(1L), abs(fresh));
    est = std::move(fresh);
    if (!est.is_finite()) break;
    if (diff <= ldexp(tol * scale, -6)) return est;
  }
  throw Error(ErrorCode::NoConvergence,
              "contour sum did not settle by " + std::to_string(count) + " samples");
}

}  // namespace

std::string_view to_string(Multiplier m) {
  switch (m) {
    case Multiplier::None: return "none";
    case Multiplier::ExpIaz: return "exp(i*a*z)";
    case Multiplier::PowerLog: return "exp(a*log(z))";
    case Multiplier::ExpAz: return "exp(a*z)|R(e^z)";
    case Multiplier::GaussShift: return "exp(-z^2+2*i*b*z)";
    case Multiplier::ExpIazOverSinh: return "exp(i*a*z)/sinh(z)";
    case Multiplier::Log: return "log(z)";
  }
  return "?";
}

std::string_view to_string(ResidueMethod m) {
  switch (m) {
    case ResidueMethod::SimpleQuotient: return "simple-quotient";
    case ResidueMethod::OrderMDerivative: return "order-m-derivative";
    case ResidueMethod::NumericContour: return "numeric-contour";
  }
  return "?";
}

BigReal residue_xcheck_tol() { return scaled_tol(20); }
BigReal assembly_tol() { return scaled_tol(18); }

BigComplex log_0_2pi(const BigComplex& z) { return {log(abs(z)), arg_0_2pi(z)}; }

BigComplex Kernel::eval(const BigComplex& z) const {
  switch (multiplier) {
    case Multiplier::None:
      return rational.eval(z);
    case Multiplier::ExpIaz:
      return exp(i_times(a) * z) * rational.eval(z);
    case Multiplier::PowerLog:
      return exp(log_0_2pi(z) * BigComplex(a)) * rational.eval(z);
    case Multiplier::Log:
      return log_0_2pi(z) * rational.eval(z);
    case Multiplier::ExpAz:
      return exp(z * BigComplex(a)) * rational.eval(exp(z));
    case Multiplier::GaussShift:
      return exp(-(z * z) + i_times(ldexp(b, 1)) * z) * rational.eval(z);
    case Multiplier::ExpIazOverSinh:
      return exp(i_times(a) * z) * rational.eval(z) / sinh(z);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown multiplier");
}

int pole_order(const Kernel& k, const BigComplex& z0) {
  Expansion e = expand(k, z0);
  Orders o = orders(e);
  if (o.den >= e.den.length()) throw Error(ErrorCode::DomainError, "denominator vanishes identically");
  if (o.num >= e.num.length()) return -1;
  return static_cast<int>(o.den) - static_cast<int>(o.num);
}

BigComplex residue_simple(const Kernel& k, const BigComplex& z0) {
  Expansion e = expand(k, z0);
  Orders o = orders(e);
  if (o.den >= e.den.length()) throw Error(ErrorCode::DomainError, "denominator vanishes identically");
  if (o.num >= e.num.length() || o.den <= o.num) return {};
  if (o.den - o.num > 1) {
    throw Error(ErrorCode::NotSimple, "pole at " + z0.to_string() + " has order " + std::to_string(o.den - o.num));
  }
  return e.num[o.num] / e.den[o.den];
}

BigComplex residue_order_m(const Kernel& k, const BigComplex& z0, int m) {
  Expansion e = expand(k, z0);
  Orders o = orders(e);
  if (o.den >= e.den.length()) throw Error(ErrorCode::DomainError, "denominator vanishes identically");
  const int detected = o.num >= e.num.length() ? -1 : static_cast<int>(o.den) - static_cast<int>(o.num);
  if (detected != m) {
    throw Error(ErrorCode::OrderMismatch, "requested order " + std::to_string(m) + " but the pole at " +
                                              z0.to_string() + " has order " + std::to_string(detected));
  }
  if (m < 1) return {};
  Series q = divide(shift_down(e.num, o.num), shift_down(e.den, o.den));
  return q[static_cast<std::size_t>(m - 1)];
}

BigComplex residue_numeric_contour(const Kernel& k, const BigComplex& z0, const BigReal& radius, int n_samples) {
  return contour_sum(k, z0, radius, 1, n_samples);
}

BigComplex laurent_coefficient(const Kernel& k, const BigComplex& z0, int n, const BigReal& radius) {
  return contour_sum(k, z0, radius, n, 16);
}

std::vector<BigComplex> kernel_singularities(const Kernel& k, const BigComplex& z0) {
  std::vector<BigComplex> out;
  const BigReal two_pi = ldexp(BigReal::pi(), 1);
  if (k.rational.den.degree() >= 1) {
    for (const Root& r : find_roots(k.rational.den)) {
      if (k.multiplier != Multiplier::ExpAz) {
        out.push_back(r.location);
        continue;
      }
      if (r.location.is_zero()) continue;
      BigComplex base = log_0_2pi(r.location);
      long k0 = round_nearest((z0.im - base.im) / two_pi).to_long();
      for (long s = k0 - 1; s <= k0 + 1; ++s) out.push_back(base + BigComplex(BigReal(0L), two_pi * s));
    }
  }
  if (k.multiplier == Multiplier::ExpIazOverSinh) {
    const BigReal pi = BigReal::pi();
    long k0 = round_nearest(z0.im / pi).to_long();
    for (long s = k0 - 1; s <= k0 + 1; ++s) out.emplace_back(BigReal(0L), pi * s);
  }
  return out;
}

BigReal default_contour_radius(const Kernel& k, const BigComplex& z0) {
  const BigReal same = cluster_radius();
  BigReal d(2L);
  for (const auto& s : kernel_singularities(k, z0)) {
    BigReal dist = abs(s - z0);
    if (dist > same && dist < d) d = std::move(dist);
  }
  if (k.has_branch_cut()) {
    BigReal cut = z0.re.sign() >= 0 ? abs(z0.im) : abs(z0);
    if (cut < d) d = std::move(cut);
  }
  BigReal r = ldexp(d, -1);
  return min(r, BigReal(1L));
}

ResidueRecord compute_residue(const Kernel& k, const Pole& pole, bool crosscheck) {
  ResidueRecord rec;
  rec.pole = pole;
  const BigComplex& z0 = pole.root.location;
  if (pole.root.multiplicity == 1) {
    rec.value = residue_simple(k, z0);
    rec.method = ResidueMethod::SimpleQuotient;
  } else {
    rec.value = residue_order_m(k, z0, pole.root.multiplicity);
    rec.method = ResidueMethod::OrderMDerivative;
  }
  if (crosscheck) {
    BigComplex numeric = residue_numeric_contour(k, z0, default_contour_radius(k, z0));
    rec.crosscheck_delta = abs(rec.value - numeric);
  }
  return rec;
}

}  // namespace residua
