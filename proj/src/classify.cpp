#include <algorithm>

#include "residua/error.hpp"
#include "residua/parser.hpp"
#include "residua/strategies.hpp"

namespace residua {

namespace {

// Exact arithmetic over Q(i), enough to rebuild the integrand as a rational
// function P(z)/Q(z) before anything is rounded.
struct QC {
  mpq_class re;
  mpq_class im;
  bool zero() const { return re == 0 && im == 0; }
  friend bool operator==(const QC& a, const QC& b) { return a.re == b.re && a.im == b.im; }
};

QC operator+(const QC& a, const QC& b) { return {a.re + b.re, a.im + b.im}; }
QC operator-(const QC& a, const QC& b) { return {a.re - b.re, a.im - b.im}; }
QC operator*(const QC& a, const QC& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
QC inverse(const QC& a) {
  mpq_class n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

using QPoly = std::vector<QC>;

void trim(QPoly& p) {
  while (!p.empty() && p.back().zero()) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

void check_degree(const QPoly& p) {
  if (degree(p) > kMaxDegree) {
    throw Error(ErrorCode::DegreeTooHigh, "rational form exceeds degree " + std::to_string(kMaxDegree));
  }
}

QPoly constant(const QC& c) {
  QPoly p{c};
  trim(p);
  return p;
}

QPoly add(const QPoly& a, const QPoly& b, bool subtract = false) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    QC x = i < a.size() ? a[i] : QC{};
    QC y = i < b.size() ? b[i] : QC{};
    r[i] = subtract ? x - y : x + y;
  }
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  check_degree(r);
  return r;
}

QPoly scale(const QPoly& a, const QC& c) {
  QPoly r;
  for (const auto& x : a) r.push_back(x * c);
  trim(r);
  return r;
}

QPoly remainder(QPoly a, const QPoly& b) {
  const QC lead_inv = inverse(b.back());
  while (degree(a) >= degree(b)) {
    const QC q = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly quotient(QPoly a, const QPoly& b) {
  if (degree(a) < degree(b)) return {};
  QPoly q(a.size() - b.size() + 1);
  const QC lead_inv = inverse(b.back());
  while (degree(a) >= degree(b)) {
    const QC c = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

QPoly monic(const QPoly& p) { return scale(p, inverse(p.back())); }

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly reflect(const QPoly& p) {
  QPoly r = p;
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = QC{} - r[i];
  return r;
}

struct QRat {
  QPoly num;
  QPoly den{QC{1, 0}};
};

QRat reduced(QRat r) {
  if (r.den.empty()) throw Error(ErrorCode::DomainError, "division by zero in the integrand");
  if (r.num.empty()) return {{}, {QC{1, 0}}};
  QPoly g = gcd(r.num, r.den);
  if (degree(g) > 0) {
    r.num = quotient(r.num, g);
    r.den = quotient(r.den, g);
  }
  const QC inv = inverse(r.den.back());
  return {scale(r.num, inv), scale(r.den, inv)};
}

QRat rconst(const mpq_class& c) { return {constant(QC{c, 0})}; }

QRat radd(const QRat& a, const QRat& b) {
  if (a.den == b.den) return reduced({add(a.num, b.num), a.den});
  return reduced({add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den)});
}

QRat rmul(const QRat& a, const QRat& b) { return reduced({mul(a.num, b.num), mul(a.den, b.den)}); }

QRat rinv(const QRat& a) {
  if (a.num.empty()) throw Error(ErrorCode::DomainError, "division by zero in the integrand");
  return reduced({a.den, a.num});
}

QRat rpow(const QRat& a, long k) {
  QRat base = k < 0 ? rinv(a) : a;
  QRat r = rconst(1);
  for (long i = 0; i < std::labs(k); ++i) r = rmul(r, base);
  return r;
}

/// z^k for any integer k
QRat zpow(long k) {
  QPoly mono(static_cast<std::size_t>(std::labs(k)) + 1);
  mono.back() = QC{1, 0};
  check_degree(mono);
  if (k >= 0) return {mono};
  return {{QC{1, 0}}, mono};
}

int low_order(const QPoly& p) {
  int k = 0;
  while (k < static_cast<int>(p.size()) && p[static_cast<std::size_t>(k)].zero()) ++k;
  return k;
}

/// Moves z^d out of r; returns d.
int strip_z(QRat& r) {
  if (r.num.empty()) return 0;
  const int n = low_order(r.num);
  const int d = low_order(r.den);
  r.num.erase(r.num.begin(), r.num.begin() + n);
  r.den.erase(r.den.begin(), r.den.begin() + d);
  return n - d;
}

bool is_constant(const QRat& r) { return degree(r.num) <= 0 && degree(r.den) == 0; }

RationalFunction to_rational(const QRat& r) {
  auto conv = [](const QPoly& p) {
    std::vector<BigComplex> c;
    for (const auto& x : p) c.emplace_back(BigReal(x.re), BigReal(x.im));
    return Polynomial(std::move(c));
  };
  return RationalFunction(conv(r.num), conv(r.den));
}

// --- reading the normalized tree -------------------------------------------

enum class Mode { Line, Trig, ExpW };

/// k for a Poly node k*x, if that is what it is
std::optional<mpq_class> linear_coefficient(const Expr& e) {
  if (e.kind == NodeKind::Poly && e.poly.size() == 2 && e.poly[0] == 0) return e.poly[1];
  return std::nullopt;
}

std::optional<QRat> to_qrat(const Expr& e, Mode mode);

std::optional<QRat> call_to_qrat(const Expr& e, Mode mode) {
  auto k = linear_coefficient(*e.args.at(0));
  if (!k || k->get_den() != 1 || !k->get_num().fits_slong_p()) return std::nullopt;
  const long n = k->get_num().get_si();
  const QRat up = zpow(n);
  const QRat down = zpow(-n);
  if (mode == Mode::Trig) {
    if (e.text == "cos") return rmul(radd(up, down), rconst(mpq_class(1, 2)));
    if (e.text == "sin") return rmul(radd(up, rmul(down, rconst(-1))), QRat{constant(QC{0, mpq_class(-1, 2)})});
  }
  if (mode == Mode::ExpW) {
    if (e.text == "exp") return up;
    if (e.text == "cosh") return rmul(radd(up, down), rconst(mpq_class(1, 2)));
    if (e.text == "sinh") return rmul(radd(up, rmul(down, rconst(-1))), rconst(mpq_class(1, 2)));
  }
  return std::nullopt;
}

std::optional<QRat> to_qrat(const Expr& e, Mode mode) {
  switch (e.kind) {
    case NodeKind::Number:
      return rconst(e.value);
    case NodeKind::Poly: {
      if (mode != Mode::Line && e.poly.size() > 1) return std::nullopt;
      QPoly p;
      for (const auto& c : e.poly) p.push_back(QC{c, 0});
      trim(p);
      return QRat{p};
    }
    case NodeKind::Add:
    case NodeKind::Mul: {
      QRat acc = rconst(e.kind == NodeKind::Add ? 0 : 1);
      for (const auto& a : e.args) {
        auto t = to_qrat(*a, mode);
        if (!t) return std::nullopt;
        acc = e.kind == NodeKind::Add ? radd(acc, *t) : rmul(acc, *t);
      }
      return acc;
    }
    case NodeKind::Pow: {
      const Expr& ex = *e.args.at(1);
      if (ex.kind != NodeKind::Number || ex.value.get_den() != 1 || !ex.value.get_num().fits_slong_p())
        return std::nullopt;
      auto b = to_qrat(*e.args.at(0), mode);
      if (!b) return std::nullopt;
      return rpow(*b, ex.value.get_num().get_si());
    }
    case NodeKind::Call:
      return call_to_qrat(e, mode);
    default:
      return std::nullopt;
  }
}

struct Factor {
  ExprPtr base;
  mpq_class exponent;
};

void split_factors(const ExprPtr& e, mpq_class& coef, std::vector<Factor>& out) {
  if (e->kind == NodeKind::Mul) {
    for (const auto& a : e->args) split_factors(a, coef, out);
  } else if (e->kind == NodeKind::Number) {
    coef *= e->value;
  } else if (e->kind == NodeKind::Poly && e->poly.size() == 1) {
    coef *= e->poly[0];
  } else if (e->kind == NodeKind::Pow && e->args[1]->kind == NodeKind::Number) {
    out.push_back({e->args[0], e->args[1]->value});
  } else {
    out.push_back({e, 1});
  }
}

std::optional<QRat> factors_to_qrat(const mpq_class& coef, const std::vector<Factor>& fs, Mode mode) {
  QRat acc = rconst(coef);
  for (const auto& f : fs) {
    if (f.exponent.get_den() != 1 || !f.exponent.get_num().fits_slong_p()) return std::nullopt;
    auto b = to_qrat(*f.base, mode);
    if (!b) return std::nullopt;
    acc = rmul(acc, rpow(*b, f.exponent.get_num().get_si()));
  }
  return acc;
}

bool is_call(const Expr& e, const char* fn) { return e.kind == NodeKind::Call && e.text == fn; }

bool is_var(const Expr& e) {
  return e.kind == NodeKind::Poly && e.poly.size() == 2 && e.poly[0] == 0 && e.poly[1] == 1;
}

BigReal to_big(const mpq_class& q) { return BigReal(q); }

bool is_even(const QRat& r) { return mul(reflect(r.num), r.den) == mul(r.num, reflect(r.den)); }
bool is_odd(const QRat& r) { return mul(reflect(r.num), r.den) == scale(mul(r.num, reflect(r.den)), QC{-1, 0}); }

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidParams, why); }

std::optional<BoundsKind> bounds_of(const Integral& i) {
  const bool lo_zero = i.lo.kind == Bound::Kind::Finite && i.lo.value == 0;
  if (i.lo.kind == Bound::Kind::NegInf && i.hi.kind == Bound::Kind::PosInf) return BoundsKind::FullLine;
  if (lo_zero && i.hi.kind == Bound::Kind::PosInf) return BoundsKind::HalfLine;
  if (lo_zero && i.hi.kind == Bound::Kind::TwoPi) return BoundsKind::ZeroToTwoPi;
  return std::nullopt;
}

struct Shape {
  Integral source;
  BoundsKind bounds;
  mpq_class coef = 1;
  std::vector<Factor> factors;
};

IntegralProblem base_problem(const Shape& s, Family f) {
  IntegralProblem p;
  p.family = f;
  p.bounds = s.bounds;
  p.source = s.source;
  return p;
}

Kernel constant_kernel(const mpq_class& c, Multiplier m) {
  Kernel k;
  k.rational = to_rational(rconst(c));
  k.multiplier = m;
  return k;
}

std::optional<IntegralProblem> match_sinh(const Shape& s) {
  if (s.bounds == BoundsKind::ZeroToTwoPi || s.factors.size() != 2) return std::nullopt;
  std::optional<mpq_class> a;
  bool sinh_den = false;
  for (const auto& f : s.factors) {
    if (is_call(*f.base, "sin") && f.exponent == 1) a = linear_coefficient(*f.base->args[0]);
    if (is_call(*f.base, "sinh") && f.exponent == -1 && is_var(*f.base->args[0])) sinh_den = true;
  }
  if (!a || !sinh_den) return std::nullopt;
  if (*a <= 0) invalid("SinhKernel requires a > 0");
  IntegralProblem p = base_problem(s, Family::SinhKernel);
  p.kernel = constant_kernel(s.coef, Multiplier::ExpIazOverSinh);
  p.kernel.a = to_big(*a);
  p.params["a"] = p.kernel.a;
  p.trig_part = TrigPart::Sin;
  if (s.bounds == BoundsKind::HalfLine) p.scale = mpq_class(1, 2);
  return p;
}

std::optional<IntegralProblem> match_gaussian(const Shape& s) {
  if (s.bounds == BoundsKind::ZeroToTwoPi || s.factors.empty() || s.factors.size() > 2) return std::nullopt;
  bool gauss = false;
  std::optional<mpq_class> k = mpq_class(0);
  for (const auto& f : s.factors) {
    const Expr& b = *f.base;
    if (is_call(b, "exp") && f.exponent == 1 && b.args[0]->kind == NodeKind::Poly &&
        b.args[0]->poly == std::vector<mpq_class>{0, 0, -1}) {
      gauss = true;
    } else if (is_call(b, "cos") && f.exponent == 1 && s.factors.size() == 2) {
      k = linear_coefficient(*b.args[0]);
    } else {
      return std::nullopt;
    }
  }
  if (!gauss || !k) return std::nullopt;
  IntegralProblem p = base_problem(s, Family::GaussianShift);
  p.kernel = constant_kernel(s.coef, Multiplier::GaussShift);
  p.kernel.b = to_big(*k / 2);
  p.params["b"] = p.kernel.b;
  p.trig_part = s.factors.size() == 2 ? TrigPart::Cos : TrigPart::None;
  if (s.bounds == BoundsKind::HalfLine) p.scale = mpq_class(1, 2);
  return p;
}

std::optional<IntegralProblem> match_keyhole(const Shape& s) {
  if (s.bounds != BoundsKind::HalfLine) return std::nullopt;
  mpq_class alpha = 0;
  bool fractional = false;
  std::vector<Factor> rest;
  for (const auto& f : s.factors) {
    if (is_var(*f.base) && f.exponent.get_den() != 1) {
      alpha += f.exponent;
      fractional = true;
    } else {
      rest.push_back(f);
    }
  }
  if (!fractional) return std::nullopt;
  auto r = factors_to_qrat(s.coef, rest, Mode::Line);
  if (!r) return std::nullopt;
  alpha += strip_z(*r);
  if (alpha.get_den() == 1) return std::nullopt;
  if (!(alpha > -1 && alpha < 1)) invalid("KeyholePower requires -1 < a < 1");
  if (mpq_class(degree(r->den) - degree(r->num)) <= 1 + alpha) {
    invalid("KeyholePower needs x^a R(x) to decay faster than 1/x");
  }
  IntegralProblem p = base_problem(s, Family::KeyholePower);
  p.kernel.rational = to_rational(*r);
  p.kernel.multiplier = Multiplier::PowerLog;
  p.kernel.a = to_big(alpha);
  p.params["a"] = p.kernel.a;
  return p;
}

std::optional<IntegralProblem> match_exp_rectangle(const Shape& s) {
  if (s.bounds != BoundsKind::FullLine) return std::nullopt;
  mpq_class c = 0;
  bool any_exp = false;
  std::vector<Factor> rest;
  for (const auto& f : s.factors) {
    auto k = is_call(*f.base, "exp") ? linear_coefficient(*f.base->args[0]) : std::nullopt;
    if (k) {
      c += *k * f.exponent;
      any_exp = true;
    } else {
      rest.push_back(f);
    }
  }
  auto r = factors_to_qrat(s.coef, rest, Mode::ExpW);
  if (!r || (!any_exp && is_constant(*r)) || is_constant(*r)) return std::nullopt;
  c += strip_z(*r);
  const int gap = degree(r->den) - degree(r->num);
  if (!(c > 0 && c < gap)) invalid("ExpRectangle integrand e^(ax) R(e^x) diverges: needs 0 < a < deg gap");
  if (c.get_den() == 1) invalid("ExpRectangle requires a non-integer exponent a");
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
  const mpq_class a = c - mpq_class(whole);
  *r = rmul(*r, zpow(whole.get_si()));
  IntegralProblem p = base_problem(s, Family::ExpRectangle);
  p.kernel.rational = to_rational(*r);
  p.kernel.multiplier = Multiplier::ExpAz;
  p.kernel.a = to_big(a);
  p.params["a"] = p.kernel.a;
  return p;
}

std::optional<BigReal> square_root_shift(const QRat& r) {
  // b for a denominator z^2 + b^2
  if (r.den.size() != 3 || !r.den[1].zero() || r.den[0].im != 0 || !(r.den[0].re > 0)) return std::nullopt;
  const mpq_class c = r.den[0].re;
  mpz_class n, d;
  if (mpz_perfect_square_p(c.get_num_mpz_t()) && mpz_perfect_square_p(c.get_den_mpz_t())) {
    mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
    return BigReal(mpq_class(n, d));
  }
  return sqrt(BigReal(c));
}

std::optional<IntegralProblem> match_fourier(const Shape& s) {
  if (s.bounds == BoundsKind::ZeroToTwoPi) return std::nullopt;
  std::optional<std::size_t> trig;
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    const Expr& b = *s.factors[i].base;
    if ((is_call(b, "cos") || is_call(b, "sin")) && linear_coefficient(*b.args[0])) {
      if (trig || s.factors[i].exponent != 1) return std::nullopt;
      trig = i;
    }
  }
  if (!trig) return std::nullopt;
  std::vector<Factor> rest = s.factors;
  rest.erase(rest.begin() + static_cast<long>(*trig));
  auto r = factors_to_qrat(s.coef, rest, Mode::Line);
  if (!r) return std::nullopt;
  const Expr& t = *s.factors[*trig].base;
  const bool cosine = t.text == "cos";
  mpq_class a = *linear_coefficient(*t.args[0]);
  if (a < 0) {
    a = -a;
    if (!cosine) *r = rmul(*r, rconst(-1));
  }
  if (!(a > 0)) invalid("FourierRational requires a > 0");
  if (degree(r->den) - degree(r->num) < 1) invalid("FourierRational requires deg Q >= deg P + 1");
  IntegralProblem p = base_problem(s, Family::FourierRational);
  if (s.bounds == BoundsKind::HalfLine) {
    if (cosine ? !is_even(*r) : !is_odd(*r)) {
      throw Error(ErrorCode::Unclassifiable, "half-line Fourier integrand is not even");
    }
    p.scale = mpq_class(1, 2);
  }
  p.kernel.rational = to_rational(*r);
  p.kernel.multiplier = Multiplier::ExpIaz;
  p.kernel.a = to_big(a);
  p.trig_part = cosine ? TrigPart::Cos : TrigPart::Sin;
  p.params["a"] = p.kernel.a;
  if (auto b = square_root_shift(*r)) p.params["b"] = *b;
  return p;
}

/// a and b of a factor 1/(a + b trig(kx)), when the integrand has one
void trig_params(const Shape& s, IntegralProblem& p) {
  for (const auto& f : s.factors) {
    if (f.exponent != -1 || f.base->kind != NodeKind::Add || f.base->args.size() != 2) continue;
    const Expr& c0 = *f.base->args[0];
    const Expr& t = *f.base->args[1];
    std::optional<mpq_class> a;
    if (c0.kind == NodeKind::Number) a = c0.value;
    if (c0.kind == NodeKind::Poly && c0.poly.size() == 1) a = c0.poly[0];
    if (!a) continue;
    mpq_class b = 1;
    const Expr* call = &t;
    if (t.kind == NodeKind::Mul && t.args.size() == 2 && t.args[0]->kind == NodeKind::Number) {
      b = t.args[0]->value;
      call = t.args[1].get();
    } else if (t.kind == NodeKind::Mul && t.args.size() == 2 && t.args[0]->kind == NodeKind::Poly &&
               t.args[0]->poly.size() == 1) {
      b = t.args[0]->poly[0];
      call = t.args[1].get();
    }
    if (!is_call(*call, "cos") && !is_call(*call, "sin")) continue;
    p.params["a"] = BigReal(*a);
    p.params["b"] = BigReal(b);
    p.trig_part = call->text == "cos" ? TrigPart::Cos : TrigPart::Sin;
    return;
  }
}

std::optional<IntegralProblem> match_trig(const Shape& s) {
  if (s.bounds != BoundsKind::ZeroToTwoPi) return std::nullopt;
  auto r = to_qrat(*s.source.integrand, Mode::Trig);
  if (!r) return std::nullopt;
  // d theta = dz / (i z)
  QRat f = rmul(*r, QRat{{QC{1, 0}}, {QC{}, QC{0, 1}}});
  IntegralProblem p = base_problem(s, Family::TrigUnitCircle);
  p.kernel.rational = to_rational(f);
  trig_params(s, p);
  return p;
}

std::optional<int> common_multiplicity(const RationalFunction& r) {
  if (r.den.degree() < 1) return std::nullopt;
  std::vector<Root> roots = find_roots(r.den);
  const int m = roots.front().multiplicity;
  for (const auto& root : roots)
    if (root.multiplicity != m) return std::nullopt;
  if (m < 2) return std::nullopt;
  return m;
}

std::optional<IntegralProblem> match_rational(const Shape& s) {
  if (s.bounds == BoundsKind::ZeroToTwoPi) return std::nullopt;
  auto r = to_qrat(*s.source.integrand, Mode::Line);
  if (!r) return std::nullopt;
  if (degree(r->den) - degree(r->num) < 2) invalid("RationalLine requires deg Q >= deg P + 2");
  IntegralProblem p = base_problem(s, Family::RationalLine);
  p.kernel.rational = to_rational(*r);
  if (s.bounds == BoundsKind::HalfLine) {
    if (is_even(*r)) {
      p.scale = mpq_class(1, 2);
    } else {
      p.kernel.multiplier = Multiplier::Log;
    }
  }
  if (auto n = common_multiplicity(p.kernel.rational)) p.params["n"] = BigReal(static_cast<long>(*n));
  return p;
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::RationalLine: return "RationalLine";
    case Family::FourierRational: return "FourierRational";
    case Family::TrigUnitCircle: return "TrigUnitCircle";
    case Family::KeyholePower: return "KeyholePower";
    case Family::ExpRectangle: return "ExpRectangle";
    case Family::GaussianShift: return "GaussianShift";
    case Family::SinhKernel: return "SinhKernel";
  }
  return "?";
}

std::string_view to_string(BoundsKind b) {
  switch (b) {
    case BoundsKind::FullLine: return "full-line";
    case BoundsKind::HalfLine: return "half-line";
    case BoundsKind::ZeroToTwoPi: return "zero-to-2pi";
  }
  return "?";
}

std::string_view to_string(TrigPart t) {
  switch (t) {
    case TrigPart::None: return "none";
    case TrigPart::Cos: return "cos";
    case TrigPart::Sin: return "sin";
  }
  return "?";
}

IntegralProblem classify(const Integral& integral) {
  Shape s;
  s.source = normalize(integral);
  const auto free = free_parameters(s.source.integrand, s.source.var);
  if (!free.empty()) invalid("unbound parameter '" + *free.begin() + "'");
  auto bounds = bounds_of(s.source);
  if (!bounds) {
    throw Error(ErrorCode::Unclassifiable, "bounds must be (-inf, inf), [0, inf) or [0, 2pi]");
  }
  s.bounds = *bounds;
  split_factors(s.source.integrand, s.coef, s.factors);
  if (s.coef == 0) throw Error(ErrorCode::Unclassifiable, "integrand is identically zero");
  using Matcher = std::optional<IntegralProblem> (*)(const Shape&);
  for (Matcher m : {match_sinh, match_gaussian, match_keyhole, match_exp_rectangle, match_fourier, match_trig,
                    match_rational}) {
    if (auto p = m(s)) return *p;
  }
  throw Error(ErrorCode::Unclassifiable, "integrand fits no contour family");
}

}  // namespace residua
