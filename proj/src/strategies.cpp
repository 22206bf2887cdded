#include "residua/strategies.hpp"

#include <cmath>
#include <sstream>

#include "residua/error.hpp"

namespace residua {

namespace {

BigComplex two_pi_i() { return {BigReal(0L), ldexp(BigReal::pi(), 1)}; }

std::string dec(const BigReal& x) { return x.to_string(25); }

void require(const IntegralProblem& p, Family f) {
  if (p.family != f) {
    throw Error(ErrorCode::InternalInconsistency,
                "strategy for " + std::string(to_string(f)) + " called on " + std::string(to_string(p.family)));
  }
}

/// Residues at the given poles, each cross-checked on a circle.
std::vector<ResidueRecord> residues_at(const Kernel& k, const std::vector<Pole>& poles) {
  std::vector<ResidueRecord> out;
  for (const auto& pole : poles) out.push_back(compute_residue(k, pole, true));
  return out;
}

BigComplex residue_sum(const std::vector<ResidueRecord>& rs) {
  BigComplex s;
  for (const auto& r : rs) s += r.value;
  return s;
}

std::vector<Pole> in_region(std::vector<Pole> poles, Region r) {
  std::erase_if(poles, [&](const Pole& p) { return p.region != r; });
  return poles;
}

BigReal scale_of(const IntegralProblem& p) { return BigReal(p.scale); }

/// Drops a certified-small imaginary part; anything bigger is a bug upstream.
ClosedValue project(const BigComplex& total, const IntegralProblem& p, std::vector<ResidueRecord> residues,
                    std::string note) {
  const BigReal limit = assembly_tol() * max(BigReal(1L), abs(total.re));
  if (abs(total.im) > limit) {
    throw Error(ErrorCode::InternalInconsistency,
                "assembled value has imaginary part " + total.im.to_string(6) + " above assembly tolerance");
  }
  ClosedValue v;
  v.value = round_to_working(total.re * scale_of(p));
  v.discarded_imag = total.im;
  v.residues = std::move(residues);
  v.formula_note = std::move(note);
  if (p.scale != 1) v.formula_note += "; halved by even symmetry";
  return v;
}

bool poly_is(const Polynomial& p, std::initializer_list<long> coeffs) {
  if (p.degree() + 1 != static_cast<int>(coeffs.size())) return false;
  int i = 0;
  for (long c : coeffs) {
    if (!(p.coeff(i) == BigComplex(c))) return false;
    ++i;
  }
  return true;
}

/// (z^2 + 1)^n with a constant numerator
std::optional<int> unit_quadratic_power(const RationalFunction& r) {
  if (r.num.degree() != 0 || r.den.degree() < 2 || r.den.degree() % 2 != 0) return std::nullopt;
  const int n = r.den.degree() / 2;
  Polynomial q(std::vector<BigComplex>{BigComplex(1L), BigComplex(0L), BigComplex(1L)});
  if (!(pow(q, n) == r.den)) return std::nullopt;
  return n;
}

std::string double_factorial_note(int n) {
  // (2n-3)!! / (2n-2)!! * pi/2
  mpz_class odd = 1, even = 1;
  for (int k = 2 * n - 3; k > 1; k -= 2) odd *= k;
  for (int k = 2 * n - 2; k > 1; k -= 2) even *= k;
  mpq_class c(odd, 2 * even);
  c.canonicalize();
  return "; (2n-3)!!/(2n-2)!! * pi/2 at n = " + std::to_string(n) + " gives " + c.get_str() + "*pi";
}

}  // namespace

ClosedValue eval_rational_line(const IntegralProblem& p) {
  require(p, Family::RationalLine);
  const Kernel& k = p.kernel;
  if (k.multiplier == Multiplier::Log) {
    auto rs = residues_at(k, classify_poles(k.rational, ContourKind::Keyhole));
    BigComplex total = -residue_sum(rs);
    return project(total, p, std::move(rs),
                   "-sum res R(z) log z over all poles, arg z in [0, 2pi) = " + dec(total.re));
  }
  auto rs = residues_at(k, in_region(classify_poles(k.rational, ContourKind::RealLine), Region::UpperHalfPlane));
  BigComplex total = two_pi_i() * residue_sum(rs);
  std::string note = "2*pi*i*sum res (upper half-plane) = " + dec(total.re);
  if (p.scale != 1) {
    if (auto n = unit_quadratic_power(k.rational); n && *n >= 2) note += double_factorial_note(*n);
  }
  return project(total, p, std::move(rs), std::move(note));
}

std::pair<ClosedValue, ClosedValue> eval_fourier_rational(const IntegralProblem& p) {
  require(p, Family::FourierRational);
  const Kernel& k = p.kernel;
  if (!(k.a.sign() > 0)) throw Error(ErrorCode::InvalidParams, "FourierRational requires a > 0");
  auto rs = residues_at(k, in_region(classify_poles(k.rational, ContourKind::RealLine), Region::UpperHalfPlane));
  const BigComplex total = two_pi_i() * residue_sum(rs);
  const std::string base = "2*pi*i*sum res e^{iaz} R(z) (upper half-plane) = " + total.to_string();
  ClosedValue c;
  c.value = round_to_working(total.re * scale_of(p));
  c.residues = rs;
  c.formula_note = base + "; cos part is the real part";
  ClosedValue s;
  s.value = round_to_working(total.im * scale_of(p));
  s.residues = std::move(rs);
  s.formula_note = base + "; sin part is the imaginary part";
  if (p.scale != 1) {
    c.formula_note += "; halved by even symmetry";
    s.formula_note += "; halved by even symmetry";
  }
  return {std::move(c), std::move(s)};
}

namespace {

/// c z/(z^2 + b^2) with a sin factor
std::optional<BigReal> derivative_shape(const IntegralProblem& p) {
  const RationalFunction& r = p.kernel.rational;
  if (p.family != Family::FourierRational || p.trig_part != TrigPart::Sin || !p.params.contains("b")) {
    return std::nullopt;
  }
  if (r.num.degree() != 1 || !r.num.coeff(0).is_zero() || !r.num.coeff(1).im.is_zero()) return std::nullopt;
  if (r.den.degree() != 2 || !r.den.coeff(1).is_zero() || !(r.den.coeff(2) == BigComplex(1L))) return std::nullopt;
  return r.num.coeff(1).re;
}

}  // namespace

ClosedValue eval_param_derivative(const IntegralProblem& p) {
  auto c = derivative_shape(p);
  if (!c) throw Error(ErrorCode::InvalidParams, "not of the form x sin(ax)/(x^2+b^2)");
  const BigReal& a = p.kernel.a;
  const BigReal& b = p.params.at("b");
  if (!(a.sign() > 0) || !(b.sign() > 0)) throw Error(ErrorCode::InvalidParams, "requires a > 0 and b > 0");
  // -d/da of the cos family pi e^{-ab}/b
  const BigReal closed = *c * BigReal::pi() * exp(-(a * b)) * scale_of(p);
  ClosedValue s = eval_fourier_rational(p).second;
  if (abs(s.value - closed) > assembly_tol() * max(BigReal(1L), abs(closed))) {
    throw Error(ErrorCode::InternalInconsistency, "d/da of the cos family disagrees with the residue sum");
  }
  s.value = round_to_working(closed);
  s.formula_note = "-d/da [pi e^{-ab}/b] = pi e^{-ab} = " + dec(s.value) +
                   ", matching 2*pi*i*sum res z e^{iaz}/(z^2+b^2); the variants (pi/b) e^{-ab} and pi e^{ab} "
                   "disagree with both";
  if (p.scale != 1) s.formula_note += "; halved by even symmetry";
  return s;
}

ClosedValue eval_trig_unit_circle(const IntegralProblem& p) {
  require(p, Family::TrigUnitCircle);
  auto rs = residues_at(p.kernel,
                        in_region(classify_poles(p.kernel.rational, ContourKind::UnitCircle), Region::InsideUnitDisk));
  BigComplex total = two_pi_i() * residue_sum(rs);
  std::string note = "z = e^{i theta}, d theta = dz/(iz): 2*pi*i*sum res (|z| < 1) = " + dec(total.re);
  if (p.params.contains("a") && p.params.contains("b")) {
    const BigReal& a = p.params.at("a");
    const BigReal& b = p.params.at("b");
    if (abs(a) > abs(b)) {
      BigReal f = ldexp(BigReal::pi(), 1) / sqrt(square(a) - square(b));
      if (abs(f - total.re) <= assembly_tol() * f) {
        note += "; equals 2*pi/sqrt(a^2-b^2) (the sqrt(a^2+b^2) form gives " +
                dec(ldexp(BigReal::pi(), 1) / sqrt(square(a) + square(b))) + " and is rejected)";
      }
    }
  }
  return project(total, p, std::move(rs), std::move(note));
}

ClosedValue eval_keyhole_power(const IntegralProblem& p) {
  require(p, Family::KeyholePower);
  const Kernel& k = p.kernel;
  if (!(k.a > -1L && k.a < 1L) || k.a.is_zero()) {
    throw Error(ErrorCode::InvalidParams, "KeyholePower requires -1 < a < 1, a != 0");
  }
  auto rs = residues_at(k, classify_poles(k.rational, ContourKind::Keyhole));
  const BigComplex factor = BigComplex(1L) - expi(ldexp(BigReal::pi(), 1) * k.a);
  BigComplex total = two_pi_i() * residue_sum(rs) / factor;
  std::string note = "(1 - e^{2 pi i a}) I = 2*pi*i*sum res z^a R(z), arg z in [0, 2pi): I = " + dec(total.re);
  if (poly_is(k.rational.num, {1}) && poly_is(k.rational.den, {1, 2, 1})) {
    note += "; equals pi*a/sin(pi*a) for the double pole of 1/(1+x)^2 at -1 (the (x^2+1)^2 denominator "
            "would give a different value)";
  }
  return project(total, p, std::move(rs), std::move(note));
}

ClosedValue eval_exp_rectangle(const IntegralProblem& p) {
  require(p, Family::ExpRectangle);
  const Kernel& k = p.kernel;
  if (!(k.a.sign() > 0 && k.a < 1L)) throw Error(ErrorCode::InvalidParams, "ExpRectangle requires 0 < a < 1");
  auto rs = residues_at(k, classify_poles(k.rational, ContourKind::ExpStrip));
  const BigComplex factor = BigComplex(1L) - expi(ldexp(BigReal::pi(), 1) * k.a);
  BigComplex total = two_pi_i() * residue_sum(rs) / factor;
  std::string note = "rectangle of height 2pi: (1 - e^{2 pi i a}) I = 2*pi*i*sum res e^{az} R(e^z) = " +
                     dec(total.re);
  if (poly_is(k.rational.num, {1}) && poly_is(k.rational.den, {1, 1})) note += "; equals pi/sin(pi*a)";
  return project(total, p, std::move(rs), std::move(note));
}

ClosedValue eval_gaussian_shift(const IntegralProblem& p) {
  require(p, Family::GaussianShift);
  const BigReal c = p.kernel.rational.num.coeff(0).re;
  const BigReal full = c * sqrt(BigReal::pi()) * exp(-square(p.kernel.b));
  return project(BigComplex(full), p, {},
                 "entire integrand, no residues: shifting the line to Im z = b gives sqrt(pi) e^{-b^2} = " +
                     dec(full));
}

namespace {

std::vector<Pole> sinh_points() {
  const BigReal pi = BigReal::pi();
  auto at = [](BigReal im, Region r) {
    Pole p;
    p.root.location = BigComplex(BigReal(0L), std::move(im));
    p.root.multiplicity = 1;
    p.root.residual = BigReal(0L);
    p.region = r;
    return p;
  };
  return {at(BigReal(0L), Region::OnContour), at(pi, Region::InsideStrip), at(ldexp(pi, 1), Region::OnContour)};
}

}  // namespace

ClosedValue eval_sinh_kernel(const IntegralProblem& p) {
  require(p, Family::SinhKernel);
  const Kernel& k = p.kernel;
  if (!(k.a.sign() > 0)) throw Error(ErrorCode::InvalidParams, "SinhKernel requires a > 0");
  auto rs = residues_at(k, sinh_points());
  const BigReal pi = BigReal::pi();
  // (1 - e^{-2 pi a}) PV = 2 pi i Res(i pi) + pi i (Res(0) + Res(2 pi i))
  const BigComplex half_i(BigReal(0L), pi);
  const BigComplex rhs = two_pi_i() * rs[1].value + half_i * (rs[0].value + rs[2].value);
  const BigComplex pv = rhs / BigComplex(BigReal(1L) - exp(-ldexp(pi, 1) * k.a));
  // PV of e^{iax}/sinh x is i times the sin integral
  const BigComplex total = pv / BigComplex::i();
  std::string note = "rectangle 0 <= Im z <= 2pi indented at 0 and 2pi i: PV = " + pv.to_string() +
                     " = i pi (1-e^{-a pi})/(1+e^{-a pi}), so the full line gives pi tanh(a pi/2) = " + dec(total.re);
  return project(total, p, std::move(rs), std::move(note));
}

ClosedValue evaluate(const IntegralProblem& p) {
  switch (p.family) {
    case Family::RationalLine:
      return eval_rational_line(p);
    case Family::FourierRational: {
      auto [c, s] = eval_fourier_rational(p);
      ClosedValue v = p.trig_part == TrigPart::Cos ? std::move(c) : std::move(s);
      const BigReal other = p.trig_part == TrigPart::Cos ? s.value : c.value;
      if (p.bounds == BoundsKind::FullLine) {
        v.companion = other;
        v.formula_note += std::string("; companion ") + (p.trig_part == TrigPart::Cos ? "sin" : "cos") +
                          " integral = " + dec(other);
      }
      if (derivative_shape(p)) {
        ClosedValue d = eval_param_derivative(p);
        v.value = d.value;
        v.formula_note += "; " + d.formula_note.substr(0, d.formula_note.find("; halved"));
      }
      return v;
    }
    case Family::TrigUnitCircle:
      return eval_trig_unit_circle(p);
    case Family::KeyholePower:
      return eval_keyhole_power(p);
    case Family::ExpRectangle:
      return eval_exp_rectangle(p);
    case Family::GaussianShift:
      return eval_gaussian_shift(p);
    case Family::SinhKernel:
      return eval_sinh_kernel(p);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown family");
}

std::vector<Pole> relevant_poles(const IntegralProblem& p) {
  const RationalFunction& r = p.kernel.rational;
  switch (p.family) {
    case Family::RationalLine:
      if (p.kernel.multiplier == Multiplier::Log) return classify_poles(r, ContourKind::Keyhole);
      return in_region(classify_poles(r, ContourKind::RealLine), Region::UpperHalfPlane);
    case Family::FourierRational:
      return in_region(classify_poles(r, ContourKind::RealLine), Region::UpperHalfPlane);
    case Family::TrigUnitCircle:
      return in_region(classify_poles(r, ContourKind::UnitCircle), Region::InsideUnitDisk);
    case Family::KeyholePower:
      return classify_poles(r, ContourKind::Keyhole);
    case Family::ExpRectangle:
      return classify_poles(r, ContourKind::ExpStrip);
    case Family::GaussianShift:
      return {};
    case Family::SinhKernel:
      return sinh_points();
  }
  return {};
}

OracleHint oracle_hint(const IntegralProblem& p) {
  OracleHint h;
  switch (p.family) {
    case Family::FourierRational:
      h.tail.kind = TailKind::Trig;
      h.tail.a = p.kernel.a;
      h.tail.phase = p.trig_part == TrigPart::Cos ? BigReal(1L) / 2L : BigReal(0L);
      break;
    case Family::ExpRectangle:
    case Family::GaussianShift:
    case Family::SinhKernel:
      h.tail.kind = TailKind::DecayingExp;
      break;
    case Family::KeyholePower:
      if (p.kernel.a.sign() < 0) h.endpoint_alpha = p.kernel.a;
      break;
    default:
      break;
  }
  return h;
}

std::string_view to_string(ContourPiece c) {
  switch (c) {
    case ContourPiece::Semicircle: return "semicircle";
    case ContourPiece::RectangleSide: return "rectangle-side";
    case ContourPiece::SmallIndent: return "small-indent";
  }
  return "?";
}

ContourPiece decay_piece(Family f) {
  switch (f) {
    case Family::ExpRectangle:
    case Family::GaussianShift:
    case Family::SinhKernel:
      return ContourPiece::RectangleSide;
    default:
      return ContourPiece::Semicircle;
  }
}

std::string DecayReport::csv() const {
  std::ostringstream os;
  os << "R,bound\n";
  for (const auto& r : rows) os << r.radius.to_string(20) << ',' << r.bound.to_string(20) << '\n';
  return os.str();
}

DecayReport arc_decay_check(const Kernel& k, ContourPiece piece, const std::vector<BigReal>& radii) {
  DecayReport rep;
  rep.piece = piece;
  rep.model = piece == ContourPiece::RectangleSide ? "exponential" : "power";
  const BigReal tol(1e-10);
  for (const auto& r : radii) {
    if (!(r.sign() > 0)) throw Error(ErrorCode::DomainError, "radii must be positive");
    QuadResult q;
    if (piece == ContourPiece::RectangleSide) {
      RealFn f = [&](const BigReal& y) { return abs(k.eval(BigComplex(r, y))); };
      q = quad_finite(f, BigReal(0L), ldexp(BigReal::pi(), 1), tol);
    } else {
      RealFn f = [&](const BigReal& t) { return abs(k.eval(BigComplex::polar(r, t))) * r; };
      q = quad_finite(f, BigReal(0L), BigReal::pi(), tol);
    }
    rep.rows.push_back({r, q.value});
  }
  // least squares in (x, log bound)
  std::vector<BigReal> xs, ys;
  for (const auto& row : rep.rows) {
    if (!(row.bound.sign() > 0)) continue;
    xs.push_back(piece == ContourPiece::RectangleSide ? row.radius : log(row.radius));
    ys.push_back(log(row.bound));
  }
  if (xs.size() < 2) {
    rep.exponent = BigReal::nan();
    return rep;
  }
  const long n = static_cast<long>(xs.size());
  BigReal sx(0L), sy(0L), sxx(0L), sxy(0L);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  rep.exponent = (sxy * n - sx * sy) / (sxx * n - sx * sx);
  return rep;
}

}  // namespace residua
