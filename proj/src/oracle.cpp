#include "residua/oracle.hpp"

#include <array>
#include <algorithm>
#include <queue>

#include "residua/error.hpp"

namespace residua {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule, nonnegative half.
constexpr std::array<const char*, 8> kKronrodNodes = {
    "0",
    "2.0778495500789846760068940377324491347978440714517064971384573461986693844943520226910343227183698530560857645062738e-01",
    "4.0584515137739716690660641207696146334738201409937012638704325179466381322612565532831268972774658776528675866604802e-01",
    "5.8608723546769113029414483825872959843678075060436095130499289319880373607444407464511674498935942098956811555121368e-01",
    "7.4153118559939443986386477328078840707414764714139026011995535196742987467218051379282683236686324705969251809311201e-01",
    "8.6486442335976907278971278864092620121097230707408814860145771276706770813259572103585847859604590541475281326027862e-01",
    "9.4910791234275852452618968404785126240077093767061778354876910391306333035484014080573077002792572414430073966699522e-01",
    "9.9145537112081263920685469752632851664204433837033470129108741357244173934653407235924503509626841760744349505339308e-01",
};
constexpr std::array<const char*, 8> kKronrodWeights = {
    "2.0948214108472782801299917489171426369776208022370431671299800656137515132325648616816908211675949102392971459688215e-01",
    "2.0443294007529889241416199923464908471651760418071835742447095312045467698546598879348374292009347554167803659293064e-01",
    "1.9035057806478540991325640242101368282607807545535835588544088036744058072410212679605964605106377593834568683551139e-01",
    "1.6900472663926790282658342659855028410624490030294424149734006755695680921619029112936702403855359908156070095656537e-01",
    "1.4065325971552591874518959051023792039988975724799857556174546893312708093090950408097379122415555910759700350860143e-01",
    "1.0479001032225018383987632254151801744375665421383061189339065133963746321576289524167571627509311333949422518201492e-01",
    "6.3092092629978553290700663189204286665071157211550707113605545146983997477964874928199170264504441995865872491871943e-02",
    "2.2935322010529224963732008058969591993560811275746992267507430254711815787976075946156368168156289483493617134063245e-02",
};
// Gauss weights for Kronrod nodes 0, 2, 4, 6
constexpr std::array<const char*, 4> kGaussWeights = {
    "4.1795918367346938775510204081632653061224489795918367346938775510204081632653061224489795918367346938775510204081633e-01",
    "3.8183005050511894495036977548897513387836508353386273475108345103070554643412970834868465934404480145031467176458536e-01",
    "2.7970539148927666790146777142377958248692506522659876453701403269361881043056267681324094290119761876632337521337205e-01",
    "1.2948496616886969327061143267908201832858740225994666397720863872465523497204230871562541816292084508948440200163443e-01",
};

struct Rule {
  std::array<BigReal, 8> x;
  std::array<BigReal, 8> wk;
  std::array<BigReal, 4> wg;
};

const Rule& rule() {
  // one table per precision in use on this thread
  thread_local int cached_prec = 0;
  thread_local Rule r;
  if (cached_prec != working_precision()) {
    for (std::size_t i = 0; i < 8; ++i) {
      r.x[i] = BigReal::from_string(kKronrodNodes[i]);
      r.wk[i] = BigReal::from_string(kKronrodWeights[i]);
    }
    for (std::size_t i = 0; i < 4; ++i) r.wg[i] = BigReal::from_string(kGaussWeights[i]);
    cached_prec = working_precision();
  }
  return r;
}

struct Panel {
  BigReal lo;
  BigReal hi;
  BigReal value;
  BigReal err;
};

struct PanelLess {
  bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

Panel gauss_kronrod(const RealFn& f, const BigReal& lo, const BigReal& hi, long& evals) {
  const Rule& r = rule();
  const BigReal c = ldexp(lo + hi, -1);
  const BigReal h = ldexp(hi - lo, -1);
  const BigReal fc = f(c);
  BigReal k = fc * r.wk[0];
  BigReal g = fc * r.wg[0];
  for (std::size_t i = 1; i < 8; ++i) {
    const BigReal dx = h * r.x[i];
    const BigReal pair = f(c - dx) + f(c + dx);
    k += pair * r.wk[i];
    if (i % 2 == 0) g += pair * r.wg[i / 2];
  }
  evals += 15;
  k *= h;
  g *= h;
  return {lo, hi, k, abs(k - g)};
}

BigReal tolerance_for(const BigReal& tol, const BigReal& value) { return tol * max(BigReal(1L), abs(value)); }

QuadResult adaptive(const RealFn& f, const BigReal& lo, const BigReal& hi, const BigReal& tol) {
  QuadResult out;
  std::priority_queue<Panel, std::vector<Panel>, PanelLess> queue;
  Panel first = gauss_kronrod(f, lo, hi, out.n_evals);
  BigReal total = first.value;
  BigReal err = first.err;
  queue.push(std::move(first));
  int panels = 1;
  while (err > tolerance_for(tol, total)) {
    if (panels >= kMaxPanels) {
      throw Error(ErrorCode::MaxSubdivisions, "quadrature exceeded " + std::to_string(kMaxPanels) +
                                                  " panels (error estimate " + err.to_string(4) + ")");
    }
    Panel worst = queue.top();
    queue.pop();
    const BigReal mid = ldexp(worst.lo + worst.hi, -1);
    Panel left = gauss_kronrod(f, worst.lo, mid, out.n_evals);
    Panel right = gauss_kronrod(f, mid, worst.hi, out.n_evals);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++panels;
  }
  // fixed-order reduction keeps the digits independent of the refinement history
  std::vector<Panel> all;
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  out.value = BigReal(0L);
  out.abs_error_estimate = BigReal(0L);
  for (const auto& p : all) {
    out.value += p.value;
    out.abs_error_estimate += p.err;
  }
  out.converged = true;
  return out;
}

void accumulate(QuadResult& into, const QuadResult& part) {
  into.value += part.value;
  into.abs_error_estimate += part.abs_error_estimate;
  into.n_evals += part.n_evals;
}

struct Accelerated {
  BigReal value;
  BigReal err;
};

Accelerated aitken(std::vector<BigReal> s) {
  BigReal prev = s.back();
  BigReal cur = s.back();
  BigReal best_err = BigReal::infinity();
  while (s.size() >= 3) {
    std::vector<BigReal> t;
    for (std::size_t n = 0; n + 2 < s.size(); ++n) {
      BigReal d1 = s[n + 2] - s[n + 1];
      BigReal d2 = d1 - (s[n + 1] - s[n]);
      t.push_back(d2.is_zero() ? s[n + 2] : s[n + 2] - d1 * d1 / d2);
    }
    s = std::move(t);
    prev = cur;
    cur = s.back();
    BigReal e = abs(cur - prev);
    if (e < best_err) best_err = std::move(e);
  }
  return {cur, best_err};
}

Accelerated euler_average(std::vector<BigReal> s) {
  BigReal prev = s.back();
  while (s.size() >= 2) {
    std::vector<BigReal> t;
    for (std::size_t n = 0; n + 1 < s.size(); ++n) t.push_back(ldexp(s[n] + s[n + 1], -1));
    prev = s.back();
    s = std::move(t);
  }
  return {s.back(), abs(s.back() - prev)};
}

}  // namespace

QuadResult quad_finite(const RealFn& f, const BigReal& lo, const BigReal& hi, const BigReal& tol,
                       std::optional<BigReal> endpoint_alpha) {
  if (lo == hi) return {BigReal(0L), BigReal(0L), 0, true};
  if (hi < lo) {
    QuadResult r = quad_finite(f, hi, lo, tol, std::nullopt);
    r.value = -r.value;
    return r;
  }
  if (endpoint_alpha && endpoint_alpha->sign() != 0) {
    const BigReal& a = *endpoint_alpha;
    if (!(a > -1L)) throw Error(ErrorCode::DomainError, "endpoint exponent must exceed -1");
    const BigReal beta = BigReal(1L) / (a + 1L);
    const BigReal beta_m1 = beta - 1L;
    RealFn g = [&](const BigReal& u) { return f(lo + pow(u, beta)) * beta * pow(u, beta_m1); };
    return adaptive(g, BigReal(0L), pow(hi - lo, a + 1L), tol);
  }
  return adaptive(f, lo, hi, tol);
}

QuadResult quad_halfline(const RealFn& f, const BigReal& tol, const TailClass& tail, HalfLineMap map,
                         std::optional<BigReal> endpoint_alpha) {
  QuadResult out{BigReal(0L), BigReal(0L), 0, false};
  switch (tail.kind) {
    case TailKind::None: {
      if (map == HalfLineMap::Rational) {
        RealFn g = [&](const BigReal& t) {
          BigReal one_m = BigReal(1L) - t;
          return f(t / one_m) / square(one_m);
        };
        return quad_finite(g, BigReal(0L), BigReal(1L), tol, endpoint_alpha);
      }
      accumulate(out, quad_finite(f, BigReal(0L), BigReal(1L), tol, endpoint_alpha));
      RealFn g = [&](const BigReal& u) { return f(BigReal(1L) / u) / square(u); };
      accumulate(out, quad_finite(g, BigReal(0L), BigReal(1L), tol));
      out.converged = out.abs_error_estimate <= tolerance_for(tol, out.value) * 2L;
      return out;
    }
    case TailKind::DecayingExp: {
      const BigReal piece_tol = tol / 256L;
      BigReal lo(0L);
      BigReal width(1L);
      int quiet = 0;
      for (int k = 0; k < 4096; ++k) {
        BigReal hi = lo + width;
        QuadResult part = quad_finite(f, lo, hi, piece_tol, k == 0 ? endpoint_alpha : std::nullopt);
        const bool small = abs(part.value) <= ldexp(tol, -10) * max(BigReal(1L), abs(out.value));
        accumulate(out, part);
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 2 && hi >= 8L) {
          out.converged = out.abs_error_estimate <= tolerance_for(tol, out.value);
          return out;
        }
        lo = std::move(hi);
        if (map == HalfLineMap::Rational && k > 0) width = ldexp(width, 1);
        if (lo > ldexp(BigReal(1L), 20)) break;
      }
      throw Error(ErrorCode::TailDivergence, "integrand does not decay on [0, inf)");
    }
    case TailKind::Trig: {
      if (!(tail.a.sign() > 0)) throw Error(ErrorCode::DomainError, "trig tail needs a positive frequency");
      const BigReal pi = BigReal::pi();
      auto zero = [&](long k) { return (BigReal(k) + tail.phase) * pi / tail.a; };
      long k0 = 10;
      while (!(zero(k0) > 0L)) ++k0;
      const BigReal piece_tol = tol / 64L;
      accumulate(out, quad_finite(f, BigReal(0L), zero(k0), piece_tol, endpoint_alpha));
      std::vector<BigReal> partial;
      std::vector<BigReal> terms;
      BigReal s(0L);
      for (int j = 0; j < kTailTerms; ++j) {
        QuadResult part = quad_finite(f, zero(k0 + j), zero(k0 + j + 1), piece_tol);
        out.n_evals += part.n_evals;
        out.abs_error_estimate += part.abs_error_estimate;
        terms.push_back(part.value);
        s += part.value;
        partial.push_back(s);
      }
      if (abs(terms.back()) > abs(terms.front()) * 2L) {
        throw Error(ErrorCode::TailDivergence, "half-period integrals grow");
      }
      Accelerated acc = map == HalfLineMap::Rational ? aitken(partial) : euler_average(partial);
      out.value += acc.value;
      out.abs_error_estimate += acc.err;
      out.converged = out.abs_error_estimate <= tolerance_for(tol, out.value);
      if (!out.converged) {
        throw Error(ErrorCode::TailDivergence,
                    "accelerated tail did not settle (estimate " + acc.err.to_string(4) + ")");
      }
      return out;
    }
  }
  return out;
}

struct RealEvaluator::Node {
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, PowInt, PowReal, Poly, Cos, Sin, Exp, Sinh, Cosh, Ln, Sqrt };
  Op op = Op::Const;
  BigReal constant;
  long exponent = 0;
  std::vector<BigReal> coeffs;
  std::vector<std::unique_ptr<Node>> kids;
};

namespace {

using EvalNode = std::unique_ptr<RealEvaluator::Node>;

}  // namespace

static EvalNode compile(const Expr& e, const std::string& var) {
  using Op = RealEvaluator::Node::Op;
  auto n = std::make_unique<RealEvaluator::Node>();
  auto kid = [&](std::size_t i) { n->kids.push_back(compile(*e.args.at(i), var)); };
  switch (e.kind) {
    case NodeKind::Number:
      n->op = Op::Const;
      n->constant = BigReal(e.value);
      break;
    case NodeKind::Symbol:
      if (e.text != var) throw Error(ErrorCode::DomainError, "unbound symbol '" + e.text + "'");
      n->op = Op::Var;
      break;
    case NodeKind::Add:
    case NodeKind::Mul:
      n->op = e.kind == NodeKind::Add ? Op::Add : Op::Mul;
      for (std::size_t i = 0; i < e.args.size(); ++i) kid(i);
      break;
    case NodeKind::Sub:
      n->op = Op::Sub;
      kid(0);
      kid(1);
      break;
    case NodeKind::Div:
      n->op = Op::Div;
      kid(0);
      kid(1);
      break;
    case NodeKind::Neg:
      n->op = Op::Neg;
      kid(0);
      break;
    case NodeKind::Pow: {
      const Expr& ex = *e.args.at(1);
      kid(0);
      if (ex.kind == NodeKind::Number && ex.value.get_den() == 1 && ex.value.get_num().fits_slong_p()) {
        n->op = Op::PowInt;
        n->exponent = ex.value.get_num().get_si();
      } else {
        n->op = Op::PowReal;
        kid(1);
      }
      break;
    }
    case NodeKind::Poly:
      n->op = Op::Poly;
      for (const auto& c : e.poly) n->coeffs.emplace_back(c);
      break;
    case NodeKind::Call: {
      static const std::pair<const char*, Op> table[] = {{"cos", Op::Cos},   {"sin", Op::Sin},   {"exp", Op::Exp},
                                                         {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"ln", Op::Ln},
                                                         {"sqrt", Op::Sqrt}};
      bool found = false;
      for (const auto& [name, op] : table) {
        if (e.text == name) {
          n->op = op;
          found = true;
        }
      }
      if (!found) throw Error(ErrorCode::DomainError, "unknown function '" + e.text + "'");
      kid(0);
      break;
    }
  }
  return n;
}

static BigReal run(const RealEvaluator::Node& n, const BigReal& x) {
  using Op = RealEvaluator::Node::Op;
  switch (n.op) {
    case Op::Const:
      return n.constant;
    case Op::Var:
      return x;
    case Op::Add: {
      BigReal s = run(*n.kids[0], x);
      for (std::size_t i = 1; i < n.kids.size(); ++i) s += run(*n.kids[i], x);
      return s;
    }
    case Op::Mul: {
      BigReal s = run(*n.kids[0], x);
      for (std::size_t i = 1; i < n.kids.size(); ++i) s *= run(*n.kids[i], x);
      return s;
    }
    case Op::Sub:
      return run(*n.kids[0], x) - run(*n.kids[1], x);
    case Op::Div:
      return run(*n.kids[0], x) / run(*n.kids[1], x);
    case Op::Neg:
      return -run(*n.kids[0], x);
    case Op::PowInt:
      return pow(run(*n.kids[0], x), n.exponent);
    case Op::PowReal:
      return pow(run(*n.kids[0], x), run(*n.kids[1], x));
    case Op::Poly: {
      BigReal s(0L);
      for (std::size_t i = n.coeffs.size(); i-- > 0;) {
        s *= x;
        s += n.coeffs[i];
      }
      return s;
    }
    case Op::Cos:
      return cos(run(*n.kids[0], x));
    case Op::Sin:
      return sin(run(*n.kids[0], x));
    case Op::Exp:
      return exp(run(*n.kids[0], x));
    case Op::Sinh:
      return sinh(run(*n.kids[0], x));
    case Op::Cosh:
      return cosh(run(*n.kids[0], x));
    case Op::Ln:
      return log(run(*n.kids[0], x));
    case Op::Sqrt:
      return sqrt(run(*n.kids[0], x));
  }
  return BigReal::nan();
}

RealEvaluator::RealEvaluator(const ExprPtr& e, std::string var) : root_(compile(*e, var)), var_(std::move(var)) {}
RealEvaluator::~RealEvaluator() = default;
RealEvaluator::RealEvaluator(RealEvaluator&&) noexcept = default;

BigReal RealEvaluator::operator()(const BigReal& x) const {
  BigReal v = run(*root_, x);
  if (!v.is_finite()) {
    throw Error(ErrorCode::DomainError, "integrand is not finite at " + var_ + " = " + x.to_string(20));
  }
  return v;
}

namespace {

BigReal bound_value(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::Pi:
      return BigReal::pi();
    case Bound::Kind::TwoPi:
      return ldexp(BigReal::pi(), 1);
    case Bound::Kind::Finite:
      return BigReal(b.value);
    default:
      throw Error(ErrorCode::InternalInconsistency, "infinite bound has no value");
  }
}

bool infinite(const Bound& b) { return b.kind == Bound::Kind::NegInf || b.kind == Bound::Kind::PosInf; }

BigReal wrap_phase(const BigReal& p) { return p - floor(p); }

}  // namespace

QuadResult oracle_integrate(const Integral& integral, const OracleHint& hint, const BigReal& tol, HalfLineMap map) {
  PrecisionScope scope(std::min(2 * working_precision(), kMaxPrecision));
  const BigReal t(tol);
  RealEvaluator f(integral.integrand, integral.var);
  const Bound& lo = integral.lo;
  const Bound& hi = integral.hi;
  TailClass tail = hint.tail;
  std::optional<BigReal> alpha;
  if (hint.endpoint_alpha) alpha = BigReal(*hint.endpoint_alpha);

  if (!infinite(lo) && !infinite(hi)) {
    RealFn g = [&](const BigReal& x) { return f(x); };
    return quad_finite(g, bound_value(lo), bound_value(hi), t, alpha);
  }
  if (!infinite(lo) && hi.kind == Bound::Kind::PosInf) {
    const BigReal a = bound_value(lo);
    RealFn g = [&](const BigReal& s) { return f(a + s); };
    if (tail.kind == TailKind::Trig) tail.phase = wrap_phase(tail.phase - tail.a * a / BigReal::pi());
    return quad_halfline(g, t, tail, map, alpha);
  }
  if (lo.kind == Bound::Kind::NegInf && !infinite(hi)) {
    const BigReal b = bound_value(hi);
    RealFn g = [&](const BigReal& s) { return f(b - s); };
    if (tail.kind == TailKind::Trig) tail.phase = wrap_phase(tail.a * b / BigReal::pi() - tail.phase);
    return quad_halfline(g, t, tail, map);
  }
  if (lo.kind == Bound::Kind::NegInf && hi.kind == Bound::Kind::PosInf) {
    RealFn g = [&](const BigReal& s) { return f(s) + f(-s); };
    return quad_halfline(g, t, tail, map);
  }
  if (lo.kind == Bound::Kind::PosInf && hi.kind == Bound::Kind::NegInf) {
    RealFn g = [&](const BigReal& s) { return f(s) + f(-s); };
    QuadResult r = quad_halfline(g, t, tail, map);
    r.value = -r.value;
    return r;
  }
  // reversed half-lines
  Integral flipped = integral;
  std::swap(flipped.lo, flipped.hi);
  PrecisionScope back(working_precision() / 2);
  QuadResult r = oracle_integrate(flipped, hint, tol, map);
  r.value = -r.value;
  return r;
}

Verdict verify(const BigReal& closed, const QuadResult& oracle, const BigReal& rel_tol) {
  Verdict v;
  v.oracle = oracle.value;
  v.gap = abs(closed - oracle.value);
  if (!oracle.converged) {
    v.pass = false;
    v.note = "oracle did not converge";
    return v;
  }
  v.pass = v.gap <= rel_tol * max(BigReal(1L), abs(oracle.value));
  v.note = v.pass ? "agrees within tolerance" : "closed form and oracle disagree";
  return v;
}

}  // namespace residua
