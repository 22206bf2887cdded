#include <algorithm>

#include "residua/error.hpp"
#include "residua/parser.hpp"

namespace residua {

namespace {

using QVec = std::vector<mpq_class>;

void trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QVec poly_add(QVec a, const QVec& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

QVec poly_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QVec poly_scale(QVec a, const mpq_class& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

mpq_class qpow(const mpq_class& b, long k) {
  if (k < 0) {
    if (b == 0) throw Error(ErrorCode::DomainError, "zero raised to a negative power");
    return qpow(1 / b, -k);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(k));
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

ExprPtr poly_or_number(QVec p) {
  trim(p);
  if (p.size() <= 1) return make_number(p.empty() ? mpq_class(0) : p[0]);
  return make_poly(std::move(p));
}

bool is_number(const ExprPtr& e, const mpq_class& v) { return e->kind == NodeKind::Number && e->value == v; }

bool hash_less(const ExprPtr& a, const ExprPtr& b) {
  const auto ha = structural_hash(*a);
  const auto hb = structural_hash(*b);
  return ha < hb;
}

class Normalizer {
 public:
  explicit Normalizer(std::string var) : var_(std::move(var)) {}

  ExprPtr run(const ExprPtr& e) {
    switch (e->kind) {
      case NodeKind::Number:
        return make_number(e->value);
      case NodeKind::Symbol:
        if (e->text == var_) return make_poly({mpq_class(0), mpq_class(1)});
        return make_symbol(e->text);
      case NodeKind::Poly:
        return poly_or_number(e->poly);
      case NodeKind::Neg:
        return mul({make_number(-1), run(e->args[0])});
      case NodeKind::Sub:
        return add({run(e->args[0]), mul({make_number(-1), run(e->args[1])})});
      case NodeKind::Add: {
        std::vector<ExprPtr> terms;
        for (const auto& a : e->args) terms.push_back(run(a));
        return add(std::move(terms));
      }
      case NodeKind::Mul: {
        std::vector<ExprPtr> factors;
        for (const auto& a : e->args) factors.push_back(run(a));
        return mul(std::move(factors));
      }
      case NodeKind::Div:
        return mul({run(e->args[0]), pow(run(e->args[1]), make_number(-1))});
      case NodeKind::Pow:
        return pow(run(e->args[0]), run(e->args[1]));
      case NodeKind::Call:
        return call(e->text, run(e->args[0]));
    }
    throw Error(ErrorCode::InternalInconsistency, "unknown node kind");
  }

 private:
  ExprPtr add(std::vector<ExprPtr> terms) {
    QVec p;
    std::vector<ExprPtr> others;
    std::vector<ExprPtr> stack(terms.rbegin(), terms.rend());
    while (!stack.empty()) {
      ExprPtr t = stack.back();
      stack.pop_back();
      if (t->kind == NodeKind::Add) {
        for (auto it = t->args.rbegin(); it != t->args.rend(); ++it) stack.push_back(*it);
      } else if (t->kind == NodeKind::Number) {
        p = poly_add(std::move(p), {t->value});
      } else if (t->kind == NodeKind::Poly) {
        p = poly_add(std::move(p), t->poly);
      } else {
        others.push_back(t);
      }
    }
    if (others.empty()) return poly_or_number(std::move(p));
    std::stable_sort(others.begin(), others.end(), hash_less);
    std::vector<ExprPtr> args;
    if (!p.empty()) args.push_back(poly_or_number(std::move(p)));
    for (auto& o : others) args.push_back(std::move(o));
    if (args.size() == 1) return args[0];
    return make_node(NodeKind::Add, std::move(args));
  }

  ExprPtr mul(std::vector<ExprPtr> factors) {
    mpq_class c(1);
    QVec q;
    bool have_poly = false;
    std::vector<ExprPtr> others;
    std::vector<ExprPtr> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
      ExprPtr f = stack.back();
      stack.pop_back();
      if (f->kind == NodeKind::Mul) {
        for (auto it = f->args.rbegin(); it != f->args.rend(); ++it) stack.push_back(*it);
      } else if (f->kind == NodeKind::Number) {
        c *= f->value;
      } else if (f->kind == NodeKind::Poly) {
        q = have_poly ? poly_mul(q, f->poly) : f->poly;
        have_poly = true;
      } else {
        others.push_back(f);
      }
    }
    if (c == 0 || (have_poly && q.empty())) return make_number(0);
    if (have_poly) {
      q = poly_scale(std::move(q), c);
      c = 1;
      ExprPtr pe = poly_or_number(std::move(q));
      if (pe->kind == NodeKind::Number) {
        c = pe->value;
      } else {
        others.push_back(pe);
      }
    }
    if (others.empty()) return make_number(c);
    std::stable_sort(others.begin(), others.end(), hash_less);
    std::vector<ExprPtr> args;
    if (c != 1) args.push_back(make_number(c));
    for (auto& o : others) args.push_back(std::move(o));
    if (args.size() == 1) return args[0];
    return make_node(NodeKind::Mul, std::move(args));
  }

  ExprPtr pow(const ExprPtr& base, const ExprPtr& ex) {
    if (ex->kind != NodeKind::Number) return make_node(NodeKind::Pow, {base, ex});
    const mpq_class& k = ex->value;
    if (k == 0) return make_number(1);
    if (k == 1) return base;
    const bool integral = k.get_den() == 1;
    if (integral && abs(k) > kMaxExponent) {
      throw Error(ErrorCode::DegreeTooHigh, "exponent magnitude exceeds " + std::to_string(kMaxExponent));
    }
    const long n = integral ? k.get_num().get_si() : 0;
    if (base->kind == NodeKind::Number) {
      if (!integral) throw Error(ErrorCode::DomainError, "non-integer power of a constant");
      return make_number(qpow(base->value, n));
    }
    if (base->kind == NodeKind::Poly && integral && n > 0) {
      if (static_cast<long>(base->poly.size() - 1) * n > kMaxPolyDegree) {
        throw Error(ErrorCode::DegreeTooHigh, "expanded polynomial degree exceeds " + std::to_string(kMaxPolyDegree));
      }
      QVec r{mpq_class(1)};
      for (long i = 0; i < n; ++i) r = poly_mul(r, base->poly);
      return poly_or_number(std::move(r));
    }
    if (base->kind == NodeKind::Pow && integral && base->args[1]->kind == NodeKind::Number) {
      return pow(base->args[0], make_number(base->args[1]->value * k));
    }
    return make_node(NodeKind::Pow, {base, ex});
  }

  static bool negative(const ExprPtr& e) {
    switch (e->kind) {
      case NodeKind::Number:
        return e->value < 0;
      case NodeKind::Poly:
        return !e->poly.empty() && e->poly.back() < 0;
      case NodeKind::Mul:
        for (const auto& a : e->args) {
          if (a->kind == NodeKind::Number) return a->value < 0;
          if (a->kind == NodeKind::Poly) return a->poly.back() < 0;
        }
        return false;
      default:
        return false;
    }
  }

  ExprPtr call(const std::string& fn, ExprPtr arg) {
    const bool zero = is_number(arg, 0);
    if (fn == "cos" || fn == "cosh") {
      if (zero) return make_number(1);
      if (negative(arg)) arg = mul({make_number(-1), arg});
      return make_call(fn, arg);
    }
    if (fn == "sin" || fn == "sinh") {
      if (zero) return make_number(0);
      if (negative(arg)) return mul({make_number(-1), make_call(fn, mul({make_number(-1), arg}))});
      return make_call(fn, arg);
    }
    if (fn == "exp") {
      if (zero) return make_number(1);
      return make_call(fn, arg);
    }
    if (fn == "ln") {
      if (is_number(arg, 1)) return make_number(0);
      return make_call(fn, arg);
    }
    if (fn == "sqrt") {
      if (arg->kind == NodeKind::Number && arg->value >= 0) {
        mpz_class n = arg->value.get_num();
        mpz_class d = arg->value.get_den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
          mpz_class rn, rd;
          mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
          mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
          return make_number(mpq_class(rn, rd));
        }
      }
      if (arg->kind == NodeKind::Poly && arg->poly.size() == 2 && arg->poly[0] == 0 && arg->poly[1] == 1) {
        return make_node(NodeKind::Pow, {arg, make_number(mpq_class(1, 2))});
      }
      return make_call(fn, arg);
    }
    throw Error(ErrorCode::DomainError, "unknown function " + fn);
  }

  std::string var_;
};

}  // namespace

ExprPtr normalize(const ExprPtr& e, const std::string& var) { return Normalizer(var).run(e); }

Integral normalize(const Integral& i) {
  Integral out = i;
  out.integrand = normalize(i.integrand, i.var);
  return out;
}

}  // namespace residua
