#include "residua/error.hpp"
#include "residua/parser.hpp"

namespace residua {

namespace {

// binding strength of rendered text: sum < product < unary minus < power < atom
constexpr int kSum = 1;
constexpr int kProduct = 2;
constexpr int kUnary = 3;
constexpr int kPower = 4;
constexpr int kAtom = 5;

struct Text {
  std::string s;
  int prec;
};

std::string wrap(const Text& t, int min_prec) { return t.prec < min_prec ? "(" + t.s + ")" : t.s; }

std::string decimal(const mpq_class& q) {
  mpz_class num = abs(q.get_num());
  mpz_class den = q.get_den();
  long shift = 0;
  while (den != 1 && shift < 400) {
    num *= 10;
    ++shift;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num /= g;
    den /= g;
  }
  if (den != 1) throw Error(ErrorCode::DomainError, "bound is not a terminating decimal");
  std::string digits = num.get_str();
  if (shift > 0) {
    const auto s = static_cast<std::size_t>(shift);
    if (digits.size() <= s) digits.insert(0, s - digits.size() + 1, '0');
    digits.insert(digits.size() - s, ".");
  }
  return (q < 0 ? "-" : "") + digits;
}

Text number_text(const mpq_class& q) {
  if (q < 0) return {q.get_str(), kSum};
  if (q.get_den() != 1) return {q.get_str(), kProduct};
  return {q.get_str(), kAtom};
}

bool is_raw_tree(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Poly:
      return false;
    case NodeKind::Number:
      return !e.text.empty();
    case NodeKind::Add:
    case NodeKind::Mul:
      if (e.args.size() != 2) return false;
      break;
    default:
      break;
  }
  for (const auto& a : e.args) {
    if (!is_raw_tree(*a)) return false;
  }
  return true;
}

Text raw(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Number:
      return {e.text, kAtom};
    case NodeKind::Symbol:
      return {e.text, kAtom};
    case NodeKind::Call:
      return {e.text + "(" + raw(*e.args[0]).s + ")", kAtom};
    case NodeKind::Neg:
      return {"-" + wrap(raw(*e.args[0]), kUnary), kUnary};
    case NodeKind::Pow:
      return {wrap(raw(*e.args[0]), kAtom) + "^" + wrap(raw(*e.args[1]), kUnary), kPower};
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const bool sum = e.kind == NodeKind::Add || e.kind == NodeKind::Sub;
      const int prec = sum ? kSum : kProduct;
      const char* op = e.kind == NodeKind::Add   ? " + "
                       : e.kind == NodeKind::Sub ? " - "
                       : e.kind == NodeKind::Mul ? "*"
                                                 : "/";
      return {wrap(raw(*e.args[0]), prec) + op + wrap(raw(*e.args[1]), prec + 1), prec};
    }
    case NodeKind::Poly:
      break;
  }
  throw Error(ErrorCode::InternalInconsistency, "unexpected node in a parse tree");
}

class Normal {
 public:
  explicit Normal(const std::string& var) : var_(var) {}

  Text run(const Expr& e) const {
    switch (e.kind) {
      case NodeKind::Number:
        return number_text(e.value);
      case NodeKind::Symbol:
        return {e.text, kAtom};
      case NodeKind::Poly:
        return poly(e.poly);
      case NodeKind::Call:
        return {e.text + "(" + run(*e.args[0]).s + ")", kAtom};
      case NodeKind::Pow:
        return power(e);
      case NodeKind::Add:
        return sum(e);
      case NodeKind::Mul:
        return product(e);
      case NodeKind::Neg:
        return {"-" + wrap(run(*e.args[0]), kUnary), kUnary};
      case NodeKind::Sub:
        return {wrap(run(*e.args[0]), kSum) + " - " + wrap(run(*e.args[1]), kProduct), kSum};
      case NodeKind::Div:
        return {wrap(run(*e.args[0]), kProduct) + "/" + wrap(run(*e.args[1]), kUnary), kProduct};
    }
    return {"?", kAtom};
  }

 private:
  std::string monomial(const mpq_class& c, std::size_t k) const {
    if (k == 0) return c.get_str();
    std::string x = k == 1 ? var_ : var_ + "^" + std::to_string(k);
    if (c == 1) return x;
    return c.get_str() + "*" + x;
  }

  Text poly(const std::vector<mpq_class>& p) const {
    std::string out;
    int terms = 0;
    bool lead_negative = false;
    std::size_t lead_k = 0;
    for (std::size_t k = p.size(); k-- > 0;) {
      if (p[k] == 0) continue;
      const bool neg = p[k] < 0;
      const mpq_class mag = abs(p[k]);
      if (terms == 0) {
        lead_negative = neg;
        lead_k = k;
        out += (neg ? "-" : "") + monomial(mag, k);
      } else {
        out += (neg ? " - " : " + ") + monomial(mag, k);
      }
      ++terms;
    }
    if (terms == 0) return {"0", kAtom};
    if (terms > 1 || lead_negative) return {out, kSum};
    if (lead_k == 0) return number_text(p[0]);
    if (p[lead_k] != 1) return {out, kProduct};
    return {out, lead_k == 1 ? kAtom : kPower};
  }

  Text power(const Expr& e) const {
    const Expr& ex = *e.args[1];
    const std::string base = wrap(run(*e.args[0]), kAtom);
    if (ex.kind == NodeKind::Number && ex.value == -1) return {"1/" + base, kProduct};
    const bool plain = ex.kind == NodeKind::Number && ex.value >= 0 && ex.value.get_den() == 1;
    return {base + "^" + (plain ? ex.value.get_str() : "(" + run(ex).s + ")"), kPower};
  }

  static ExprPtr without_sign(const Expr& t) {
    if (t.kind == NodeKind::Number && t.value < 0) return make_number(-t.value);
    if (t.kind == NodeKind::Poly && !t.poly.empty() && t.poly.back() < 0) {
      std::vector<mpq_class> p = t.poly;
      for (auto& c : p) c = -c;
      return make_poly(std::move(p));
    }
    if (t.kind == NodeKind::Mul && t.args[0]->kind == NodeKind::Number && t.args[0]->value < 0) {
      auto copy = std::make_shared<Expr>(t);
      if (t.args[0]->value == -1) {
        copy->args.erase(copy->args.begin());
        if (copy->args.size() == 1) return copy->args[0];
      } else {
        copy->args[0] = make_number(-t.args[0]->value);
      }
      return copy;
    }
    return nullptr;
  }

  Text sum(const Expr& e) const {
    std::string out = run(*e.args[0]).s;
    for (std::size_t i = 1; i < e.args.size(); ++i) {
      const Expr& t = *e.args[i];
      if (ExprPtr pos = without_sign(t)) {
        out += " - " + wrap(run(*pos), kProduct);
      } else {
        out += " + " + wrap(run(t), kProduct);
      }
    }
    return {out, kSum};
  }

  Text product(const Expr& e) const {
    std::string numer;
    std::string denom;
    bool negative = false;
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      const Expr& f = *e.args[i];
      if (i == 0 && f.kind == NodeKind::Number) {
        mpq_class c = f.value;
        if (c < 0) {
          negative = true;
          c = -c;
        }
        if (c != 1) numer = c.get_str();
        continue;
      }
      if (f.kind == NodeKind::Pow && f.args[1]->kind == NodeKind::Number && f.args[1]->value == -1) {
        denom += "/" + wrap(run(*f.args[0]), kAtom);
        continue;
      }
      numer += (numer.empty() ? "" : "*") + wrap(run(f), kUnary);
    }
    if (numer.empty()) numer = "1";
    return {(negative ? "-" : "") + numer + denom, negative ? kSum : kProduct};
  }

  const std::string& var_;
};

}  // namespace

std::string render(const ExprPtr& e, const std::string& var) {
  if (is_raw_tree(*e)) return raw(*e).s;
  return Normal(var).run(*e).s;
}

std::string render(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::NegInf: return "-inf";
    case Bound::Kind::PosInf: return "inf";
    case Bound::Kind::Pi: return "pi";
    case Bound::Kind::TwoPi: return "2pi";
    case Bound::Kind::Finite: return decimal(b.value);
  }
  return "?";
}

std::string render(const Integral& i) {
  return "int " + render(i.lo) + " " + render(i.hi) + " " + render(i.integrand, i.var) + " d" + i.var;
}

}  // namespace residua
