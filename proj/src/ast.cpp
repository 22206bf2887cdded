#include "residua/ast.hpp"

namespace residua {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

void mix(std::uint64_t& h, const std::string& s) {
  mix(h, s.data(), s.size());
  mix(h, "\0", 1);
}

void mix(std::uint64_t& h, const mpq_class& q) { mix(h, q.get_str()); }

}  // namespace

ExprPtr make_number(const mpq_class& v, std::string lexeme, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::Number;
  e->value = v;
  e->value.canonicalize();
  e->text = std::move(lexeme);
  e->offset = offset;
  return e;
}

ExprPtr make_symbol(std::string name, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::Symbol;
  e->text = std::move(name);
  e->offset = offset;
  return e;
}

ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> args, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = std::move(args);
  e->offset = offset;
  return e;
}

ExprPtr make_call(std::string fn, ExprPtr arg, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::Call;
  e->text = std::move(fn);
  e->args = {std::move(arg)};
  e->offset = offset;
  return e;
}

ExprPtr make_poly(std::vector<mpq_class> coeffs, std::size_t offset) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  auto e = std::make_shared<Expr>();
  e->kind = NodeKind::Poly;
  e->poly = std::move(coeffs);
  e->offset = offset;
  return e;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Number:
      return a.value == b.value;
    case NodeKind::Symbol:
      return a.text == b.text;
    case NodeKind::Poly:
      return a.poly == b.poly;
    case NodeKind::Call:
      if (a.text != b.text) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

bool equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

std::uint64_t structural_hash(const Expr& e) {
  std::uint64_t h = kFnvOffset;
  const auto kind = static_cast<unsigned char>(e.kind);
  mix(h, &kind, 1);
  switch (e.kind) {
    case NodeKind::Number:
      mix(h, e.value);
      break;
    case NodeKind::Symbol:
    case NodeKind::Call:
      mix(h, e.text);
      break;
    case NodeKind::Poly:
      for (const auto& c : e.poly) mix(h, c);
      break;
    default:
      break;
  }
  for (const auto& a : e.args) {
    const std::uint64_t sub = structural_hash(*a);
    mix(h, &sub, sizeof sub);
  }
  return h;
}

bool equal(const Integral& a, const Integral& b) {
  return a.lo == b.lo && a.hi == b.hi && a.var == b.var && equal(a.integrand, b.integrand);
}

}  // namespace residua
