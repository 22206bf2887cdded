#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace residua {

enum class NodeKind {
  Number,
  Symbol,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,
  Call,
  /// polynomial in the integration variable, exact rational coefficients (normalized trees only)
  Poly,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind = NodeKind::Number;
  mpq_class value;
  /// symbol or function name; for raw numbers the source lexeme
  std::string text;
  std::vector<ExprPtr> args;
  /// ascending coefficients, trailing entry nonzero
  std::vector<mpq_class> poly;
  /// byte offset in the source, not part of equality
  std::size_t offset = 0;
};

ExprPtr make_number(const mpq_class& v, std::string lexeme = {}, std::size_t offset = 0);
ExprPtr make_symbol(std::string name, std::size_t offset = 0);
ExprPtr make_node(NodeKind kind, std::vector<ExprPtr> args, std::size_t offset = 0);
ExprPtr make_call(std::string fn, ExprPtr arg, std::size_t offset = 0);
ExprPtr make_poly(std::vector<mpq_class> coeffs, std::size_t offset = 0);

bool equal(const Expr& a, const Expr& b);
bool equal(const ExprPtr& a, const ExprPtr& b);
/// FNV-1a over the structure; stable across runs.
std::uint64_t structural_hash(const Expr& e);

struct Bound {
  enum class Kind { NegInf, PosInf, Pi, TwoPi, Finite };
  Kind kind = Kind::Finite;
  mpq_class value;

  friend bool operator==(const Bound& a, const Bound& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
};

struct Integral {
  Bound lo;
  Bound hi;
  ExprPtr integrand;
  std::string var;
};

bool equal(const Integral& a, const Integral& b);

inline bool is_function_name(const std::string& s) {
  return s == "cos" || s == "sin" || s == "exp" || s == "sinh" || s == "cosh" || s == "ln" || s == "sqrt";
}

}  // namespace residua
