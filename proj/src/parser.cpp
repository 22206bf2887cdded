#include <cctype>
#include <cstdio>
#include <optional>

#include "residua/error.hpp"
#include "residua/parser.hpp"

namespace residua {

namespace {

enum class Tok { Number, Ident, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t offset = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return {};
  return t.text;
}

std::string printable(unsigned char ch) {
  if (ch >= 0x20 && ch < 0x7f) return std::string(1, static_cast<char>(ch));
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02X", ch);
  return buf;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && is_digit(s[i])) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && is_digit(s[j])) {
          while (j < s.size() && is_digit(s[j])) ++j;
          i = j;
        }
      }
      if (i - start > kMaxLiteralChars) {
        throw ParseError(start, {}, std::string(s.substr(start, 16)) + "...", ErrorCode::ParseError,
                         "numeric literal longer than " + std::to_string(kMaxLiteralChars) + " characters");
      }
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < s.size() && is_ident_char(s[i])) ++i;
      if (i - start > 64) {
        throw ParseError(start, {}, std::string(s.substr(start, 16)) + "...", ErrorCode::ParseError,
                         "identifier longer than 64 characters");
      }
      out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^' || c == '(' || c == ')') {
      out.push_back({Tok::Op, std::string(1, c), start});
      ++i;
      continue;
    }
    throw ParseError(start, {"number", "identifier", "operator"}, printable(static_cast<unsigned char>(c)));
  }
  out.push_back({Tok::End, {}, s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Integral integral() {
    Integral out;
    expect_ident("int");
    out.lo = bound();
    out.hi = bound();
    out.integrand = expression();
    const Token& d = peek();
    if (d.kind != Tok::Ident || d.text[0] != 'd') fail({"operator", "d<variable>"});
    if (d.text == "d") {
      advance();
      const Token& v = peek();
      if (v.kind != Tok::Ident) fail({"variable name"});
      out.var = v.text;
      advance();
    } else {
      out.var = d.text.substr(1);
      advance();
    }
    if (is_function_name(out.var) || out.var == "pi" || out.var == "inf" || out.var == "int") {
      throw ParseError(tokens_[pos_ - 1].offset, {"variable name"}, out.var);
    }
    if (peek().kind != Tok::End) fail({"end of input"});
    return out;
  }

  ExprPtr bare_expression() {
    ExprPtr e = expression();
    if (peek().kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }
  bool is_op(char c) const { return peek().kind == Tok::Op && peek().text[0] == c; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().offset, std::move(expected), describe(peek()));
  }

  void expect_ident(const char* name) {
    if (peek().kind != Tok::Ident || peek().text != name) fail({std::string("'") + name + "'"});
    advance();
  }

  void expect_op(char c) {
    if (!is_op(c)) fail({std::string("'") + c + "'", "operator"});
    advance();
  }

  Bound bound() {
    Bound b;
    const Token& t = peek();
    if (t.kind == Tok::Op && t.text == "-") {
      advance();
      const Token& u = peek();
      if (u.kind == Tok::Ident && u.text == "inf") {
        advance();
        b.kind = Bound::Kind::NegInf;
        return b;
      }
      if (u.kind == Tok::Number) {
        b.value = -literal(u);
        advance();
        return b;
      }
      fail({"inf", "number"});
    }
    if (t.kind == Tok::Ident && t.text == "inf") {
      advance();
      b.kind = Bound::Kind::PosInf;
      return b;
    }
    if (t.kind == Tok::Ident && t.text == "pi") {
      advance();
      b.kind = Bound::Kind::Pi;
      return b;
    }
    if (t.kind == Tok::Number) {
      const Token& next = tokens_[pos_ + 1];
      if (t.text == "2" && next.kind == Tok::Ident && next.text == "pi" && next.offset == t.offset + 1) {
        advance();
        advance();
        b.kind = Bound::Kind::TwoPi;
        return b;
      }
      b.value = literal(t);
      advance();
      return b;
    }
    fail({"inf", "-inf", "pi", "2pi", "number"});
  }

  mpq_class literal(const Token& t) const {
    try {
      return parse_decimal(t.text);
    } catch (const ParseError& e) {
      throw ParseError(t.offset, {}, t.text, ErrorCode::ParseError, e.what());
    }
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) {
        throw ParseError(p.peek().offset, {}, describe(p.peek()), ErrorCode::ParseError,
                         "nesting deeper than " + std::to_string(kMaxNesting));
      }
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr expression() {
    ExprPtr left = term();
    while (is_op('+') || is_op('-')) {
      const std::size_t at = peek().offset;
      const NodeKind k = is_op('+') ? NodeKind::Add : NodeKind::Sub;
      advance();
      left = make_node(k, {left, term()}, at);
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (is_op('*') || is_op('/')) {
      const std::size_t at = peek().offset;
      const NodeKind k = is_op('*') ? NodeKind::Mul : NodeKind::Div;
      advance();
      left = make_node(k, {left, unary()}, at);
    }
    return left;
  }

  ExprPtr unary() {
    DepthGuard guard(*this);
    if (is_op('-')) {
      const std::size_t at = peek().offset;
      advance();
      return make_node(NodeKind::Neg, {unary()}, at);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (is_op('^')) {
      const std::size_t at = peek().offset;
      advance();
      return make_node(NodeKind::Pow, {base, unary()}, at);
    }
    return base;
  }

  ExprPtr primary() {
    const Token t = peek();
    if (t.kind == Tok::Number) {
      advance();
      return make_number(literal(t), t.text, t.offset);
    }
    if (t.kind == Tok::Ident) {
      if (is_function_name(t.text)) {
        advance();
        expect_op('(');
        ExprPtr arg = expression();
        expect_op(')');
        return make_call(t.text, arg, t.offset);
      }
      if (t.text == "pi" || t.text == "inf" || t.text == "int") {
        throw ParseError(t.offset, {"number", "identifier", "("}, t.text, ErrorCode::ParseError,
                         "'" + t.text + "' is only valid as an integration bound");
      }
      advance();
      return make_symbol(t.text, t.offset);
    }
    if (t.kind == Tok::Op && t.text == "(") {
      advance();
      DepthGuard guard(*this);
      ExprPtr inner = expression();
      expect_op(')');
      return inner;
    }
    fail({"number", "identifier", "(", "-"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

void check_size(std::string_view text) {
  if (text.size() > kMaxInputBytes) {
    throw ParseError(kMaxInputBytes, {}, {}, ErrorCode::ParseError,
                     "input exceeds " + std::to_string(kMaxInputBytes / 1024) + " KiB");
  }
}

bool mentions(const Expr& e, const std::string& var) {
  if (e.kind == NodeKind::Poly) return e.poly.size() > 1;
  if (e.kind == NodeKind::Symbol) return e.text == var;
  for (const auto& a : e.args) {
    if (mentions(*a, var)) return true;
  }
  return false;
}

std::optional<mpq_class> constant_value(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Number:
      return e.value;
    case NodeKind::Neg: {
      auto v = constant_value(*e.args[0]);
      if (v) return -*v;
      return std::nullopt;
    }
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      std::optional<mpq_class> acc;
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        auto v = constant_value(*e.args[i]);
        if (!v) return std::nullopt;
        if (i == 0) {
          acc = *v;
        } else if (e.kind == NodeKind::Add) {
          *acc += *v;
        } else if (e.kind == NodeKind::Sub) {
          *acc -= *v;
        } else if (e.kind == NodeKind::Mul) {
          *acc *= *v;
        } else {
          if (*v == 0) return std::nullopt;
          *acc /= *v;
        }
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

bool is_bare_var(const Expr& e, const std::string& var) {
  if (e.kind == NodeKind::Symbol) return e.text == var;
  return e.kind == NodeKind::Poly && e.poly.size() == 2 && e.poly[0] == 0 && e.poly[1] == 1;
}

struct Degree {
  long num = 0;
  long den = 0;
};

constexpr long kDegreeCap = 1L << 20;

long cap(long v) { return v > kDegreeCap ? kDegreeCap : v; }

Degree degree_bound(const Expr& e, const std::string& var) {
  auto check = [&](const Degree& d, std::size_t offset) {
    if (d.num > kMaxPolyDegree || d.den > kMaxPolyDegree) {
      throw ParseError(offset, {}, {}, ErrorCode::DegreeTooHigh,
                       "polynomial degree " + std::to_string(std::max(d.num, d.den)) + " exceeds " +
                           std::to_string(kMaxPolyDegree));
    }
    return d;
  };
  switch (e.kind) {
    case NodeKind::Number:
      return {};
    case NodeKind::Symbol:
      return {e.text == var ? 1 : 0, 0};
    case NodeKind::Poly:
      return check({static_cast<long>(e.poly.size()) - 1 > 0 ? static_cast<long>(e.poly.size()) - 1 : 0, 0},
                   e.offset);
    case NodeKind::Neg:
      return degree_bound(*e.args[0], var);
    case NodeKind::Call:
      degree_bound(*e.args[0], var);
      return {};
    case NodeKind::Add:
    case NodeKind::Sub: {
      Degree acc = degree_bound(*e.args[0], var);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        Degree d = degree_bound(*e.args[i], var);
        acc = check({cap(std::max(acc.num + d.den, d.num + acc.den)), cap(acc.den + d.den)}, e.offset);
      }
      return acc;
    }
    case NodeKind::Mul: {
      Degree acc;
      for (const auto& a : e.args) {
        Degree d = degree_bound(*a, var);
        acc = check({cap(acc.num + d.num), cap(acc.den + d.den)}, e.offset);
      }
      return acc;
    }
    case NodeKind::Div: {
      Degree a = degree_bound(*e.args[0], var);
      Degree b = degree_bound(*e.args[1], var);
      return check({cap(a.num + b.den), cap(a.den + b.num)}, e.offset);
    }
    case NodeKind::Pow: {
      Degree b = degree_bound(*e.args[0], var);
      degree_bound(*e.args[1], var);
      auto k = constant_value(*e.args[1]);
      if (!k || k->get_den() != 1) return {};
      long n = k->get_num().get_si();
      Degree d = n >= 0 ? Degree{cap(b.num * n), cap(b.den * n)} : Degree{cap(b.den * -n), cap(b.num * -n)};
      return check(d, e.offset);
    }
  }
  return {};
}

void validate_node(const Expr& e, const std::string& var) {
  for (const auto& a : e.args) validate_node(*a, var);
  if (e.kind != NodeKind::Pow) return;
  const Expr& base = *e.args[0];
  const Expr& ex = *e.args[1];
  if (mentions(ex, var)) {
    throw ParseError(ex.offset, {}, {}, ErrorCode::ParseError, "exponent may not depend on " + var);
  }
  auto k = constant_value(ex);
  if (!k) return;
  if (abs(*k) > kMaxExponent) {
    throw ParseError(ex.offset, {}, {}, ErrorCode::DegreeTooHigh,
                     "exponent magnitude exceeds " + std::to_string(kMaxExponent));
  }
  if (k->get_den() != 1 && !is_bare_var(base, var)) {
    throw ParseError(ex.offset, {}, {}, ErrorCode::ParseError,
                     "a non-integer exponent needs the bare variable " + var + " as its base");
  }
}

ExprPtr substitute_impl(const ExprPtr& e, const std::map<std::string, mpq_class>& values) {
  if (e->kind == NodeKind::Symbol) {
    auto it = values.find(e->text);
    if (it != values.end()) return make_number(it->second, {}, e->offset);
    return e;
  }
  if (e->args.empty()) return e;
  auto copy = std::make_shared<Expr>(*e);
  for (auto& a : copy->args) a = substitute_impl(a, values);
  return copy;
}

void collect_symbols(const Expr& e, const std::string& var, std::set<std::string>& out) {
  if (e.kind == NodeKind::Symbol && e.text != var) out.insert(e.text);
  for (const auto& a : e.args) collect_symbols(*a, var, out);
}

}  // namespace

mpq_class parse_decimal(std::string_view text) {
  std::size_t i = 0;
  std::string digits;
  long frac = 0;
  bool any = false;
  while (i < text.size() && is_digit(text[i])) {
    digits += text[i++];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      digits += text[i++];
      ++frac;
      any = true;
    }
  }
  if (!any) throw ParseError(0, {"number"}, std::string(text));
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    if (i >= text.size() || !is_digit(text[i])) throw ParseError(i, {"digit"}, std::string(text));
    while (i < text.size() && is_digit(text[i])) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > kMaxLiteralExponent) {
        throw ParseError(0, {}, std::string(text), ErrorCode::ParseError,
                         "literal exponent beyond +-" + std::to_string(kMaxLiteralExponent));
      }
    }
    if (neg) exponent = -exponent;
  }
  if (i != text.size()) throw ParseError(i, {"digit"}, std::string(text));
  mpz_class mant(digits, 10);
  const long shift = exponent - frac;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift >= 0 ? mpq_class(mant * scale) : mpq_class(mant, scale);
  q.canonicalize();
  return q;
}

Integral parse(std::string_view text) {
  check_size(text);
  Parser p(text);
  Integral out = p.integral();
  validate(out.integrand, out.var);
  return out;
}

ExprPtr parse_expression(std::string_view text, const std::string& var) {
  check_size(text);
  Parser p(text);
  ExprPtr e = p.bare_expression();
  validate(e, var);
  return e;
}

void validate(const ExprPtr& e, const std::string& var) {
  validate_node(*e, var);
  degree_bound(*e, var);
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, mpq_class>& values) {
  return substitute_impl(e, values);
}

Integral substitute(const Integral& i, const std::map<std::string, mpq_class>& values) {
  Integral out = i;
  out.integrand = substitute(i.integrand, values);
  return out;
}

std::set<std::string> free_parameters(const ExprPtr& e, const std::string& var) {
  std::set<std::string> out;
  collect_symbols(*e, var, out);
  return out;
}

}  // namespace residua
