#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "residua/ast.hpp"

namespace residua {

inline constexpr std::size_t kMaxInputBytes = 64 * 1024;
inline constexpr int kMaxNesting = 256;
inline constexpr int kMaxExponent = 64;
inline constexpr long kMaxPolyDegree = 64;
inline constexpr std::size_t kMaxLiteralChars = 64;
inline constexpr int kMaxLiteralExponent = 100;

/// Grammar:
///   integral := "int" bound bound expr "d" ident
///   bound    := "inf" | "-inf" | "2pi" | "pi" | ["-"] number
///   expr     := sums and products over + - * / ^, unary minus, parentheses,
///               and calls cos sin exp sinh cosh ln sqrt
/// Multiplication is always explicit. Throws ParseError or DegreeTooHigh.
Integral parse(std::string_view text);
/// A bare expression in `var`.
ExprPtr parse_expression(std::string_view text, const std::string& var = "x");

/// Exponent and degree rules; throws ParseError (offset of the culprit) or DegreeTooHigh.
void validate(const ExprPtr& e, const std::string& var);

/// Canonical form: rational folding, flattened sums/products, collected polynomials,
/// hash-ordered operands and sign-reduced trig arguments. Idempotent.
ExprPtr normalize(const ExprPtr& e, const std::string& var);
Integral normalize(const Integral& i);

std::string render(const ExprPtr& e, const std::string& var);
std::string render(const Bound& b);
std::string render(const Integral& i);

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, mpq_class>& values);
Integral substitute(const Integral& i, const std::map<std::string, mpq_class>& values);
/// Symbols other than the integration variable.
std::set<std::string> free_parameters(const ExprPtr& e, const std::string& var);

/// Exact decimal literal to rational ("1.25e-3"). Throws ParseError on malformed text.
mpq_class parse_decimal(std::string_view text);

}  // namespace residua
