#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cmi/rational.hpp"

namespace cmi {

/// Parsed arithmetic expression over one variable with complex constants
/// (i, pi), +, -, *, /, ^ and the functions exp, sin, cos, log, sqrt.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Throws ParseError on malformed input.
ExprPtr parseExpression(const std::string& text);

/// Interprets the expression as a rational map in `var`; throws ParseError
/// when it uses transcendental functions or non-integer powers.
RationalMap exprToRational(const ExprPtr& e, const std::string& var = "z");

/// Interprets the expression as a numeric function of a real parameter.
std::function<Complex(double)> exprToPathFunction(const ExprPtr& e,
                                                  const std::string& var = "s");

inline RationalMap parseRational(const std::string& text, const std::string& var = "z") {
  return exprToRational(parseExpression(text), var);
}

inline std::function<Complex(double)> parsePathFunction(const std::string& text,
                                                        const std::string& var = "s") {
  return exprToPathFunction(parseExpression(text), var);
}

}  // namespace cmi
