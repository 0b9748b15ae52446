#include "cmi/expr.hpp"

#include <cctype>
#include <cmath>

namespace cmi {

struct ExprNode {
  enum class Kind { Number, Variable, Binary, Unary, Call };
  Kind kind = Kind::Number;
  Complex value{};      // Number
  std::string name;     // Variable / Call function name
  char op = 0;          // Binary: + - * / ^ ; Unary: -
  ExprPtr lhs, rhs;     // Binary children; Unary/Call child in lhs
};

namespace {

ExprPtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skipSpace();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input at position " +
                                            std::to_string(pos_));
    return e;
  }

 private:
  void skipSpace() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skipSpace();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skipSpace();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return e;
      ++pos_;
      ExprNode n;
      n.kind = ExprNode::Kind::Binary;
      n.op = c;
      n.lhs = e;
      n.rhs = term();
      e = make(std::move(n));
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    while (true) {
      char c = peek();
      if (c != '*' && c != '/') return e;
      ++pos_;
      ExprNode n;
      n.kind = ExprNode::Kind::Binary;
      n.op = c;
      n.lhs = e;
      n.rhs = unary();
      e = make(std::move(n));
    }
  }

  ExprPtr unary() {
    char c = peek();
    if (c == '+') {
      ++pos_;
      return unary();
    }
    if (c == '-') {
      ++pos_;
      ExprNode n;
      n.kind = ExprNode::Kind::Unary;
      n.op = '-';
      n.lhs = unary();
      return make(std::move(n));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek() != '^') return base;
    ++pos_;
    ExprNode n;
    n.kind = ExprNode::Kind::Binary;
    n.op = '^';
    n.lhs = base;
    n.rhs = unary();  // right associative, allows -k
    return make(std::move(n));
  }

  ExprPtr primary() {
    skipSpace();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw ParseError("missing closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected character '") + c + "' at position " +
                     std::to_string(pos_));
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' was an identifier boundary, not an exponent
      }
    }
    ExprNode n;
    n.kind = ExprNode::Kind::Number;
    try {
      n.value = Complex(std::stod(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      throw ParseError("malformed number at position " + std::to_string(start));
    }
    return make(std::move(n));
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_')) {
      ++pos_;
    }
    std::string name = s_.substr(start, pos_ - start);
    if (name == "i") {
      ExprNode n;
      n.kind = ExprNode::Kind::Number;
      n.value = Complex(0.0, 1.0);
      return make(std::move(n));
    }
    if (name == "pi") {
      ExprNode n;
      n.kind = ExprNode::Kind::Number;
      n.value = Complex(kPi);
      return make(std::move(n));
    }
    if (peek() == '(') {
      ++pos_;
      ExprNode n;
      n.kind = ExprNode::Kind::Call;
      n.name = name;
      n.lhs = expr();
      if (!eat(')')) throw ParseError("missing closing parenthesis after " + name);
      return make(std::move(n));
    }
    ExprNode n;
    n.kind = ExprNode::Kind::Variable;
    n.name = name;
    return make(std::move(n));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

RationalMap ratPow(const RationalMap& base, const Complex& e) {
  double k = e.real();
  if (e.imag() != 0.0 || k != std::floor(k) || std::abs(k) > 64) {
    throw ParseError("rational expressions allow only small integer powers");
  }
  int n = static_cast<int>(k);
  RationalMap out = RationalMap::constant(1.0);
  RationalMap b = n < 0 ? RationalMap::constant(1.0) / base : base;
  for (int j = 0; j < std::abs(n); ++j) out = out * b;
  return out;
}

RationalMap evalRationalNode(const ExprNode& e, const std::string& var) {
  switch (e.kind) {
    case ExprNode::Kind::Number:
      return RationalMap::constant(e.value);
    case ExprNode::Kind::Variable:
      if (e.name == var) return RationalMap::identity();
      throw ParseError("unknown symbol '" + e.name + "' in rational expression");
    case ExprNode::Kind::Unary:
      return evalRationalNode(*e.lhs, var) * Complex(-1.0);
    case ExprNode::Kind::Call:
      throw ParseError("function '" + e.name + "' is not allowed in rational expressions");
    case ExprNode::Kind::Binary: {
      if (e.op == '^') {
        if (e.rhs->kind != ExprNode::Kind::Number) {
          throw ParseError("rational powers must have constant exponents");
        }
        return ratPow(evalRationalNode(*e.lhs, var), e.rhs->value);
      }
      RationalMap a = evalRationalNode(*e.lhs, var);
      RationalMap b = evalRationalNode(*e.rhs, var);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/':
          if (b.isZero()) throw ParseError("division by zero in expression");
          return a / b;
        default: throw ParseError("unknown operator");
      }
    }
  }
  throw ParseError("malformed expression tree");
}

Complex evalNumericNode(const ExprNode& e, const std::string& var, Complex x) {
  switch (e.kind) {
    case ExprNode::Kind::Number:
      return e.value;
    case ExprNode::Kind::Variable:
      if (e.name == var) return x;
      throw ParseError("unknown symbol '" + e.name + "' in expression");
    case ExprNode::Kind::Unary:
      return -evalNumericNode(*e.lhs, var, x);
    case ExprNode::Kind::Call: {
      Complex a = evalNumericNode(*e.lhs, var, x);
      if (e.name == "exp") return std::exp(a);
      if (e.name == "sin") return std::sin(a);
      if (e.name == "cos") return std::cos(a);
      if (e.name == "log") return std::log(a);
      if (e.name == "sqrt") return std::sqrt(a);
      throw ParseError("unknown function '" + e.name + "'");
    }
    case ExprNode::Kind::Binary: {
      Complex a = evalNumericNode(*e.lhs, var, x);
      Complex b = evalNumericNode(*e.rhs, var, x);
      switch (e.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
        default: throw ParseError("unknown operator");
      }
    }
  }
  throw ParseError("malformed expression tree");
}

}  // namespace

ExprPtr parseExpression(const std::string& text) { return Parser(text).parse(); }

RationalMap exprToRational(const ExprPtr& e, const std::string& var) {
  if (!e) throw ParseError("empty expression");
  return evalRationalNode(*e, var);
}

std::function<Complex(double)> exprToPathFunction(const ExprPtr& e, const std::string& var) {
  if (!e) throw ParseError("empty expression");
  // Validate eagerly at s = 0.37 so malformed inputs fail at parse time.
  (void)evalNumericNode(*e, var, Complex(0.37));
  return [e, var](double s) { return evalNumericNode(*e, var, Complex(s)); };
}

}  // namespace cmi
