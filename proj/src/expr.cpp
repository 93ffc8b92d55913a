#include "motint/expr.hpp"

#include <cctype>
#include <sstream>

namespace motint {

namespace {

struct Token {
  enum class Type { Int, Ident, Op, End };
  Type type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int start = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Type::Int, std::string(src.substr(i, j - i)), line, start});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Type::Ident, std::string(src.substr(i, j - i)), line, start});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::string_view("+-*^()").find(c) != std::string_view::npos) {
      out.push_back({Token::Type::Op, std::string(1, c), line, start});
      ++col;
      ++i;
      continue;
    }
    std::ostringstream msg;
    msg << "syntax error at line " << line << ", column " << col << ": unexpected character '" << c << "'";
    throw SyntaxError(msg.str(), line, col);
  }
  out.push_back({Token::Type::End, "", line, col});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, const std::set<std::string>& vars) : toks_(std::move(tokens)), vars_(vars) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().type != Token::Type::End) error("unexpected '" + peek().text + "'");
    return e;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at_op(const char* op) const { return peek().type == Token::Type::Op && peek().text == op; }

  [[noreturn]] void error(const std::string& what) const {
    const Token& t = peek();
    std::ostringstream msg;
    msg << "syntax error at line " << t.line << ", column " << t.column << ": " << what;
    throw SyntaxError(msg.str(), t.line, t.column);
  }

  static ExprPtr node(ExprAst::Kind k, int column) {
    auto n = std::make_unique<ExprAst>();
    n->kind = k;
    n->column = column;
    return n;
  }

  static ExprPtr binary(ExprAst::Kind k, ExprPtr a, ExprPtr b, int column) {
    auto n = node(k, column);
    n->args.push_back(std::move(a));
    n->args.push_back(std::move(b));
    return n;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at_op("+") || at_op("-")) {
      Token op = take();
      ExprPtr rhs = term();
      lhs = binary(op.text == "+" ? ExprAst::Kind::Add : ExprAst::Kind::Sub, std::move(lhs), std::move(rhs), op.column);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at_op("*")) {
      Token op = take();
      ExprPtr rhs = unary();
      lhs = binary(ExprAst::Kind::Mul, std::move(lhs), std::move(rhs), op.column);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at_op("-")) {
      Token op = take();
      auto n = node(ExprAst::Kind::Neg, op.column);
      n->args.push_back(unary());
      return n;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!at_op("^")) return base;
    Token op = take();
    bool negative = false;
    if (at_op("-")) {
      take();
      negative = true;
    }
    if (peek().type != Token::Type::Int) error("expected integer exponent, found '" + describe(peek()) + "'");
    Integer e(take().text, 10);
    auto n = node(ExprAst::Kind::Pow, op.column);
    n->value = negative ? Integer(-e) : e;
    n->args.push_back(std::move(base));
    return n;
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Int: {
        auto n = node(ExprAst::Kind::Int, t.column);
        n->value = Integer(take().text, 10);
        return n;
      }
      case Token::Type::Ident: {
        if (t.text == "L" && !vars_.count("L")) {
          take();
          return node(ExprAst::Kind::L, t.column);
        }
        if (t.text == "inv1m") {
          int col = t.column;
          take();
          if (!at_op("(")) error("expected '(' after inv1m");
          take();
          if (at_op("-")) {
            std::ostringstream msg;
            msg << "inv1m argument must be a positive integer literal (column " << peek().column << ")";
            fail(ErrorKind::Value, msg.str());
          }
          if (peek().type != Token::Type::Int) error("inv1m argument must be an integer literal");
          Token arg = take();
          Integer i(arg.text, 10);
          if (i <= 0) {
            std::ostringstream msg;
            msg << "inv1m argument must be a positive integer, got " << arg.text << " at column " << arg.column;
            fail(ErrorKind::Value, msg.str());
          }
          if (!at_op(")")) error("expected ')' to close inv1m");
          take();
          auto n = node(ExprAst::Kind::Inv1m, col);
          n->value = i;
          return n;
        }
        if (vars_.count(t.text)) {
          auto n = node(ExprAst::Kind::Var, t.column);
          n->name = take().text;
          return n;
        }
        error("unknown identifier '" + t.text + "'");
      }
      case Token::Type::Op:
        if (t.text == "(") {
          take();
          ExprPtr inner = expr();
          if (!at_op(")")) error("expected ')'");
          take();
          return inner;
        }
        error("unexpected '" + t.text + "'");
      case Token::Type::End:
        error("unexpected end of input");
    }
    error("unexpected token");
  }

  static std::string describe(const Token& t) { return t.type == Token::Type::End ? "end of input" : t.text; }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::set<std::string>& vars_;
};

} // namespace

std::string ExprAst::to_sexpr() const {
  switch (kind) {
    case Kind::Int: return value.get_str();
    case Kind::L: return "L";
    case Kind::Var: return name;
    case Kind::Inv1m: return "inv1m(" + value.get_str() + ")";
    case Kind::Neg: return "neg(" + args[0]->to_sexpr() + ")";
    case Kind::Add: return "add(" + args[0]->to_sexpr() + "," + args[1]->to_sexpr() + ")";
    case Kind::Sub: return "sub(" + args[0]->to_sexpr() + "," + args[1]->to_sexpr() + ")";
    case Kind::Mul: return "mul(" + args[0]->to_sexpr() + "," + args[1]->to_sexpr() + ")";
    case Kind::Pow: return "pow(" + args[0]->to_sexpr() + "," + value.get_str() + ")";
  }
  return "?";
}

ExprPtr parse_expr(std::string_view text, const std::set<std::string>& variables) {
  Parser p(tokenize(text), variables);
  return p.parse();
}

MotElem to_mot_elem(const ExprAst& ast) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::Int: return MotElem(ast.value);
    case K::L: return MotElem::l_pow(1);
    case K::Inv1m: return MotElem::inv1m(static_cast<unsigned>(ast.value.get_ui()));
    case K::Var: fail(ErrorKind::Value, "variable '" + ast.name + "' has no value in the coefficient ring");
    case K::Neg: return -to_mot_elem(*ast.args[0]);
    case K::Add: return to_mot_elem(*ast.args[0]) + to_mot_elem(*ast.args[1]);
    case K::Sub: return to_mot_elem(*ast.args[0]) - to_mot_elem(*ast.args[1]);
    case K::Mul: return to_mot_elem(*ast.args[0]) * to_mot_elem(*ast.args[1]);
    case K::Pow: {
      if (!ast.value.fits_slong_p() || abs(ast.value) > 100000)
        fail(ErrorKind::Value, "exponent out of range");
      long e = ast.value.get_si();
      if (ast.args[0]->kind == K::L) return MotElem::l_pow(e);
      MotElem base = to_mot_elem(*ast.args[0]);
      if (e >= 0) return base.pow(static_cast<unsigned>(e));
      return base.inverse().pow(static_cast<unsigned>(-e));
    }
  }
  fail(ErrorKind::Internal, "bad expression node");
}

MotElem parse_mot_elem(std::string_view text) { return to_mot_elem(*parse_expr(text)); }

MotElem parse_serialized(std::string_view text) {
  auto bar1 = text.find('|');
  auto bar2 = bar1 == std::string_view::npos ? bar1 : text.find('|', bar1 + 1);
  if (bar2 == std::string_view::npos) fail(ErrorKind::Value, "serialized element needs the form 'P | a | [(i,e),...]'");
  MotElem num = parse_mot_elem(text.substr(0, bar1));
  if (num.l_power() != 0 || !num.factors().empty()) fail(ErrorKind::Value, "serialized numerator must be a polynomial");
  std::string a_text(text.substr(bar1 + 1, bar2 - bar1 - 1));
  Rational a = parse_rational(a_text);
  if (a < 0 || a.get_den() != 1) fail(ErrorKind::Value, "serialized L-power must be a natural number");
  MotElem::FactorMap factors;
  std::string rest(text.substr(bar2 + 1));
  std::size_t i = 0;
  while ((i = rest.find('(', i)) != std::string::npos) {
    auto close = rest.find(')', i);
    auto comma = rest.find(',', i);
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      fail(ErrorKind::Value, "malformed factor list in serialized element");
    Rational idx = parse_rational(rest.substr(i + 1, comma - i - 1));
    Rational mult = parse_rational(rest.substr(comma + 1, close - comma - 1));
    if (idx <= 0 || mult <= 0 || idx.get_den() != 1 || mult.get_den() != 1)
      fail(ErrorKind::Value, "factor entries must be positive integers");
    factors[static_cast<unsigned>(idx.get_num().get_ui())] += static_cast<unsigned>(mult.get_num().get_ui());
    i = close + 1;
  }
  return MotElem(num.numerator(), a.get_num().get_ui(), std::move(factors));
}

AffineExpr to_affine(const ExprAst& ast, const std::vector<std::string>& vars) {
  using K = ExprAst::Kind;
  auto zero = [&] {
    AffineExpr z;
    z.coeffs.assign(vars.size(), Integer(0));
    z.constant = 0;
    return z;
  };
  auto is_const = [](const AffineExpr& a) {
    for (const auto& c : a.coeffs)
      if (c != 0) return false;
    return true;
  };
  switch (ast.kind) {
    case K::Int: {
      AffineExpr a = zero();
      a.constant = ast.value;
      return a;
    }
    case K::Var: {
      AffineExpr a = zero();
      for (std::size_t k = 0; k < vars.size(); ++k)
        if (vars[k] == ast.name) a.coeffs[k] = 1;
      return a;
    }
    case K::Neg: {
      AffineExpr a = to_affine(*ast.args[0], vars);
      for (auto& c : a.coeffs) c = -c;
      a.constant = -a.constant;
      return a;
    }
    case K::Add:
    case K::Sub: {
      AffineExpr a = to_affine(*ast.args[0], vars);
      AffineExpr b = to_affine(*ast.args[1], vars);
      Integer s = ast.kind == K::Add ? 1 : -1;
      for (std::size_t k = 0; k < vars.size(); ++k) a.coeffs[k] += s * b.coeffs[k];
      a.constant += s * b.constant;
      return a;
    }
    case K::Mul: {
      AffineExpr a = to_affine(*ast.args[0], vars);
      AffineExpr b = to_affine(*ast.args[1], vars);
      if (!is_const(a) && !is_const(b))
        fail(ErrorKind::Value, "non-linear product at column " + std::to_string(ast.column));
      if (!is_const(a)) std::swap(a, b);
      for (auto& c : b.coeffs) c *= a.constant;
      b.constant *= a.constant;
      return b;
    }
    case K::Pow: {
      AffineExpr base = to_affine(*ast.args[0], vars);
      if (ast.value == 1) return base;
      if (ast.value == 0) {
        AffineExpr one = zero();
        one.constant = 1;
        return one;
      }
      if (is_const(base) && ast.value > 0) {
        base.constant = integer_pow(base.constant, ast.value.get_ui());
        return base;
      }
      fail(ErrorKind::Value, "non-linear power at column " + std::to_string(ast.column));
    }
    case K::L:
    case K::Inv1m:
      fail(ErrorKind::Value, "ring symbols are not allowed in an index form (column " + std::to_string(ast.column) + ")");
  }
  fail(ErrorKind::Internal, "bad expression node");
}

IntPoly to_int_poly(const ExprAst& ast, const std::string& var) {
  using K = ExprAst::Kind;
  switch (ast.kind) {
    case K::Int: return IntPoly(ast.value);
    case K::Var:
      if (ast.name != var) fail(ErrorKind::Value, "unexpected variable '" + ast.name + "'");
      return IntPoly::x();
    case K::Neg: return -to_int_poly(*ast.args[0], var);
    case K::Add: return to_int_poly(*ast.args[0], var) + to_int_poly(*ast.args[1], var);
    case K::Sub: return to_int_poly(*ast.args[0], var) - to_int_poly(*ast.args[1], var);
    case K::Mul: return to_int_poly(*ast.args[0], var) * to_int_poly(*ast.args[1], var);
    case K::Pow:
      if (ast.value < 0 || ast.value > 64) fail(ErrorKind::Value, "polynomial exponent out of range");
      return to_int_poly(*ast.args[0], var).pow(static_cast<unsigned>(ast.value.get_ui()));
    case K::L:
    case K::Inv1m:
      fail(ErrorKind::Value, "ring symbols are not allowed in an index polynomial");
  }
  fail(ErrorKind::Internal, "bad expression node");
}

} // namespace motint
