#pragma once

#include "motint/mot_elem.hpp"

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace motint {

/// Abstract syntax of ring expressions:
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := atom ('^' ['-'] INT)?
///   atom  := INT | 'L' | 'inv1m' '(' INT ')' | IDENT | '(' expr ')'
/// IDENT is only accepted when the caller lists it as a variable.
struct ExprAst {
  enum class Kind { Int, L, Inv1m, Var, Neg, Add, Sub, Mul, Pow };

  Kind kind;
  Integer value;      // Int literal, Inv1m index, or Pow exponent
  std::string name;   // Var
  std::vector<std::unique_ptr<ExprAst>> args;
  int column = 0;     // 1-based start column in the source line

  /// "sub(pow(L,2),1)" style rendering used by tests and diagnostics.
  std::string to_sexpr() const;
};

using ExprPtr = std::unique_ptr<ExprAst>;

/// Parses `text`. Throws SyntaxError (line/column anchored) on malformed
/// input and Error(Value) for inv1m(0) or non-positive inv1m arguments.
ExprPtr parse_expr(std::string_view text, const std::set<std::string>& variables = {});

/// Evaluates a variable-free AST in the coefficient ring. Negative powers
/// are allowed on units only.
MotElem to_mot_elem(const ExprAst& ast);

/// parse_expr + to_mot_elem.
MotElem parse_mot_elem(std::string_view text);

/// Parses the golden serialization "P | a | [(i,e),...]".
MotElem parse_serialized(std::string_view text);

/// Affine integer form c . x + d over named variables.
struct AffineExpr {
  std::vector<Integer> coeffs;
  Integer constant;
};

/// Evaluates an AST built over `vars` as an affine form; throws Error(Value)
/// for non-linear input.
AffineExpr to_affine(const ExprAst& ast, const std::vector<std::string>& vars);

/// Evaluates an AST in a single variable as an integer polynomial.
IntPoly to_int_poly(const ExprAst& ast, const std::string& var);

} // namespace motint
