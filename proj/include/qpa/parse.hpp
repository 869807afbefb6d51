#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qpa/diffop.hpp"
#include "qpa/linebundle.hpp"
#include "qpa/symbol_poly.hpp"
#include "qpa/symbols.hpp"
#include "qpa/trig_poly.hpp"

namespace qpa {

/// Syntax tree of the text form.
///
///   sum    := ['-'] term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ['^' int]
///   atom   := rat | 'x'i | 'xi'i | 'd'i | 'd' | trig '(' [rat] 't' ')' | '(' sum ')'
struct Expr {
  enum class Op { Num, X, Xi, D, CircleD, Cos, Sin, Add, Sub, Neg, Mul, Pow };
  Op op = Op::Num;
  Rat value;      ///< Num literal or trig frequency
  int index = 0;  ///< 0-based variable index
  int exponent = 0;
  std::vector<Expr> args;
  int line = 1, column = 1;
};

/// Throws ParseError with a 1-based position.
Expr parse(const std::string& src);

/// Smallest value type able to hold an expression. Poly embeds into the
/// symbol and operator kinds; Trig embeds into CircleOp.
enum class ExprKind { Poly, Symbol, DiffOp, Trig, CircleOp };
const char* to_string(ExprKind k);

struct ExprInfo {
  ExprKind kind = ExprKind::Poly;
  /// Largest variable index used, 1-based; 0 if none.
  int n = 0;
};

/// Throws ParseError when x/ξ/∂ tokens meet trig tokens or ξ meets ∂ᵢ.
ExprInfo infer(const Expr& e);
/// Common kind of two kinds; throws PreconditionError if none.
ExprKind join(ExprKind a, ExprKind b);

using Value = std::variant<Poly, SymbolPoly, DiffOp, TrigPoly, CircleOp>;

/// Evaluates as `kind` in n variables. Products of operators are
/// compositions, so d1*x1 normal-orders to x1*d1 + 1. Mixed trig modes in a
/// sum raise a ParseError whose message starts with MODE_MIX.
Value evaluate(const Expr& e, ExprKind kind, int n);

/// Parse and evaluate at the inferred kind; n < 0 picks max(1, used).
Value parse_value(const std::string& src, int n = -1);
/// Parses several sources at their common kind and dimension.
std::vector<Value> parse_values(const std::vector<std::string>& srcs, int n = -1);

Poly parse_poly(const std::string& src, int n = -1);
SymbolPoly parse_symbol(const std::string& src, int n = -1);
DiffOp parse_diffop(const std::string& src, int n = -1);
TrigPoly parse_trig(const std::string& src);
CircleOp parse_circle_op(const std::string& src);
/// First-order operator with no zero-order part, read as a vector field.
VectorField parse_field(const std::string& src, int n = -1);
/// "[p1, ..., pm]" of polynomials in n variables (n < 0: max(m, used)).
std::vector<Poly> parse_poly_list(const std::string& src, int n = -1);
/// "[w1, ..., wn]"; must be closed.
ClosedOneForm parse_form(const std::string& src, int n = -1);

ExprKind kind_of(const Value& v);
int dim_of(const Value& v);
std::string print(const Value& v);

}  // namespace qpa
