#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "edp/errors.hpp"
#include "edp/types.hpp"

namespace edp::potdsl {

// Parsed expression tree for small potential / energy-dependence formulas.
//
// Grammar (precedence low to high):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' INTEGER)?          -- exponent is a literal only
//   atom   := NUMBER | 'x' | 'E' | FUNC '(' expr ')' | '(' expr ')'
//   FUNC   := 'sqrt' | 'exp' | 'abs'
//
// '^' binds tighter than unary minus, so -x^2 means -(x^2).  Chaining '^'
// is rejected rather than silently associated.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, VarX, VarE, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind;
    real value = 0.0;      // Number
    int exponent = 0;      // Pow
    std::string func;      // Call
    ExprPtr a, b;          // operands
    std::size_t offset = 0; // byte offset of this node in the source text
};

// Parse source text into a tree.  Throws ParseError with the byte offset of
// the first problem and a description of what would have been accepted.
ExprPtr parse(std::string_view src);

// Evaluate with the given variable bindings.  Throws DomainError naming the
// offending subexpression when evaluation leaves the real domain.
real eval(const Expr& e, real x, real energy);

// Render the tree back to text with minimal parentheses.  Printing is a
// fixed point: pretty(parse(pretty(t))) == pretty(t).
std::string pretty(const Expr& e);

// True when the tree references the corresponding variable anywhere.
bool uses_x(const Expr& e);
bool uses_e(const Expr& e);

} // namespace edp::potdsl
