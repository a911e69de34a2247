#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ccsym/chen.hpp"
#include "ccsym/laurent.hpp"
#include "ccsym/ratfunc.hpp"

namespace ccsym {

/// Syntax tree of an arithmetic expression. Precedence from tightest:
/// `^` (integer exponent), unary minus, `*` and `/`, `+` and `-`. Atoms are
/// `x`, `i`, generator names, decimal or integer literals and parentheses.
struct Expr {
  enum class Kind { number, imaginary, variable, name, negate, add, subtract, multiply, divide, power };

  Kind kind;
  std::size_t position;
  mpq_class number;
  std::string name;
  long exponent = 0;
  std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Throws ParseError carrying the offending offset.
ExprPtr parse_expression(std::string_view text);

/// Gaussian rational value; rejects `x` and generator names.
ExactScalar evaluate_scalar(const Expr& e);
/// Algebra element; rejects `x`.
ExactElement evaluate_element(const Expr& e, const AlgebraPtr& algebra);
/// Laurent series in x with the given truncation order (kUnbounded keeps
/// polynomial expressions exact; division then needs a finite order).
ExactSeries evaluate_series(const Expr& e, const AlgebraPtr& algebra, int trunc_order);
/// Rational function in x. Linear factors x - c written in the input are
/// used as root candidates.
RationalFunction evaluate_function(const Expr& e, const AlgebraPtr& algebra);

ExactScalar parse_scalar(std::string_view text);
ExactElement parse_element(std::string_view text, const AlgebraPtr& algebra);
ExactSeries parse_series(std::string_view text, const AlgebraPtr& algebra, int trunc_order);
RationalFunction parse_function(std::string_view text, const AlgebraPtr& algebra);
/// A scalar expression, or `inf` / `oo` for infinity.
SpherePoint parse_point(std::string_view text);
/// Real number given as a scalar expression such as `1/2`.
double parse_real(std::string_view text);

/// Path literal built from `seg(a,b)`, `circle(c,r[,base_turns])`,
/// `arc(c,r,start_turns,sweep_turns)`, `concat(p,...)`, `rev(p)` and
/// `comm(p,q)`, with scalar-expression parameters.
Path parse_path(std::string_view text);

} // namespace ccsym
