#pragma once

#include <string_view>

#include "tensorlift/expr.hpp"

namespace tensorlift {

/// Parses the expression grammar:
///   variables  x<a>@<r> (e.g. x1@0); "@0" may be omitted
///   constants  decimal literals, read exactly as rationals (0.5 -> 1/2);
///              `i` is the imaginary unit
///   operators  + - * / ^ with standard precedence; ^ binds tightest and is
///              right-associative; unary minus binds below ^
///   functions  sin(...), cos(...), exp(...)
/// Throws ParseError with 1-based line/column and the offending token.
Expr parse_expression(std::string_view text);

}  // namespace tensorlift
