#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcw/expr.hpp"

namespace dcw {

/// Raised on malformed DSL input; message carries the column (1-based) and
/// the offending token context.
struct ParseError : std::runtime_error {
	explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse a scalar expression over named coordinates.
///
/// Grammar (EBNF, also in docs/expression-dsl.md):
///   expr    = term { ("+" | "-") term } ;
///   term    = signed { ("*" | "/") signed } ;
///   signed  = "-" signed | power ;
///   power   = atom [ "^" [ "-" ] integer ] ;
///   atom    = number | "pi" | coord | call | "(" expr ")" ;
///   call    = name "(" expr { (";" | ",") expr } ")" ;
///   number  = digits [ "/" digits ] | digits "." digits ;
///
/// Precedence: ^  >  unary -  >  * /  >  + - .  Numbers are exact rationals
/// ("3/2", "1.5" both mean 3/2); "pi" is the symbolic constant.  Functions:
/// sin, cos, exp, sqrt (one argument) and bump(e; r0, r1) with constant
/// window bounds.
Expr parse_scalar_expr(std::string_view text, const std::vector<std::string>& coord_names);

}  // namespace dcw
