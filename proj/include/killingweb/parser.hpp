#pragma once

#include "killingweb/ratfun.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace kw {

/// Syntax or binding error in a potential expression; `offset` is the byte
/// position in the input text.
struct PotentialParseError : std::invalid_argument {
    PotentialParseError(const std::string& msg, size_t offset)
        : std::invalid_argument(msg + " (at byte " + std::to_string(offset) + ")"),
          offset(offset) {}
    size_t offset;
};

/// Parse a potential V(x,y,z) into a rational function over {x,y,z}.
///
/// Grammar (precedence low to high; * / and + - left-associative, ^ right-
/// associative and binding tighter than unary minus):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?        -- exponent must be a constant integer
///   atom   := integer | identifier | '(' expr ')'
/// Identifiers other than x, y, z are named constants resolved from the map;
/// only exact integer literals are accepted (rationals are written with '/').
RatFun parse_potential(const std::string& text,
                       const std::map<std::string, Rational>& constants = {});

}  // namespace kw
