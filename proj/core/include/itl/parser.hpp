#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "itl/formula.hpp"

namespace itl {

/// Syntax error with byte offset and the tokens that would have been accepted.
struct ParseError : Error {
  ParseError(std::size_t offset, const std::string& msg,
             std::vector<std::string> expected = {});
  std::size_t offset;
  std::vector<std::string> expected;
};

/// Grammar (loosest to tightest): `->` right assoc; `|`; `&`; `U`/`R` right
/// assoc, equal precedence, mixing needs parentheses; unary `~ X <> []`;
/// atoms `[a-z]\w*`, constants `F` and `T` (T desugars to `F -> F`).
Fptr parse(std::string_view text);

/// Minimal-parentheses rendering; parse(render(f)) == f structurally.
std::string render(const Fptr& f);

}  // namespace itl
