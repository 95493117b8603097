#pragma once

#include <span>
#include <string>
#include <string_view>

#include "lgfrob/polynomial.hpp"

namespace lgfrob {

// Grammar (whitespace ignored):
//
//   expr     := [ '+' | '-' ] term { ( '+' | '-' ) term }
//   term     := factor { '*' factor }
//   factor   := base [ '^' nat ]
//   base     := rational | variable | '(' expr ')'
//   rational := nat [ '/' nat ]
//   variable := [A-Za-z_][A-Za-z0-9_]*
//
// Throws SyntaxError (with the byte offset) or UnknownVariable.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> variables);

}  // namespace lgfrob
