#pragma once

#include <string>

#include "tracegen/ast.hpp"

namespace tracegen::frontend {

// Parses W source text (program plus one trailing `assert (...)` clause)
// into a validated Program. Throws SyntaxError, ScopeError, SortError or
// MutabilityError.
ast::Program parse_program(const std::string& source);

// Canonical W source; parse_program(pretty_print(p)) is structurally
// equal to p.
std::string pretty_print(const ast::Program& p);

}  // namespace tracegen::frontend
