#pragma once

#include <string>
#include <vector>

#include "tracegen/logic.hpp"

namespace tracegen::model {

// The trace-logic signature of a program: location symbols (timepoints),
// last-iteration symbols, program-variable symbols and per-array length
// constants. Reach : Time -> Bool is implicit.
struct Signature {
  struct FuncSym {
    std::string name;
    size_t nat_arity = 0;  // Nat-sorted iteration arguments
  };
  struct VarSym {
    std::string name;
    bool is_const = false;
    bool is_array = false;
  };

  std::vector<FuncSym> locations;  // source order; l_end last
  std::vector<FuncSym> last_its;
  std::vector<VarSym> variables;   // declaration order
  std::vector<std::string> arrays; // arrays owning a length constant

  const FuncSym* find_location(const std::string& name) const;
  const FuncSym* find_last_it(const std::string& name) const;
  const VarSym* find_variable(const std::string& name) const;
  bool has_array(const std::string& name) const;
};

// Checks a formula against the signature: symbols declared, arities
// match, bound-variable sorts consistent, no free variables. Throws
// logic::SortError with a path to the offending subterm.
void sort_check(const logic::FormulaPtr& f, const Signature& sig);

}  // namespace tracegen::model
