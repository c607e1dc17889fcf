#pragma once

#include <string>
#include <vector>

#include "tracegen/program_model.hpp"
#include "tracegen/semantics.hpp"

// Trace lemma instantiation: value evolution (A1, for == and <=),
// intermediate value (B1) and iteration injectivity (B2), one set per
// (loop, mutable variable) pair. Array variables are position-lifted
// with an outermost position quantifier.

namespace tracegen::lem {

struct LemmaInstance {
  enum class Kind { A1Eq, A1Leq, B1, B2 };
  Kind kind;
  const ast::Stmt* loop;
  std::string variable;
  logic::FormulaPtr formula;
  std::string label;
};

// v is dense over w's iterations: each step keeps v or increments it by 1.
logic::FormulaPtr dense_formula(const model::ProgramModel& m,
                                const ast::Stmt* w, const ast::VarDecl& v);

LemmaInstance lemma_a1(const model::ProgramModel& m, const ast::Stmt* w,
                       const ast::VarDecl& v, bool leq_rel);
LemmaInstance lemma_b1(const model::ProgramModel& m, const ast::Stmt* w,
                       const ast::VarDecl& v);
LemmaInstance lemma_b2(const model::ProgramModel& m, const ast::Stmt* w,
                       const ast::VarDecl& v);

// All instances in (loop pre-order) x (declaration order) x
// (A1-eq, A1-leq, B1, B2) order.
std::vector<LemmaInstance> instantiate_all(const model::ProgramModel& m);

std::vector<sem::LabeledFormula> as_labeled(
    const std::vector<LemmaInstance>& instances);

}  // namespace tracegen::lem
