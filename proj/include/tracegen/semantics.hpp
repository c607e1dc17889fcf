#pragma once

#include <string>
#include <vector>

#include "tracegen/ast.hpp"
#include "tracegen/program_model.hpp"

// Axiomatic semantics: per-statement axioms guarded by Reach, the Reach
// definitional biconditionals, the Nat theory and the embedded conjecture.

namespace tracegen::sem {

struct LabeledFormula {
  std::string label;
  logic::FormulaPtr formula;
};

struct GenOptions {
  bool include_lemmas = true;
  // Fault injection for the oracle's mutation tests: corrupt the k-th
  // frame equality (0-based, -1 = off) or negate the RHS of the k-th
  // reach axiom.
  int corrupt_frame = -1;
  int flip_reach = -1;
};

struct VerificationTask {
  model::Signature signature;
  std::vector<LabeledFormula> theory_axioms;
  std::vector<LabeledFormula> semantics_axioms;
  std::vector<LabeledFormula> reach_axioms;
  std::vector<LabeledFormula> lemma_instances;
  LabeledFormula conjecture;
};

// v(tp1) == v(tp2); arrays compare pointwise under an outer position
// quantifier. v must be mutable.
logic::FormulaPtr eq_formula(const ast::VarDecl& v, logic::TermPtr tp1,
                             logic::TermPtr tp2);

// Conjunction of eq_formula over every mutable variable of the program.
logic::FormulaPtr eqall_formula(const model::ProgramModel& m,
                                logic::TermPtr tp1, logic::TermPtr tp2);

// Value of an arithmetic expression at a timepoint.
logic::TermPtr eval_expr_at(const ast::Program& p, const ast::ExprPtr& e,
                            logic::TermPtr tp);
// Truth of a boolean expression at a timepoint.
logic::FormulaPtr eval_cond_at(const ast::Program& p, const ast::ExprPtr& e,
                               logic::TermPtr tp);

logic::FormulaPtr update_formula(const model::ProgramModel& m,
                                 const ast::VarDecl& v, const ast::ExprPtr& e,
                                 logic::TermPtr tp1, logic::TermPtr tp2);
logic::FormulaPtr update_arr_formula(const model::ProgramModel& m,
                                     const ast::VarDecl& v,
                                     const ast::ExprPtr& e1,
                                     const ast::ExprPtr& e2,
                                     logic::TermPtr tp1, logic::TermPtr tp2);

// The unguarded body of s's semantics axiom.
logic::FormulaPtr statement_semantics(const model::ProgramModel& m,
                                      const ast::Stmt* s);

std::vector<LabeledFormula> theory_axioms();
std::vector<LabeledFormula> reach_axioms(const model::ProgramModel& m);

// Rewrites the surface assertion's `main_end` timepoint to l_end.
logic::FormulaPtr embed_property(const logic::FormulaPtr& surface);

// Assembles the full task (lemma instances included unless disabled).
VerificationTask build_task(const ast::Program& p, const GenOptions& opts = {});

}  // namespace tracegen::sem
