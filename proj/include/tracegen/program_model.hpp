#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/ast.hpp"
#include "tracegen/signature.hpp"

// Timepoint and location structure of a program: the l/n symbols, the
// tp/start/end/lastIt expressions and the derived trace-logic signature.

namespace tracegen::model {

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyContextError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ContextRole { TopLevel, IfBranch, ElseBranch, LoopBody };

struct ContextRef {
  const ast::Context* ctx = nullptr;
  const ast::Stmt* owner = nullptr;  // null for the top-level context
  ContextRole role = ContextRole::TopLevel;
};

class ProgramModel {
 public:
  explicit ProgramModel(const ast::Program& p);

  const ast::Program& program() const { return prog_; }

  // All statements in source (pre-)order, synthetic skips included.
  const std::vector<const ast::Stmt*>& statements() const { return stmts_; }
  std::vector<const ast::Stmt*> whiles() const;

  // Outermost-first list of while-statements strictly containing s.
  const std::vector<const ast::Stmt*>& enclosing_loops(
      const ast::Stmt* s) const;

  std::string loc_name(const ast::Stmt* s) const;      // l<line>
  std::string last_it_name(const ast::Stmt* w) const;  // n<line>
  logic::TermPtr iter_var(const ast::Stmt* w) const;   // it<line> : Nat

  // tp_s with the named iteration variables of the enclosing loops.
  logic::TermPtr tp(const ast::Stmt* s) const;                     // non-while
  logic::TermPtr tp(const ast::Stmt* w, logic::TermPtr it) const;  // while
  // tp_s under an explicit iteration assignment; throws ArityError if a
  // needed iteration term is missing.
  logic::TermPtr tp_of(const ast::Stmt* s,
                       const std::map<std::string, logic::TermPtr>& iters) const;

  logic::TermPtr last_it(const ast::Stmt* w) const;  // n_w(enclosing its)

  logic::TermPtr start_of(const ast::Stmt* s) const;
  logic::TermPtr start_of(const ContextRef& c) const;
  logic::TermPtr end_of(const ast::Stmt* s) const;
  logic::TermPtr end_of(const ContextRef& c) const;
  logic::TermPtr end_term() const;  // l_end

  ContextRef top_context() const;
  std::vector<ContextRef> contexts() const;  // pre-order
  ContextRef context_of(const ast::Stmt* s) const;
  const ast::Stmt* next_in_context(const ast::Stmt* s) const;

  Signature signature() const;

  std::vector<ast::VarDecl> mutable_vars() const;

 private:
  void index_context(const ast::Context& ctx, ContextRef ref,
                     std::vector<const ast::Stmt*> encl);

  const ast::Program& prog_;
  std::vector<const ast::Stmt*> stmts_;
  std::map<const ast::Stmt*, std::vector<const ast::Stmt*>> encl_;
  std::map<const ast::Stmt*, ContextRef> ctx_of_;
  std::map<const ast::Stmt*, const ast::Stmt*> next_;
  std::vector<ContextRef> contexts_;
};

}  // namespace tracegen::model
