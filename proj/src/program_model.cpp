#include "tracegen/program_model.hpp"

namespace tracegen::model {

namespace lg = logic;
using ast::Stmt;

ProgramModel::ProgramModel(const ast::Program& p) : prog_(p) {
  ContextRef top{&p.body, nullptr, ContextRole::TopLevel};
  contexts_.push_back(top);
  index_context(p.body, top, {});
}

void ProgramModel::index_context(const ast::Context& ctx, ContextRef ref,
                                 std::vector<const Stmt*> encl) {
  for (size_t i = 0; i < ctx.stmts.size(); ++i) {
    const Stmt* s = ctx.stmts[i].get();
    stmts_.push_back(s);
    encl_[s] = encl;
    ctx_of_[s] = ref;
    next_[s] = i + 1 < ctx.stmts.size() ? ctx.stmts[i + 1].get() : nullptr;
    if (s->kind == Stmt::Kind::IfElse) {
      ContextRef then_ref{&s->then_ctx, s, ContextRole::IfBranch};
      ContextRef else_ref{&s->else_ctx, s, ContextRole::ElseBranch};
      contexts_.push_back(then_ref);
      index_context(s->then_ctx, then_ref, encl);
      contexts_.push_back(else_ref);
      index_context(s->else_ctx, else_ref, encl);
    } else if (s->kind == Stmt::Kind::While) {
      ContextRef body_ref{&s->then_ctx, s, ContextRole::LoopBody};
      contexts_.push_back(body_ref);
      auto inner = encl;
      inner.push_back(s);
      index_context(s->then_ctx, body_ref, inner);
    }
  }
}

std::vector<const Stmt*> ProgramModel::whiles() const {
  std::vector<const Stmt*> out;
  for (const Stmt* s : stmts_)
    if (s->is_while()) out.push_back(s);
  return out;
}

const std::vector<const Stmt*>& ProgramModel::enclosing_loops(
    const Stmt* s) const {
  return encl_.at(s);
}

std::string ProgramModel::loc_name(const Stmt* s) const {
  return "l" + std::to_string(s->line);
}

std::string ProgramModel::last_it_name(const Stmt* w) const {
  return "n" + std::to_string(w->line);
}

lg::TermPtr ProgramModel::iter_var(const Stmt* w) const {
  return lg::mk_var("it" + std::to_string(w->line), lg::Sort::Nat);
}

lg::TermPtr ProgramModel::tp(const Stmt* s) const {
  std::vector<lg::TermPtr> args;
  for (const Stmt* w : encl_.at(s)) args.push_back(iter_var(w));
  if (s->is_while()) args.push_back(iter_var(s));
  return lg::mk_loc_app(loc_name(s), std::move(args));
}

lg::TermPtr ProgramModel::tp(const Stmt* w, lg::TermPtr it) const {
  std::vector<lg::TermPtr> args;
  for (const Stmt* e : encl_.at(w)) args.push_back(iter_var(e));
  args.push_back(std::move(it));
  return lg::mk_loc_app(loc_name(w), std::move(args));
}

lg::TermPtr ProgramModel::tp_of(
    const Stmt* s, const std::map<std::string, lg::TermPtr>& iters) const {
  auto lookup = [&](const Stmt* w) {
    auto it = iters.find(iter_var(w)->name);
    if (it == iters.end())
      throw ArityError("missing iteration term for " + iter_var(w)->name +
                       " at " + loc_name(s));
    return it->second;
  };
  std::vector<lg::TermPtr> args;
  for (const Stmt* w : encl_.at(s)) args.push_back(lookup(w));
  if (s->is_while()) args.push_back(lookup(s));
  return lg::mk_loc_app(loc_name(s), std::move(args));
}

lg::TermPtr ProgramModel::last_it(const Stmt* w) const {
  std::vector<lg::TermPtr> args;
  for (const Stmt* e : encl_.at(w)) args.push_back(iter_var(e));
  return lg::mk_last_it_app(last_it_name(w), std::move(args));
}

lg::TermPtr ProgramModel::start_of(const Stmt* s) const {
  if (s->is_while()) return tp(s, lg::mk_zero());
  return tp(s);
}

lg::TermPtr ProgramModel::start_of(const ContextRef& c) const {
  if (c.ctx->stmts.empty())
    throw EmptyContextError("start of empty context");
  return start_of(c.ctx->stmts.front().get());
}

lg::TermPtr ProgramModel::end_of(const Stmt* s) const {
  if (const Stmt* n = next_.at(s)) return start_of(n);
  return end_of(ctx_of_.at(s));
}

lg::TermPtr ProgramModel::end_of(const ContextRef& c) const {
  switch (c.role) {
    case ContextRole::TopLevel:
      return end_term();
    case ContextRole::IfBranch:
    case ContextRole::ElseBranch:
      // both branches rejoin right after the if-statement
      return end_of(c.owner);
    case ContextRole::LoopBody:
      return tp(c.owner, lg::mk_suc(iter_var(c.owner)));
  }
  throw std::logic_error("unreachable");
}

lg::TermPtr ProgramModel::end_term() const {
  return lg::mk_loc_app("l_end", {});
}

ContextRef ProgramModel::top_context() const { return contexts_.front(); }

std::vector<ContextRef> ProgramModel::contexts() const { return contexts_; }

ContextRef ProgramModel::context_of(const Stmt* s) const {
  return ctx_of_.at(s);
}

const Stmt* ProgramModel::next_in_context(const Stmt* s) const {
  return next_.at(s);
}

Signature ProgramModel::signature() const {
  Signature sig;
  for (const Stmt* s : stmts_) {
    size_t arity = encl_.at(s).size() + (s->is_while() ? 1 : 0);
    sig.locations.push_back({loc_name(s), arity});
    if (s->is_while())
      sig.last_its.push_back({last_it_name(s), encl_.at(s).size()});
  }
  sig.locations.push_back({"l_end", 0});
  for (const auto& d : prog_.decls) {
    sig.variables.push_back({d.name, d.is_const(), d.is_array()});
    if (d.is_array()) sig.arrays.push_back(d.name);
  }
  return sig;
}

std::vector<ast::VarDecl> ProgramModel::mutable_vars() const {
  std::vector<ast::VarDecl> out;
  for (const auto& d : prog_.decls)
    if (!d.is_const()) out.push_back(d);
  return out;
}

}  // namespace tracegen::model
