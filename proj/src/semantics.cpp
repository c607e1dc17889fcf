#include "tracegen/semantics.hpp"

#include "tracegen/lemmas.hpp"

namespace tracegen::sem {

namespace lg = logic;
using ast::Stmt;
using ast::VarDecl;
using lg::FormulaPtr;
using lg::TermPtr;
using model::ContextRef;
using model::ContextRole;
using model::ProgramModel;

namespace {

TermPtr var_at(const VarDecl& v, TermPtr tp) {
  return lg::mk_var_app(v.name, false, false, {std::move(tp)});
}

TermPtr arr_at(const VarDecl& v, TermPtr tp, TermPtr pos) {
  return lg::mk_var_app(v.name, false, true, {std::move(tp), std::move(pos)});
}

TermPtr plus_one(TermPtr t) {
  return lg::mk_int_bin(lg::IntOp::Add, std::move(t), lg::mk_int(1));
}

// Conjunction that drops trivially-true conjuncts.
FormulaPtr conj(std::vector<FormulaPtr> fs) {
  std::vector<FormulaPtr> kept;
  for (auto& f : fs)
    if (f->kind != lg::Formula::Kind::True) kept.push_back(std::move(f));
  return lg::mk_and(std::move(kept));
}

bool is_synthetic_skip(const Stmt* s) {
  return s->synthetic && s->kind == Stmt::Kind::Skip;
}

// A context holding nothing but a desugaring skip contributes no
// semantics axiom; state flows straight to the context's end.
bool is_synthetic_only(const ContextRef& c) {
  return c.ctx->stmts.size() == 1 && is_synthetic_skip(c.ctx->stmts[0].get());
}

std::vector<lg::Binder> encl_binders(const ProgramModel& m, const Stmt* s) {
  std::vector<lg::Binder> bs;
  for (const Stmt* w : m.enclosing_loops(s))
    bs.push_back({m.iter_var(w)->name, lg::Sort::Nat});
  return bs;
}

struct Gen {
  const ProgramModel& m;
  GenOptions opts;
  int frame_count = 0;

  const ast::Program& prog() const { return m.program(); }

  bool take_corruption() { return frame_count++ == opts.corrupt_frame; }

  FormulaPtr frame_eq(const VarDecl& v, const TermPtr& tp1,
                      const TermPtr& tp2) {
    if (!take_corruption()) return eq_formula(v, tp1, tp2);
    if (!v.is_array())
      return lg::mk_eq(var_at(v, tp2), plus_one(var_at(v, tp1)));
    auto pos = lg::mk_var("pos", lg::Sort::Int);
    return lg::mk_forall(
        {{"pos", lg::Sort::Int}},
        lg::mk_eq(arr_at(v, tp2, pos), plus_one(arr_at(v, tp1, pos))));
  }

  FormulaPtr eqall(const TermPtr& tp1, const TermPtr& tp2) {
    std::vector<FormulaPtr> parts;
    for (const auto& v : m.mutable_vars()) parts.push_back(frame_eq(v, tp1, tp2));
    return lg::mk_and(std::move(parts));
  }

  FormulaPtr update(const VarDecl& v, const ast::ExprPtr& e,
                    const TermPtr& tp1, const TermPtr& tp2) {
    std::vector<FormulaPtr> parts;
    parts.push_back(
        lg::mk_eq(var_at(v, tp2), eval_expr_at(prog(), e, tp1)));
    for (const auto& w : m.mutable_vars())
      if (w.name != v.name) parts.push_back(frame_eq(w, tp1, tp2));
    return lg::mk_and(std::move(parts));
  }

  FormulaPtr update_arr(const VarDecl& v, const ast::ExprPtr& e1,
                        const ast::ExprPtr& e2, const TermPtr& tp1,
                        const TermPtr& tp2) {
    auto idx = eval_expr_at(prog(), e1, tp1);
    auto pos = lg::mk_var("pos", lg::Sort::Int);
    FormulaPtr frame = lg::mk_forall(
        {{"pos", lg::Sort::Int}},
        lg::mk_implies(lg::mk_not(lg::mk_eq(pos, idx)),
                       take_corruption()
                           ? lg::mk_eq(arr_at(v, tp2, pos),
                                       plus_one(arr_at(v, tp1, pos)))
                           : lg::mk_eq(arr_at(v, tp2, pos),
                                       arr_at(v, tp1, pos))));
    std::vector<FormulaPtr> parts;
    parts.push_back(std::move(frame));
    parts.push_back(
        lg::mk_eq(arr_at(v, tp2, idx), eval_expr_at(prog(), e2, tp1)));
    for (const auto& w : m.mutable_vars())
      if (w.name != v.name) parts.push_back(frame_eq(w, tp1, tp2));
    return lg::mk_and(std::move(parts));
  }

  // Start of a context for state-transfer purposes: a synthetic-only
  // context is skipped over entirely.
  TermPtr entry_of(const ContextRef& c) {
    return is_synthetic_only(c) ? m.end_of(c) : m.start_of(c);
  }

  FormulaPtr stmt_body(const Stmt* s) {
    auto start = m.start_of(s);
    auto end = m.end_of(s);
    switch (s->kind) {
      case Stmt::Kind::Skip:
        return eqall(end, start);
      case Stmt::Kind::IntAssign:
        return update(*prog().find_var(s->target), s->expr, start, end);
      case Stmt::Kind::ArrAssign:
        return update_arr(*prog().find_var(s->target), s->index, s->expr,
                          start, end);
      case Stmt::Kind::IfElse: {
        auto cond = eval_cond_at(prog(), s->cond, start);
        ContextRef then_ref{&s->then_ctx, s, ContextRole::IfBranch};
        ContextRef else_ref{&s->else_ctx, s, ContextRole::ElseBranch};
        return lg::mk_and(
            {lg::mk_implies(cond, eqall(entry_of(then_ref), start)),
             lg::mk_implies(lg::mk_not(cond),
                            eqall(entry_of(else_ref), start))});
      }
      case Stmt::Kind::While: {
        auto it = m.iter_var(s);
        auto n = m.last_it(s);
        auto tp_it = m.tp(s, it);
        auto tp_n = m.tp(s, n);
        lg::Binder itb{it->name, lg::Sort::Nat};
        ContextRef body{&s->then_ctx, s, ContextRole::LoopBody};
        auto holds = lg::mk_forall(
            {itb}, lg::mk_implies(lg::nat_less(it, n),
                                  eval_cond_at(prog(), s->cond, tp_it)));
        auto stops = lg::mk_not(eval_cond_at(prog(), s->cond, tp_n));
        auto enter = lg::mk_forall(
            {itb}, lg::mk_implies(lg::nat_less(it, n),
                                  eqall(entry_of(body), tp_it)));
        auto leave = eqall(end, tp_n);
        return lg::mk_and({holds, stops, enter, leave});
      }
    }
    throw std::logic_error("unreachable");
  }

  LabeledFormula stmt_axiom(const Stmt* s) {
    auto guarded =
        lg::mk_implies(lg::mk_reach(m.start_of(s)), stmt_body(s));
    return {"semantics-l" + std::to_string(s->line),
            lg::mk_forall(encl_binders(m, s), std::move(guarded))};
  }

  std::vector<LabeledFormula> all_semantics() {
    std::vector<LabeledFormula> out;
    for (const Stmt* s : m.statements())
      if (!is_synthetic_skip(s)) out.push_back(stmt_axiom(s));
    return out;
  }

  std::vector<LabeledFormula> all_reach() {
    std::vector<LabeledFormula> out;
    for (const Stmt* s : m.statements()) {
      ContextRef c = m.context_of(s);
      bool first = c.ctx->stmts.front().get() == s;
      FormulaPtr base;
      if (c.role == ContextRole::TopLevel) {
        base = lg::mk_true();
      } else if (!first) {
        base = lg::mk_reach(m.start_of(c));
      } else if (c.role == ContextRole::IfBranch) {
        auto o = m.start_of(c.owner);
        base = conj({lg::mk_reach(o), eval_cond_at(prog(), c.owner->cond, o)});
      } else if (c.role == ContextRole::ElseBranch) {
        auto o = m.start_of(c.owner);
        base = conj(
            {lg::mk_reach(o), lg::mk_not(eval_cond_at(prog(), c.owner->cond, o))});
      } else {  // loop body
        auto it = m.iter_var(c.owner);
        base = conj({lg::mk_reach(m.tp(c.owner, it)),
                     lg::nat_less(it, m.last_it(c.owner))});
      }
      FormulaPtr lhs, rhs;
      auto binders = encl_binders(m, s);
      if (s->is_while()) {
        auto it = m.iter_var(s);
        binders.push_back({it->name, lg::Sort::Nat});
        lhs = lg::mk_reach(m.tp(s, it));
        rhs = conj({base, lg::mk_nat_leq(it, m.last_it(s))});
      } else {
        lhs = lg::mk_reach(m.tp(s));
        rhs = base;
      }
      if (static_cast<int>(out.size()) == opts.flip_reach)
        rhs = lg::mk_not(rhs);
      out.push_back({"reach-l" + std::to_string(s->line),
                     lg::mk_forall(std::move(binders),
                                   lg::mk_iff(std::move(lhs), std::move(rhs)))});
    }
    FormulaPtr end_rhs = lg::mk_true();
    if (static_cast<int>(out.size()) == opts.flip_reach)
      end_rhs = lg::mk_not(end_rhs);
    out.push_back(
        {"reach-l_end", lg::mk_iff(lg::mk_reach(m.end_term()), end_rhs)});
    return out;
  }
};

TermPtr retarget(const TermPtr& t) {
  using K = lg::Term::Kind;
  switch (t->kind) {
    case K::Var:
    case K::Zero:
    case K::IntConst:
    case K::LengthConst:
      return t;
    case K::Suc:
      return lg::mk_suc(retarget(t->args[0]));
    case K::Pred:
      return lg::mk_pred(retarget(t->args[0]));
    case K::IntBin:
      return lg::mk_int_bin(t->op, retarget(t->args[0]), retarget(t->args[1]));
    case K::LocApp: {
      if (t->name == "main_end") return lg::mk_loc_app("l_end", {});
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(retarget(a));
      return lg::mk_loc_app(t->name, std::move(args));
    }
    case K::LastItApp: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(retarget(a));
      return lg::mk_last_it_app(t->name, std::move(args));
    }
    case K::VarApp: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(retarget(a));
      return lg::mk_var_app(t->name, t->var_is_const, t->var_is_array,
                            std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

FormulaPtr retarget(const FormulaPtr& f) {
  using K = lg::Formula::Kind;
  std::vector<TermPtr> ts;
  for (const auto& t : f->terms) ts.push_back(retarget(t));
  std::vector<FormulaPtr> fs;
  for (const auto& g : f->sub) fs.push_back(retarget(g));
  switch (f->kind) {
    case K::True:
    case K::False:
      return f;
    case K::Eq:
      return lg::mk_eq(ts[0], ts[1]);
    case K::NatLeq:
      return lg::mk_nat_leq(ts[0], ts[1]);
    case K::IntCmp:
      return lg::mk_int_cmp(f->cmp, ts[0], ts[1]);
    case K::Reach:
      return lg::mk_reach(ts[0]);
    case K::Not:
      return lg::mk_not(fs[0]);
    case K::And:
      return lg::mk_and(std::move(fs));
    case K::Or:
      return lg::mk_or(std::move(fs));
    case K::Implies:
      return lg::mk_implies(fs[0], fs[1]);
    case K::Iff:
      return lg::mk_iff(fs[0], fs[1]);
    case K::Forall:
      return lg::mk_forall(f->binders, fs[0]);
    case K::Exists:
      return lg::mk_exists(f->binders, fs[0]);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

FormulaPtr eq_formula(const VarDecl& v, TermPtr tp1, TermPtr tp2) {
  if (!v.is_array()) return lg::mk_eq(var_at(v, tp1), var_at(v, tp2));
  auto pos = lg::mk_var("pos", lg::Sort::Int);
  return lg::mk_forall({{"pos", lg::Sort::Int}},
                       lg::mk_eq(arr_at(v, tp1, pos), arr_at(v, tp2, pos)));
}

FormulaPtr eqall_formula(const ProgramModel& m, TermPtr tp1, TermPtr tp2) {
  return Gen{m, {}}.eqall(tp1, tp2);
}

TermPtr eval_expr_at(const ast::Program& p, const ast::ExprPtr& e,
                     TermPtr tp) {
  using K = ast::Expr::Kind;
  switch (e->kind) {
    case K::IntConst:
      return lg::mk_int(e->value);
    case K::VarRead: {
      const VarDecl* d = p.find_var(e->var);
      if (d->is_const()) return lg::mk_var_app(d->name, true, false, {});
      return var_at(*d, tp);
    }
    case K::ArrRead: {
      const VarDecl* d = p.find_var(e->var);
      auto idx = eval_expr_at(p, e->lhs, tp);
      if (d->is_const())
        return lg::mk_var_app(d->name, true, true, {std::move(idx)});
      return arr_at(*d, tp, std::move(idx));
    }
    case K::Bin: {
      if (!ast::is_arith(e->op))
        throw lg::SortError("boolean expression in arithmetic position");
      lg::IntOp op = e->op == ast::BinOp::Add ? lg::IntOp::Add
                   : e->op == ast::BinOp::Sub ? lg::IntOp::Sub
                                              : lg::IntOp::Mul;
      return lg::mk_int_bin(op, eval_expr_at(p, e->lhs, tp),
                            eval_expr_at(p, e->rhs, tp));
    }
    case K::LengthOf:
      return lg::mk_length(e->var);
    case K::Not:
      throw lg::SortError("boolean expression in arithmetic position");
  }
  throw std::logic_error("unreachable");
}

FormulaPtr eval_cond_at(const ast::Program& p, const ast::ExprPtr& e,
                        TermPtr tp) {
  using B = ast::BinOp;
  if (e->kind == ast::Expr::Kind::Not)
    return lg::mk_not(eval_cond_at(p, e->lhs, tp));
  if (e->kind != ast::Expr::Kind::Bin || ast::is_arith(e->op))
    throw lg::SortError("arithmetic expression in boolean position");
  if (e->op == B::And || e->op == B::Or) {
    std::vector<FormulaPtr> parts{eval_cond_at(p, e->lhs, tp),
                                  eval_cond_at(p, e->rhs, tp)};
    return e->op == B::And ? lg::mk_and(std::move(parts))
                           : lg::mk_or(std::move(parts));
  }
  auto a = eval_expr_at(p, e->lhs, tp);
  auto b = eval_expr_at(p, e->rhs, tp);
  switch (e->op) {
    case B::Lt: return lg::mk_int_cmp(lg::CmpOp::Lt, a, b);
    case B::Le: return lg::mk_int_cmp(lg::CmpOp::Le, a, b);
    case B::Gt: return lg::mk_int_cmp(lg::CmpOp::Gt, a, b);
    case B::Ge: return lg::mk_int_cmp(lg::CmpOp::Ge, a, b);
    case B::Eq: return lg::mk_eq(a, b);
    case B::Ne: return lg::mk_not(lg::mk_eq(a, b));
    default: throw std::logic_error("unreachable");
  }
}

FormulaPtr update_formula(const ProgramModel& m, const VarDecl& v,
                          const ast::ExprPtr& e, TermPtr tp1, TermPtr tp2) {
  return Gen{m, {}}.update(v, e, tp1, tp2);
}

FormulaPtr update_arr_formula(const ProgramModel& m, const VarDecl& v,
                              const ast::ExprPtr& e1, const ast::ExprPtr& e2,
                              TermPtr tp1, TermPtr tp2) {
  return Gen{m, {}}.update_arr(v, e1, e2, tp1, tp2);
}

FormulaPtr statement_semantics(const ProgramModel& m, const Stmt* s) {
  return Gen{m, {}}.stmt_body(s);
}

std::vector<LabeledFormula> theory_axioms() {
  auto x = lg::mk_var("x", lg::Sort::Nat);
  auto y = lg::mk_var("y", lg::Sort::Nat);
  lg::Binder bx{"x", lg::Sort::Nat};
  lg::Binder by{"y", lg::Sort::Nat};
  return {
      {"theory-nat-leq-zero",
       lg::mk_forall({bx}, lg::mk_nat_leq(lg::mk_zero(), x))},
      {"theory-nat-suc-not-leq-zero",
       lg::mk_forall({bx},
                     lg::mk_not(lg::mk_nat_leq(lg::mk_suc(x), lg::mk_zero())))},
      {"theory-nat-leq-suc",
       lg::mk_forall({bx, by},
                     lg::mk_iff(lg::mk_nat_leq(lg::mk_suc(x), lg::mk_suc(y)),
                                lg::mk_nat_leq(x, y)))},
      {"theory-nat-pred-suc",
       lg::mk_forall({bx}, lg::mk_eq(lg::mk_pred(lg::mk_suc(x)), x))},
  };
}

std::vector<LabeledFormula> reach_axioms(const ProgramModel& m) {
  return Gen{m, {}}.all_reach();
}

FormulaPtr embed_property(const FormulaPtr& surface) {
  return retarget(surface);
}

VerificationTask build_task(const ast::Program& p, const GenOptions& opts) {
  ProgramModel m(p);
  VerificationTask task;
  task.signature = m.signature();
  task.theory_axioms = theory_axioms();
  Gen g{m, opts};
  task.semantics_axioms = g.all_semantics();
  task.reach_axioms = g.all_reach();
  if (opts.include_lemmas)
    task.lemma_instances = lem::as_labeled(lem::instantiate_all(m));
  task.conjecture = {"conjecture", embed_property(p.assertion)};

  for (const auto* group :
       {&task.theory_axioms, &task.semantics_axioms, &task.reach_axioms,
        &task.lemma_instances})
    for (const auto& lf : *group) model::sort_check(lf.formula, task.signature);
  model::sort_check(task.conjecture.formula, task.signature);
  return task;
}

}  // namespace tracegen::sem
