#include "tracegen/lemmas.hpp"

namespace tracegen::lem {

namespace lg = logic;
using ast::Stmt;
using ast::VarDecl;
using lg::FormulaPtr;
using lg::TermPtr;
using model::ProgramModel;

namespace {

constexpr const char* kPos = "pos";

// v's value at timepoint t; array variables read at the shared lifted
// position variable.
TermPtr val(const VarDecl& v, TermPtr t) {
  if (v.is_array())
    return lg::mk_var_app(v.name, false, true,
                          {std::move(t), lg::mk_var(kPos, lg::Sort::Int)});
  return lg::mk_var_app(v.name, false, false, {std::move(t)});
}

TermPtr plus_one(TermPtr t) {
  return lg::mk_int_bin(lg::IntOp::Add, std::move(t), lg::mk_int(1));
}

FormulaPtr rel(bool leq, TermPtr a, TermPtr b) {
  if (leq) return lg::mk_int_cmp(lg::CmpOp::Le, std::move(a), std::move(b));
  return lg::mk_eq(std::move(a), std::move(b));
}

// Wraps a lemma body with the enclosing-iteration quantifiers (outermost)
// and, for array variables, the lifted position quantifier.
FormulaPtr close_over(const ProgramModel& m, const Stmt* w, const VarDecl& v,
                      FormulaPtr body) {
  if (v.is_array())
    body = lg::mk_forall({{kPos, lg::Sort::Int}}, std::move(body));
  std::vector<lg::Binder> encl;
  for (const Stmt* e : m.enclosing_loops(w))
    encl.push_back({m.iter_var(e)->name, lg::Sort::Nat});
  return lg::mk_forall(std::move(encl), std::move(body));
}

std::string label_for(const char* kind, const ProgramModel& m, const Stmt* w,
                      const VarDecl& v) {
  return std::string("lemma-") + kind + "-" + m.loc_name(w) + "-" + v.name;
}

}  // namespace

FormulaPtr dense_formula(const ProgramModel& m, const Stmt* w,
                         const VarDecl& v) {
  auto it = lg::mk_var("it", lg::Sort::Nat);
  auto cur = val(v, m.tp(w, it));
  auto nxt = val(v, m.tp(w, lg::mk_suc(it)));
  auto step = lg::mk_or({lg::mk_eq(nxt, cur), lg::mk_eq(nxt, plus_one(cur))});
  return lg::mk_forall(
      {{"it", lg::Sort::Nat}},
      lg::mk_implies(lg::nat_less(it, m.last_it(w)), std::move(step)));
}

LemmaInstance lemma_a1(const ProgramModel& m, const Stmt* w, const VarDecl& v,
                       bool leq_rel) {
  auto bl = lg::mk_var("bl", lg::Sort::Nat);
  auto br = lg::mk_var("br", lg::Sort::Nat);
  auto it = lg::mk_var("it", lg::Sort::Nat);
  auto at_bl = val(v, m.tp(w, bl));

  auto ind_pre = lg::mk_and({lg::mk_nat_leq(bl, it), lg::nat_less(it, br),
                             rel(leq_rel, at_bl, val(v, m.tp(w, it)))});
  auto ind_step =
      rel(leq_rel, at_bl, val(v, m.tp(w, lg::mk_suc(it))));
  auto induction = lg::mk_forall(
      {{"it", lg::Sort::Nat}},
      lg::mk_implies(std::move(ind_pre), std::move(ind_step)));

  auto conclusion = lg::mk_implies(
      lg::mk_nat_leq(bl, br), rel(leq_rel, at_bl, val(v, m.tp(w, br))));
  auto body = lg::mk_forall(
      {{"bl", lg::Sort::Nat}, {"br", lg::Sort::Nat}},
      lg::mk_implies(std::move(induction), std::move(conclusion)));

  return {leq_rel ? LemmaInstance::Kind::A1Leq : LemmaInstance::Kind::A1Eq,
          w, v.name, close_over(m, w, v, std::move(body)),
          label_for(leq_rel ? "a1-leq" : "a1-eq", m, w, v)};
}

LemmaInstance lemma_b1(const ProgramModel& m, const Stmt* w,
                       const VarDecl& v) {
  auto x = lg::mk_var("x", lg::Sort::Int);
  auto it = lg::mk_var("it", lg::Sort::Nat);
  auto n = m.last_it(w);

  auto pre = lg::mk_and(
      {dense_formula(m, w, v),
       lg::mk_int_cmp(lg::CmpOp::Le, val(v, m.tp(w, lg::mk_zero())), x),
       lg::mk_int_cmp(lg::CmpOp::Lt, x, val(v, m.tp(w, n)))});
  auto cur = val(v, m.tp(w, it));
  auto hit = lg::mk_exists(
      {{"it", lg::Sort::Nat}},
      lg::mk_and({lg::nat_less(it, n), lg::mk_eq(cur, x),
                  lg::mk_eq(val(v, m.tp(w, lg::mk_suc(it))), plus_one(cur))}));
  auto body =
      lg::mk_forall({{"x", lg::Sort::Int}},
                    lg::mk_implies(std::move(pre), std::move(hit)));

  return {LemmaInstance::Kind::B1, w, v.name,
          close_over(m, w, v, std::move(body)), label_for("b1", m, w, v)};
}

LemmaInstance lemma_b2(const ProgramModel& m, const Stmt* w,
                       const VarDecl& v) {
  auto it1 = lg::mk_var("it1", lg::Sort::Nat);
  auto it2 = lg::mk_var("it2", lg::Sort::Nat);
  auto n = m.last_it(w);

  auto at1 = val(v, m.tp(w, it1));
  auto pre = lg::mk_and(
      {dense_formula(m, w, v),
       lg::mk_eq(val(v, m.tp(w, lg::mk_suc(it1))), plus_one(at1)),
       lg::nat_less(it1, it2), lg::mk_nat_leq(it2, n)});
  auto body = lg::mk_forall(
      {{"it1", lg::Sort::Nat}, {"it2", lg::Sort::Nat}},
      lg::mk_implies(std::move(pre),
                     lg::mk_not(lg::mk_eq(at1, val(v, m.tp(w, it2))))));

  return {LemmaInstance::Kind::B2, w, v.name,
          close_over(m, w, v, std::move(body)), label_for("b2", m, w, v)};
}

std::vector<LemmaInstance> instantiate_all(const ProgramModel& m) {
  std::vector<LemmaInstance> out;
  for (const Stmt* w : m.whiles()) {
    for (const auto& v : m.mutable_vars()) {
      out.push_back(lemma_a1(m, w, v, false));
      out.push_back(lemma_a1(m, w, v, true));
      out.push_back(lemma_b1(m, w, v));
      out.push_back(lemma_b2(m, w, v));
    }
  }
  return out;
}

std::vector<sem::LabeledFormula> as_labeled(
    const std::vector<LemmaInstance>& instances) {
  std::vector<sem::LabeledFormula> out;
  for (const auto& i : instances) out.push_back({i.label, i.formula});
  return out;
}

}  // namespace tracegen::lem
