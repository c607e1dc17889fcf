#include "tracegen/logic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tracegen::logic {

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::Nat: return "Nat";
    case Sort::Int: return "Int";
    case Sort::Time: return "Time";
    case Sort::Bool: return "Bool";
  }
  return "?";
}

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw SortError(msg);
}

}  // namespace

TermPtr mk_var(std::string name, Sort sort) {
  Term t;
  t.kind = Term::Kind::Var;
  t.sort = sort;
  t.name = std::move(name);
  return make(std::move(t));
}

TermPtr mk_zero() {
  Term t;
  t.kind = Term::Kind::Zero;
  t.sort = Sort::Nat;
  return make(std::move(t));
}

TermPtr mk_suc(TermPtr a) {
  require(a->sort == Sort::Nat, "suc expects a Nat term");
  Term t;
  t.kind = Term::Kind::Suc;
  t.sort = Sort::Nat;
  t.args = {std::move(a)};
  return make(std::move(t));
}

TermPtr mk_pred(TermPtr a) {
  require(a->sort == Sort::Nat, "pred expects a Nat term");
  Term t;
  t.kind = Term::Kind::Pred;
  t.sort = Sort::Nat;
  t.args = {std::move(a)};
  return make(std::move(t));
}

TermPtr nat_const(unsigned long long n) {
  TermPtr t = mk_zero();
  for (unsigned long long i = 0; i < n; ++i) t = mk_suc(t);
  return t;
}

TermPtr mk_int(long long v) {
  Term t;
  t.kind = Term::Kind::IntConst;
  t.sort = Sort::Int;
  t.value = v;
  return make(std::move(t));
}

TermPtr mk_int_bin(IntOp op, TermPtr a, TermPtr b) {
  require(a->sort == Sort::Int && b->sort == Sort::Int,
          "integer operation expects Int operands");
  Term t;
  t.kind = Term::Kind::IntBin;
  t.sort = Sort::Int;
  t.op = op;
  t.args = {std::move(a), std::move(b)};
  return make(std::move(t));
}

TermPtr mk_loc_app(std::string name, std::vector<TermPtr> iters) {
  for (const auto& it : iters)
    require(it->sort == Sort::Nat, "location argument must be Nat");
  Term t;
  t.kind = Term::Kind::LocApp;
  t.sort = Sort::Time;
  t.name = std::move(name);
  t.args = std::move(iters);
  return make(std::move(t));
}

TermPtr mk_last_it_app(std::string name, std::vector<TermPtr> iters) {
  for (const auto& it : iters)
    require(it->sort == Sort::Nat, "last-iteration argument must be Nat");
  Term t;
  t.kind = Term::Kind::LastItApp;
  t.sort = Sort::Nat;
  t.name = std::move(name);
  t.args = std::move(iters);
  return make(std::move(t));
}

TermPtr mk_var_app(std::string name, bool is_const, bool is_array,
                   std::vector<TermPtr> args) {
  size_t expected = (is_const ? 0u : 1u) + (is_array ? 1u : 0u);
  require(args.size() == expected, "program variable " + name +
                                       " applied to wrong argument count");
  size_t i = 0;
  if (!is_const) require(args[i++]->sort == Sort::Time,
                         "first argument of mutable variable must be Time");
  if (is_array) require(args[i]->sort == Sort::Int,
                        "array position must be Int");
  Term t;
  t.kind = Term::Kind::VarApp;
  t.sort = Sort::Int;
  t.name = std::move(name);
  t.args = std::move(args);
  t.var_is_const = is_const;
  t.var_is_array = is_array;
  return make(std::move(t));
}

TermPtr mk_length(std::string array_name) {
  Term t;
  t.kind = Term::Kind::LengthConst;
  t.sort = Sort::Int;
  t.name = std::move(array_name);
  return make(std::move(t));
}

FormulaPtr mk_true() {
  Formula f;
  f.kind = Formula::Kind::True;
  return make(std::move(f));
}

FormulaPtr mk_false() {
  Formula f;
  f.kind = Formula::Kind::False;
  return make(std::move(f));
}

FormulaPtr mk_eq(TermPtr a, TermPtr b) {
  require(a->sort == b->sort, "equality operands must share a sort (" +
                                  sort_name(a->sort) + " vs " +
                                  sort_name(b->sort) + ")");
  Formula f;
  f.kind = Formula::Kind::Eq;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FormulaPtr mk_nat_leq(TermPtr a, TermPtr b) {
  require(a->sort == Sort::Nat && b->sort == Sort::Nat,
          "leq expects Nat operands");
  Formula f;
  f.kind = Formula::Kind::NatLeq;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FormulaPtr nat_less(TermPtr a, TermPtr b) {
  return mk_nat_leq(mk_suc(std::move(a)), std::move(b));
}

FormulaPtr mk_int_cmp(CmpOp op, TermPtr a, TermPtr b) {
  require(a->sort == Sort::Int && b->sort == Sort::Int,
          "integer comparison expects Int operands");
  Formula f;
  f.kind = Formula::Kind::IntCmp;
  f.cmp = op;
  f.terms = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FormulaPtr mk_reach(TermPtr tp) {
  require(tp->sort == Sort::Time, "Reach expects a Time term");
  Formula f;
  f.kind = Formula::Kind::Reach;
  f.terms = {std::move(tp)};
  return make(std::move(f));
}

FormulaPtr mk_not(FormulaPtr a) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.sub = {std::move(a)};
  return make(std::move(f));
}

FormulaPtr mk_and(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return mk_true();
  if (fs.size() == 1) return fs[0];
  Formula f;
  f.kind = Formula::Kind::And;
  f.sub = std::move(fs);
  return make(std::move(f));
}

FormulaPtr mk_or(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return mk_false();
  if (fs.size() == 1) return fs[0];
  Formula f;
  f.kind = Formula::Kind::Or;
  f.sub = std::move(fs);
  return make(std::move(f));
}

FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::Implies;
  f.sub = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::Iff;
  f.sub = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FormulaPtr mk_forall(std::vector<Binder> binders, FormulaPtr body) {
  if (binders.empty()) return body;
  Formula f;
  f.kind = Formula::Kind::Forall;
  f.binders = std::move(binders);
  f.sub = {std::move(body)};
  return make(std::move(f));
}

FormulaPtr mk_exists(std::vector<Binder> binders, FormulaPtr body) {
  if (binders.empty()) return body;
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.binders = std::move(binders);
  f.sub = {std::move(body)};
  return make(std::move(f));
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->sort != b->sort || a->name != b->name ||
      a->value != b->value || a->op != b->op ||
      a->var_is_const != b->var_is_const ||
      a->var_is_array != b->var_is_array ||
      a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->cmp != b->cmp ||
      a->terms.size() != b->terms.size() || a->sub.size() != b->sub.size() ||
      a->binders.size() != b->binders.size())
    return false;
  for (size_t i = 0; i < a->binders.size(); ++i)
    if (a->binders[i].name != b->binders[i].name ||
        a->binders[i].sort != b->binders[i].sort)
      return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!term_equal(a->terms[i], b->terms[i])) return false;
  for (size_t i = 0; i < a->sub.size(); ++i)
    if (!formula_equal(a->sub[i], b->sub[i])) return false;
  return true;
}

namespace {

void print_term(std::ostream& os, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: os << t->name; return;
    case Term::Kind::Zero: os << "zero"; return;
    case Term::Kind::Suc:
      os << "suc(";
      print_term(os, t->args[0]);
      os << ")";
      return;
    case Term::Kind::Pred:
      os << "pred(";
      print_term(os, t->args[0]);
      os << ")";
      return;
    case Term::Kind::IntConst: os << t->value; return;
    case Term::Kind::IntBin: {
      os << "(";
      print_term(os, t->args[0]);
      os << (t->op == IntOp::Add ? " + " : t->op == IntOp::Sub ? " - " : " * ");
      print_term(os, t->args[1]);
      os << ")";
      return;
    }
    case Term::Kind::LocApp:
    case Term::Kind::LastItApp:
    case Term::Kind::VarApp: {
      os << t->name;
      if (!t->args.empty()) {
        os << "(";
        for (size_t i = 0; i < t->args.size(); ++i) {
          if (i) os << ",";
          print_term(os, t->args[i]);
        }
        os << ")";
      }
      return;
    }
    case Term::Kind::LengthConst: os << t->name << "_length"; return;
  }
}

const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return " < ";
    case CmpOp::Le: return " <= ";
    case CmpOp::Gt: return " > ";
    case CmpOp::Ge: return " >= ";
  }
  return "?";
}

void print_formula(std::ostream& os, const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Eq:
      print_term(os, f->terms[0]);
      os << " = ";
      print_term(os, f->terms[1]);
      return;
    case K::NatLeq:
      os << "leq(";
      print_term(os, f->terms[0]);
      os << ",";
      print_term(os, f->terms[1]);
      os << ")";
      return;
    case K::IntCmp:
      print_term(os, f->terms[0]);
      os << cmp_str(f->cmp);
      print_term(os, f->terms[1]);
      return;
    case K::Reach:
      os << "Reach(";
      print_term(os, f->terms[0]);
      os << ")";
      return;
    case K::Not:
      os << "~(";
      print_formula(os, f->sub[0]);
      os << ")";
      return;
    case K::And:
    case K::Or: {
      os << "(";
      for (size_t i = 0; i < f->sub.size(); ++i) {
        if (i) os << (f->kind == K::And ? " & " : " | ");
        print_formula(os, f->sub[i]);
      }
      os << ")";
      return;
    }
    case K::Implies:
      os << "(";
      print_formula(os, f->sub[0]);
      os << " -> ";
      print_formula(os, f->sub[1]);
      os << ")";
      return;
    case K::Iff:
      os << "(";
      print_formula(os, f->sub[0]);
      os << " <-> ";
      print_formula(os, f->sub[1]);
      os << ")";
      return;
    case K::Forall:
    case K::Exists: {
      os << (f->kind == K::Forall ? "forall " : "exists ");
      for (size_t i = 0; i < f->binders.size(); ++i) {
        if (i) os << ",";
        os << f->binders[i].name << ":" << sort_name(f->binders[i].sort);
      }
      os << ". (";
      print_formula(os, f->sub[0]);
      os << ")";
      return;
    }
  }
}

}  // namespace

std::string term_to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::string formula_to_string(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}

TermPtr apply_grounding(const TermPtr& t, const Grounding& g) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = g.find(t->name);
      if (it != g.end()) return it->second;
      return t;
    }
    case Term::Kind::Zero:
    case Term::Kind::IntConst:
    case Term::Kind::LengthConst:
      return t;
    default: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) {
        auto na = apply_grounding(a, g);
        changed |= (na != a);
        args.push_back(std::move(na));
      }
      if (!changed) return t;
      Term copy = *t;
      copy.args = std::move(args);
      return std::make_shared<const Term>(std::move(copy));
    }
  }
}

FormulaPtr apply_grounding(const FormulaPtr& f, const Grounding& g) {
  using K = Formula::Kind;
  if (g.empty()) return f;
  if (f->kind == K::Forall || f->kind == K::Exists) {
    // Shadowed names drop out of the substitution. Range terms are
    // ground, so no capture is possible.
    Grounding inner = g;
    for (const auto& b : f->binders) inner.erase(b.name);
    auto body = apply_grounding(f->sub[0], inner);
    if (body == f->sub[0]) return f;
    Formula copy = *f;
    copy.sub = {std::move(body)};
    return std::make_shared<const Formula>(std::move(copy));
  }
  bool changed = false;
  std::vector<TermPtr> terms;
  terms.reserve(f->terms.size());
  for (const auto& t : f->terms) {
    auto nt = apply_grounding(t, g);
    changed |= (nt != t);
    terms.push_back(std::move(nt));
  }
  std::vector<FormulaPtr> sub;
  sub.reserve(f->sub.size());
  for (const auto& s : f->sub) {
    auto ns = apply_grounding(s, g);
    changed |= (ns != s);
    sub.push_back(std::move(ns));
  }
  if (!changed) return f;
  Formula copy = *f;
  copy.terms = std::move(terms);
  copy.sub = std::move(sub);
  return std::make_shared<const Formula>(std::move(copy));
}

namespace {

void collect_free_term(const TermPtr& t, const std::set<std::string>& bound,
                       std::set<std::string>& out) {
  if (t->kind == Term::Kind::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  }
  for (const auto& a : t->args) collect_free_term(a, bound, out);
}

void collect_free(const FormulaPtr& f, std::set<std::string> bound,
                  std::set<std::string>& out) {
  using K = Formula::Kind;
  if (f->kind == K::Forall || f->kind == K::Exists) {
    for (const auto& b : f->binders) bound.insert(b.name);
  }
  for (const auto& t : f->terms) collect_free_term(t, bound, out);
  for (const auto& s : f->sub) collect_free(s, bound, out);
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free(f, {}, out);
  return {out.begin(), out.end()};
}

}  // namespace tracegen::logic
