#include "tracegen/smtlib.hpp"

#include <sstream>

namespace tracegen::backend {

namespace lg = logic;
using lg::Formula;
using lg::FormulaPtr;
using lg::Term;
using lg::TermPtr;

namespace {

struct Emitter {
  const EmissionConfig& cfg;
  std::ostringstream out;

  bool integer() const { return cfg.nat_mode == NatMode::Integer; }

  const char* sort_name(lg::Sort s) const {
    switch (s) {
      case lg::Sort::Nat: return integer() ? "Int" : "Nat";
      case lg::Sort::Int: return "Int";
      case lg::Sort::Time: return "Time";
      case lg::Sort::Bool: return "Bool";
    }
    return "?";
  }

  void term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Var:
        out << t->name;
        return;
      case Term::Kind::Zero:
        out << (integer() ? "0" : "zero");
        return;
      case Term::Kind::Suc:
        out << (integer() ? "(+ " : "(suc ");
        term(t->args[0]);
        out << (integer() ? " 1)" : ")");
        return;
      case Term::Kind::Pred:
        // integer embedding: pred is cut off at zero
        if (integer()) {
          out << "(ite (= ";
          term(t->args[0]);
          out << " 0) 0 (- ";
          term(t->args[0]);
          out << " 1))";
        } else {
          out << "(pred ";
          term(t->args[0]);
          out << ")";
        }
        return;
      case Term::Kind::IntConst:
        if (t->value < 0)
          out << "(- " << -t->value << ")";
        else
          out << t->value;
        return;
      case Term::Kind::IntBin: {
        const char* op = t->op == lg::IntOp::Add ? "+"
                       : t->op == lg::IntOp::Sub ? "-"
                                                 : "*";
        out << "(" << op << " ";
        term(t->args[0]);
        out << " ";
        term(t->args[1]);
        out << ")";
        return;
      }
      case Term::Kind::LocApp:
      case Term::Kind::LastItApp:
      case Term::Kind::VarApp:
        app(t->name, t->args);
        return;
      case Term::Kind::LengthConst:
        out << t->name << "_length";
        return;
    }
  }

  void app(const std::string& name, const std::vector<TermPtr>& args) {
    if (args.empty()) {
      out << name;
      return;
    }
    out << "(" << name;
    for (const auto& a : args) {
      out << " ";
      term(a);
    }
    out << ")";
  }

  void nary(const char* op, const FormulaPtr& f) {
    out << "(" << op;
    for (const auto& s : f->sub) {
      out << " ";
      formula(s);
    }
    out << ")";
  }

  void binop(const char* op, const FormulaPtr& f) {
    out << "(" << op << " ";
    term(f->terms[0]);
    out << " ";
    term(f->terms[1]);
    out << ")";
  }

  void quant(const FormulaPtr& f, bool universal) {
    out << (universal ? "(forall (" : "(exists (");
    for (size_t i = 0; i < f->binders.size(); ++i) {
      if (i) out << " ";
      out << "(" << f->binders[i].name << " " << sort_name(f->binders[i].sort)
          << ")";
    }
    out << ") ";
    // integer mode constrains Nat binders to the non-negative range
    std::vector<std::string> guards;
    if (integer())
      for (const auto& b : f->binders)
        if (b.sort == lg::Sort::Nat) guards.push_back(b.name);
    if (guards.empty()) {
      formula(f->sub[0]);
    } else {
      std::ostringstream g;
      for (size_t i = 0; i < guards.size(); ++i)
        g << (i ? " " : "") << "(<= 0 " << guards[i] << ")";
      std::string gs = guards.size() == 1 ? g.str() : "(and " + g.str() + ")";
      out << (universal ? "(=> " : "(and ") << gs << " ";
      formula(f->sub[0]);
      out << ")";
    }
    out << ")";
  }

  void formula(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::True: out << "true"; return;
      case K::False: out << "false"; return;
      case K::Eq: binop("=", f); return;
      case K::NatLeq: binop(integer() ? "<=" : "leq", f); return;
      case K::IntCmp: {
        const char* op = f->cmp == lg::CmpOp::Lt ? "<"
                       : f->cmp == lg::CmpOp::Le ? "<="
                       : f->cmp == lg::CmpOp::Gt ? ">"
                                                 : ">=";
        binop(op, f);
        return;
      }
      case K::Reach:
        out << "(Reach ";
        term(f->terms[0]);
        out << ")";
        return;
      case K::Not:
        out << "(not ";
        formula(f->sub[0]);
        out << ")";
        return;
      case K::And: nary("and", f); return;
      case K::Or: nary("or", f); return;
      case K::Implies: nary("=>", f); return;
      case K::Iff: binop_f("=", f); return;
      case K::Forall: quant(f, true); return;
      case K::Exists: quant(f, false); return;
    }
  }

  void binop_f(const char* op, const FormulaPtr& f) {
    out << "(" << op << " ";
    formula(f->sub[0]);
    out << " ";
    formula(f->sub[1]);
    out << ")";
  }

  void named_assert(const sem::LabeledFormula& lf, bool negate = false) {
    out << "(assert (! ";
    if (negate) out << "(not ";
    formula(lf.formula);
    if (negate) out << ")";
    out << " :named " << lf.label << "))\n";
  }

  void declarations(const model::Signature& sig) {
    out << "(declare-sort Time 0)\n";
    if (!integer()) {
      out << "(declare-datatypes ((Nat 0)) (((zero) (suc (pred Nat)))))\n";
      out << "(declare-fun leq (Nat Nat) Bool)\n";
    }
    out << "(declare-fun Reach (Time) Bool)\n";
    auto func = [&](const model::Signature::FuncSym& f, const char* res) {
      out << "(declare-fun " << f.name << " (";
      for (size_t i = 0; i < f.nat_arity; ++i)
        out << (i ? " " : "") << sort_name(lg::Sort::Nat);
      out << ") " << res << ")\n";
    };
    for (const auto& l : sig.locations) func(l, "Time");
    for (const auto& n : sig.last_its) func(n, sort_name(lg::Sort::Nat));
    for (const auto& v : sig.variables) {
      out << "(declare-fun " << v.name << " (";
      bool first = true;
      if (!v.is_const) {
        out << "Time";
        first = false;
      }
      if (v.is_array) out << (first ? "" : " ") << "Int";
      out << ") Int)\n";
    }
    for (const auto& a : sig.arrays)
      out << "(declare-fun " << a << "_length () Int)\n";
    // the integer embedding needs explicit range facts for the declared
    // Nat-valued symbols; quantifier guards only cover bound variables
    if (integer()) {
      for (const auto& n : sig.last_its) {
        out << "(assert (! ";
        if (n.nat_arity == 0) {
          out << "(<= 0 " << n.name << ")";
        } else {
          out << "(forall (";
          for (size_t i = 0; i < n.nat_arity; ++i)
            out << (i ? " " : "") << "(it" << i << " Int)";
          out << ") (<= 0 (" << n.name;
          for (size_t i = 0; i < n.nat_arity; ++i) out << " it" << i;
          out << ")))";
        }
        out << " :named nat-range-" << n.name << "))\n";
      }
    }
  }
};

}  // namespace

std::string emit_smtlib(const sem::VerificationTask& task,
                        const EmissionConfig& cfg) {
  Emitter e{cfg, {}};
  e.out << "(set-logic ALL)\n";
  e.declarations(task.signature);
  if (!e.integer()) {
    e.out << "; Nat theory\n";
    for (const auto& lf : task.theory_axioms) e.named_assert(lf);
  }
  e.out << "; program semantics\n";
  for (const auto& lf : task.semantics_axioms) e.named_assert(lf);
  e.out << "; reachability\n";
  for (const auto& lf : task.reach_axioms) e.named_assert(lf);
  if (cfg.include_lemmas && !task.lemma_instances.empty()) {
    e.out << "; trace lemmas\n";
    for (const auto& lf : task.lemma_instances) e.named_assert(lf);
  }
  e.out << "; conjecture\n";
  if (cfg.conjecture_mode == ConjectureMode::AssertNot) {
    e.out << "(assert-not ";
    e.formula(task.conjecture.formula);
    e.out << ")\n";
  } else {
    e.named_assert(task.conjecture, /*negate=*/true);
  }
  e.out << "(check-sat)\n";
  return e.out.str();
}

}  // namespace tracegen::backend
