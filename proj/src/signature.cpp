#include "tracegen/signature.hpp"

#include <map>

namespace tracegen::model {

using logic::Formula;
using logic::FormulaPtr;
using logic::Sort;
using logic::SortError;
using logic::Term;
using logic::TermPtr;

const Signature::FuncSym* Signature::find_location(
    const std::string& name) const {
  for (const auto& f : locations)
    if (f.name == name) return &f;
  return nullptr;
}

const Signature::FuncSym* Signature::find_last_it(
    const std::string& name) const {
  for (const auto& f : last_its)
    if (f.name == name) return &f;
  return nullptr;
}

const Signature::VarSym* Signature::find_variable(
    const std::string& name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

bool Signature::has_array(const std::string& name) const {
  for (const auto& a : arrays)
    if (a == name) return true;
  return false;
}

namespace {

struct Checker {
  const Signature& sig;
  std::map<std::string, Sort> env;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw SortError("sort error at " + path + ": " + msg);
  }

  void check_term(const TermPtr& t, const std::string& path) {
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end())
          fail(path, "free variable '" + t->name + "'");
        if (it->second != t->sort)
          fail(path, "variable '" + t->name + "' used at sort " +
                         logic::sort_name(t->sort) + " but bound at " +
                         logic::sort_name(it->second));
        return;
      }
      case Term::Kind::LocApp: {
        const auto* sym = sig.find_location(t->name);
        if (!sym) fail(path, "unknown location symbol '" + t->name + "'");
        if (sym->nat_arity != t->args.size())
          fail(path, "location '" + t->name + "' expects " +
                         std::to_string(sym->nat_arity) + " iteration args, got " +
                         std::to_string(t->args.size()));
        break;
      }
      case Term::Kind::LastItApp: {
        const auto* sym = sig.find_last_it(t->name);
        if (!sym) fail(path, "unknown last-iteration symbol '" + t->name + "'");
        if (sym->nat_arity != t->args.size())
          fail(path, "symbol '" + t->name + "' expects " +
                         std::to_string(sym->nat_arity) + " args, got " +
                         std::to_string(t->args.size()));
        break;
      }
      case Term::Kind::VarApp: {
        const auto* v = sig.find_variable(t->name);
        if (!v) fail(path, "unknown program variable '" + t->name + "'");
        if (v->is_const != t->var_is_const || v->is_array != t->var_is_array)
          fail(path, "variable '" + t->name +
                         "' applied inconsistently with its declaration");
        break;
      }
      case Term::Kind::LengthConst:
        if (!sig.has_array(t->name))
          fail(path, "no length constant for '" + t->name + "'");
        break;
      default:
        break;
    }
    for (size_t i = 0; i < t->args.size(); ++i)
      check_term(t->args[i], path + "." + std::to_string(i));
  }

  void check_formula(const FormulaPtr& f, const std::string& path) {
    using K = Formula::Kind;
    if (f->kind == K::Forall || f->kind == K::Exists) {
      std::map<std::string, Sort> saved = env;
      for (const auto& b : f->binders) env[b.name] = b.sort;
      check_formula(f->sub[0], path + ".body");
      env = std::move(saved);
      return;
    }
    for (size_t i = 0; i < f->terms.size(); ++i)
      check_term(f->terms[i], path + ".t" + std::to_string(i));
    for (size_t i = 0; i < f->sub.size(); ++i)
      check_formula(f->sub[i], path + "." + std::to_string(i));
  }
};

}  // namespace

void sort_check(const FormulaPtr& f, const Signature& sig) {
  Checker{sig, {}}.check_formula(f, "root");
}

}  // namespace tracegen::model
