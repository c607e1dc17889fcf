#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Many-sorted trace-logic terms and formulas. Immutable trees with
// structural equality; all construction goes through the factory
// functions below.

namespace tracegen::logic {

enum class Sort { Nat, Int, Time, Bool };

std::string sort_name(Sort s);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class IntOp { Add, Sub, Mul };

struct Term {
  enum class Kind {
    Var,       // logical variable, any sort
    Zero,      // Nat
    Suc,       // Nat -> Nat
    Pred,      // Nat -> Nat
    IntConst,  // Int
    IntBin,    // Int x Int -> Int
    LocApp,    // location symbol applied to Nat iteration terms -> Time
    LastItApp, // last-iteration symbol applied to Nat terms -> Nat
    VarApp,    // program variable: [tp][,pos] per mutability/kind -> Int
    LengthConst // per-array length constant -> Int
  };

  Kind kind;
  Sort sort;
  std::string name;  // Var, LocApp, LastItApp, VarApp, LengthConst
  long long value = 0;  // IntConst
  IntOp op = IntOp::Add;
  std::vector<TermPtr> args;
  // VarApp layout: mutable int [tp]; mutable array [tp,pos];
  // const int []; const array [pos].
  bool var_is_const = false;
  bool var_is_array = false;
};

TermPtr mk_var(std::string name, Sort sort);
TermPtr mk_zero();
TermPtr mk_suc(TermPtr t);
TermPtr mk_pred(TermPtr t);
TermPtr nat_const(unsigned long long n);  // suc^n(zero)
TermPtr mk_int(long long v);
TermPtr mk_int_bin(IntOp op, TermPtr a, TermPtr b);
TermPtr mk_loc_app(std::string name, std::vector<TermPtr> iters);
TermPtr mk_last_it_app(std::string name, std::vector<TermPtr> iters);
TermPtr mk_var_app(std::string name, bool is_const, bool is_array,
                   std::vector<TermPtr> args);
TermPtr mk_length(std::string array_name);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class CmpOp { Lt, Le, Gt, Ge };

struct Binder {
  std::string name;
  Sort sort;
};

struct Formula {
  enum class Kind {
    True, False,
    Eq,       // terms[0] == terms[1], same sort
    NatLeq,   // terms over Nat
    IntCmp,   // cmp over Int
    Reach,    // terms[0] : Time
    Not, And, Or, Implies, Iff,
    Forall, Exists
  };

  Kind kind;
  CmpOp cmp = CmpOp::Lt;
  std::vector<TermPtr> terms;
  std::vector<FormulaPtr> sub;
  std::vector<Binder> binders;
};

FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_eq(TermPtr a, TermPtr b);
FormulaPtr mk_nat_leq(TermPtr a, TermPtr b);
// Nat strict less-than, kept in the leq(suc(a), b) normal form.
FormulaPtr nat_less(TermPtr a, TermPtr b);
FormulaPtr mk_int_cmp(CmpOp op, TermPtr a, TermPtr b);
FormulaPtr mk_reach(TermPtr tp);
FormulaPtr mk_not(FormulaPtr f);
// Empty conjunction/disjunction collapse to True/False.
FormulaPtr mk_and(std::vector<FormulaPtr> fs);
FormulaPtr mk_or(std::vector<FormulaPtr> fs);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
// Empty binder lists collapse to the body.
FormulaPtr mk_forall(std::vector<Binder> binders, FormulaPtr body);
FormulaPtr mk_exists(std::vector<Binder> binders, FormulaPtr body);

bool term_equal(const TermPtr& a, const TermPtr& b);
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

std::string term_to_string(const TermPtr& t);
std::string formula_to_string(const FormulaPtr& f);

// Grounding: map from Nat-sorted variable names to ground Nat terms.
using Grounding = std::map<std::string, TermPtr>;

TermPtr apply_grounding(const TermPtr& t, const Grounding& g);
FormulaPtr apply_grounding(const FormulaPtr& f, const Grounding& g);

// Free logical variables of a formula (by name).
std::vector<std::string> free_vars(const FormulaPtr& f);

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tracegen::logic
