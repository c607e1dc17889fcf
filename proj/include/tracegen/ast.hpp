#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/logic.hpp"

// AST of the W while-language: a single main function over integer and
// integer-array variables, plus one trailing first-order assertion.

namespace tracegen::ast {

enum class VarKind { Int, Array };
enum class Mutability { Mutable, Const };

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Int;
  Mutability mut = Mutability::Mutable;

  bool is_array() const { return kind == VarKind::Array; }
  bool is_const() const { return mut == Mutability::Const; }
};

enum class BinOp { Add, Sub, Mul, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

bool is_arith(BinOp op);
bool is_cmp(BinOp op);
bool is_bool(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { IntConst, VarRead, ArrRead, Bin, Not, LengthOf };
  Kind kind;
  long long value = 0;    // IntConst
  std::string var;        // VarRead / ArrRead / LengthOf
  ExprPtr lhs, rhs;       // Bin; ArrRead index and Not operand in lhs
  BinOp op = BinOp::Add;  // Bin
};

ExprPtr mk_int_const(long long v);
ExprPtr mk_var_read(std::string name);
ExprPtr mk_arr_read(std::string name, ExprPtr index);
ExprPtr mk_bin(BinOp op, ExprPtr a, ExprPtr b);
ExprPtr mk_not(ExprPtr a);
ExprPtr mk_length_of(std::string array_name);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Context {
  std::vector<StmtPtr> stmts;
};

struct Stmt {
  enum class Kind { Skip, IntAssign, ArrAssign, IfElse, While };
  Kind kind;
  int line = 0;           // unique location key (1-based source line)
  bool synthetic = false; // inserted by desugaring, not present in source

  std::string target;  // IntAssign / ArrAssign
  ExprPtr index;       // ArrAssign
  ExprPtr expr;        // IntAssign / ArrAssign value
  ExprPtr cond;        // IfElse / While
  Context then_ctx;    // IfElse then-branch, While body
  Context else_ctx;    // IfElse

  bool is_while() const { return kind == Kind::While; }
};

struct Program {
  std::vector<VarDecl> decls;
  Context body;
  logic::FormulaPtr assertion;  // surface form over `main_end`
  int max_line = 0;             // last line used by any statement

  const VarDecl* find_var(const std::string& name) const;
};

// Structural equality ignoring statement line numbers and synthetic flags.
bool struct_equal(const Program& a, const Program& b);

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MutabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
using SortError = logic::SortError;

}  // namespace tracegen::ast
