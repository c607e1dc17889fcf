#include "tracegen/ast.hpp"

namespace tracegen::ast {

bool is_arith(BinOp op) {
  return op == BinOp::Add || op == BinOp::Sub || op == BinOp::Mul;
}

bool is_cmp(BinOp op) {
  switch (op) {
    case BinOp::Lt:
    case BinOp::Le:
    case BinOp::Gt:
    case BinOp::Ge:
    case BinOp::Eq:
    case BinOp::Ne:
      return true;
    default:
      return false;
  }
}

bool is_bool(BinOp op) { return op == BinOp::And || op == BinOp::Or; }

ExprPtr mk_int_const(long long v) {
  Expr e;
  e.kind = Expr::Kind::IntConst;
  e.value = v;
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr mk_var_read(std::string name) {
  Expr e;
  e.kind = Expr::Kind::VarRead;
  e.var = std::move(name);
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr mk_arr_read(std::string name, ExprPtr index) {
  Expr e;
  e.kind = Expr::Kind::ArrRead;
  e.var = std::move(name);
  e.lhs = std::move(index);
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr mk_bin(BinOp op, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = Expr::Kind::Bin;
  e.op = op;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr mk_not(ExprPtr a) {
  Expr e;
  e.kind = Expr::Kind::Not;
  e.lhs = std::move(a);
  return std::make_shared<const Expr>(std::move(e));
}

ExprPtr mk_length_of(std::string array_name) {
  Expr e;
  e.kind = Expr::Kind::LengthOf;
  e.var = std::move(array_name);
  return std::make_shared<const Expr>(std::move(e));
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->value != b->value || a->var != b->var ||
      a->op != b->op)
    return false;
  return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
}

const VarDecl* Program::find_var(const std::string& name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

namespace {

bool stmt_equal(const StmtPtr& a, const StmtPtr& b);

bool context_equal(const Context& a, const Context& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (size_t i = 0; i < a.stmts.size(); ++i)
    if (!stmt_equal(a.stmts[i], b.stmts[i])) return false;
  return true;
}

bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
  if (a->kind != b->kind || a->target != b->target) return false;
  return expr_equal(a->index, b->index) && expr_equal(a->expr, b->expr) &&
         expr_equal(a->cond, b->cond) &&
         context_equal(a->then_ctx, b->then_ctx) &&
         context_equal(a->else_ctx, b->else_ctx);
}

}  // namespace

bool struct_equal(const Program& a, const Program& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i) {
    const auto& da = a.decls[i];
    const auto& db = b.decls[i];
    if (da.name != db.name || da.kind != db.kind || da.mut != db.mut)
      return false;
  }
  return context_equal(a.body, b.body) &&
         logic::formula_equal(a.assertion, b.assertion);
}

}  // namespace tracegen::ast
