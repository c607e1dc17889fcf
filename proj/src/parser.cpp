#include "tracegen/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace tracegen::frontend {

using namespace tracegen::ast;
namespace lg = tracegen::logic;

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 0;
  int col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::ostringstream os;
    os << "syntax error at line " << tok_.line << ", column " << tok_.col
       << ": expected " << expected << ", found '"
       << (tok_.kind == Token::Kind::End ? "<end of input>" : tok_.text)
       << "'";
    throw SyntaxError(os.str());
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = static_cast<int>(pos_ - line_start_) + 1;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long long v = 0;
      size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        v = v * 10 + static_cast<unsigned long long>(src_[pos_] - '0');
        if (v > (1ull << 62)) {
          std::ostringstream os;
          os << "syntax error at line " << line_
             << ": integer literal overflows the supported 64-bit range";
          throw SyntaxError(os.str());
        }
        ++pos_;
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = src_.substr(start, pos_ - start);
      tok_.value = static_cast<long long>(v);
      return;
    }
    // two-character operators first
    static const char* two[] = {"==", "!=", "<=", ">=", "=>"};
    for (const char* op : two) {
      if (src_.compare(pos_, 2, op) == 0) {
        tok_.kind = Token::Kind::Punct;
        tok_.text = op;
        pos_ += 2;
        return;
      }
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, c);
    ++pos_;
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < src_.size() &&
             (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
              src_[pos_] == '\n')) {
        if (src_[pos_] == '\n') {
          ++line_;
          line_start_ = pos_ + 1;
        }
        ++pos_;
      }
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      break;
    }
  }

  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1;
  size_t line_start_ = 0;
  Token tok_;
};

bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {"func",  "main",  "const", "Int",
                                           "skip",  "if",    "else",  "while",
                                           "assert", "and",  "or",    "not",
                                           "length"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Program parse() {
    expect_ident("func");
    expect_ident("main");
    expect_punct("(");
    expect_punct(")");
    expect_punct("{");
    prog_.body = parse_context(/*top_level=*/true);
    expect_punct("}");
    expect_ident("assert");
    prog_.assertion = parse_assertion();
    if (lex_.peek().kind != Token::Kind::End) lex_.fail("end of input");
    normalize_context(prog_.body, false);
    validate();
    return std::move(prog_);
  }

 private:
  // ---- W program ----

  Context parse_context(bool top_level) {
    Context ctx;
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind == Token::Kind::Punct && t.text == "}") break;
      if (t.kind == Token::Kind::End) break;
      if (t.kind == Token::Kind::Ident &&
          (t.text == "const" || t.text == "Int")) {
        if (!top_level)
          lex_.fail("statement (declarations are only allowed in the "
                    "top-level context)");
        parse_decl(ctx);
        continue;
      }
      ctx.stmts.push_back(parse_statement());
    }
    return ctx;
  }

  void parse_decl(Context& ctx) {
    Mutability mut = Mutability::Mutable;
    if (lex_.peek().text == "const") {
      lex_.next();
      mut = Mutability::Const;
    }
    expect_ident("Int");
    VarKind kind = VarKind::Int;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "[") {
      lex_.next();
      expect_punct("]");
      kind = VarKind::Array;
    }
    Token name = expect_name();
    if (prog_.find_var(name.text))
      throw ScopeError("duplicate declaration of variable '" + name.text +
                       "' at line " + std::to_string(name.line));
    prog_.decls.push_back({name.text, kind, mut});
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "=") {
      // `Int i = 0;` desugars into the declaration plus an assignment
      // statement on the same line.
      lex_.next();
      if (kind == VarKind::Array)
        throw SyntaxError("array declarations cannot carry initializers "
                          "(line " + std::to_string(name.line) + ")");
      ExprPtr init = parse_expr();
      auto s = std::make_shared<Stmt>();
      s->kind = Stmt::Kind::IntAssign;
      s->line = name.line;
      s->target = name.text;
      s->expr = std::move(init);
      ctx.stmts.push_back(std::move(s));
    }
    expect_punct(";");
  }

  StmtPtr parse_statement() {
    Token t = lex_.peek();
    auto s = std::make_shared<Stmt>();
    s->line = t.line;
    claim_line(t.line);
    if (t.kind == Token::Kind::Ident && t.text == "skip") {
      lex_.next();
      expect_punct(";");
      s->kind = Stmt::Kind::Skip;
      return s;
    }
    if (t.kind == Token::Kind::Ident && t.text == "if") {
      lex_.next();
      expect_punct("(");
      s->kind = Stmt::Kind::IfElse;
      s->cond = parse_expr();
      expect_punct(")");
      expect_punct("{");
      s->then_ctx = parse_context(false);
      expect_punct("}");
      if (lex_.peek().kind == Token::Kind::Ident &&
          lex_.peek().text == "else") {
        lex_.next();
        expect_punct("{");
        s->else_ctx = parse_context(false);
        expect_punct("}");
      }
      return s;
    }
    if (t.kind == Token::Kind::Ident && t.text == "while") {
      lex_.next();
      expect_punct("(");
      s->kind = Stmt::Kind::While;
      s->cond = parse_expr();
      expect_punct(")");
      expect_punct("{");
      s->then_ctx = parse_context(false);
      expect_punct("}");
      return s;
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      Token name = lex_.next();
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "[") {
        lex_.next();
        s->kind = Stmt::Kind::ArrAssign;
        s->target = name.text;
        s->index = parse_expr();
        expect_punct("]");
        expect_punct("=");
        s->expr = parse_expr();
        expect_punct(";");
        return s;
      }
      expect_punct("=");
      s->kind = Stmt::Kind::IntAssign;
      s->target = name.text;
      s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    lex_.fail("statement");
  }

  // C precedence: or < and < comparison < additive < multiplicative < unary.
  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == "or") {
      lex_.next();
      e = mk_bin(BinOp::Or, e, parse_and());
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_cmp();
    while (lex_.peek().kind == Token::Kind::Ident &&
           lex_.peek().text == "and") {
      lex_.next();
      e = mk_bin(BinOp::And, e, parse_cmp());
    }
    return e;
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    for (;;) {
      const Token& t = lex_.peek();
      BinOp op;
      if (t.kind != Token::Kind::Punct) break;
      if (t.text == "<") op = BinOp::Lt;
      else if (t.text == "<=") op = BinOp::Le;
      else if (t.text == ">") op = BinOp::Gt;
      else if (t.text == ">=") op = BinOp::Ge;
      else if (t.text == "==") op = BinOp::Eq;
      else if (t.text == "!=") op = BinOp::Ne;
      else break;
      lex_.next();
      e = mk_bin(op, e, parse_add());
    }
    return e;
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Punct || (t.text != "+" && t.text != "-"))
        break;
      BinOp op = t.text == "+" ? BinOp::Add : BinOp::Sub;
      lex_.next();
      e = mk_bin(op, e, parse_mul());
    }
    return e;
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    while (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "*") {
      lex_.next();
      e = mk_bin(BinOp::Mul, e, parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident && t.text == "not") {
      lex_.next();
      return mk_not(parse_unary());
    }
    if (t.kind == Token::Kind::Punct && t.text == "-") {
      lex_.next();
      return mk_bin(BinOp::Sub, mk_int_const(0), parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      lex_.next();
      return mk_int_const(t.value);
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.next();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      Token name = lex_.next();
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "[") {
        lex_.next();
        ExprPtr idx = parse_expr();
        expect_punct("]");
        return mk_arr_read(name.text, idx);
      }
      if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ".") {
        lex_.next();
        expect_ident("length");
        return mk_length_of(name.text);
      }
      return mk_var_read(name.text);
    }
    lex_.fail("expression");
  }

  // ---- assertion (SMT-LIB term grammar over `main_end`) ----

  lg::FormulaPtr parse_assertion() { return parse_surface_formula({}); }

  using BoundVars = std::set<std::string>;

  lg::FormulaPtr parse_surface_formula(const BoundVars& bound) {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "true") { lex_.next(); return lg::mk_true(); }
      if (t.text == "false") { lex_.next(); return lg::mk_false(); }
    }
    if (!(t.kind == Token::Kind::Punct && t.text == "("))
      lex_.fail("assertion formula");
    lex_.next();
    Token head = lex_.peek();
    if (head.kind != Token::Kind::Ident && head.kind != Token::Kind::Punct)
      lex_.fail("assertion operator");
    std::string op = head.text;
    if (op == "true" || op == "false") {
      lex_.next();
      expect_punct(")");
      return op == "true" ? lg::mk_true() : lg::mk_false();
    }
    if (op == "forall" || op == "exists") {
      lex_.next();
      std::vector<lg::Binder> binders;
      BoundVars inner = bound;
      expect_punct("(");
      while (!(lex_.peek().kind == Token::Kind::Punct &&
               lex_.peek().text == ")")) {
        expect_punct("(");
        Token name = expect_name();
        Token sort = lex_.next();
        if (sort.text != "Int")
          throw SyntaxError("assertion binders must have sort Int (line " +
                            std::to_string(sort.line) + ")");
        expect_punct(")");
        binders.push_back({name.text, lg::Sort::Int});
        inner.insert(name.text);
      }
      lex_.next();  // ')'
      lg::FormulaPtr body = parse_surface_formula(inner);
      expect_punct(")");
      return op == "forall" ? lg::mk_forall(std::move(binders), body)
                            : lg::mk_exists(std::move(binders), body);
    }
    if (op == "and" || op == "or") {
      lex_.next();
      std::vector<lg::FormulaPtr> fs;
      while (!(lex_.peek().kind == Token::Kind::Punct &&
               lex_.peek().text == ")"))
        fs.push_back(parse_surface_formula(bound));
      lex_.next();
      return op == "and" ? lg::mk_and(std::move(fs)) : lg::mk_or(std::move(fs));
    }
    if (op == "not") {
      lex_.next();
      lg::FormulaPtr f = parse_surface_formula(bound);
      expect_punct(")");
      return lg::mk_not(f);
    }
    if (op == "=>") {
      lex_.next();
      lg::FormulaPtr a = parse_surface_formula(bound);
      lg::FormulaPtr b = parse_surface_formula(bound);
      expect_punct(")");
      return lg::mk_implies(a, b);
    }
    if (op == "=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
      lex_.next();
      lg::TermPtr a = parse_surface_term(bound);
      lg::TermPtr b = parse_surface_term(bound);
      expect_punct(")");
      if (op == "=") return lg::mk_eq(a, b);
      lg::CmpOp c = op == "<" ? lg::CmpOp::Lt
                  : op == "<=" ? lg::CmpOp::Le
                  : op == ">" ? lg::CmpOp::Gt
                              : lg::CmpOp::Ge;
      return lg::mk_int_cmp(c, a, b);
    }
    lex_.fail("assertion operator");
  }

  lg::TermPtr parse_surface_term(const BoundVars& bound) {
    Token t = lex_.peek();
    if (t.kind == Token::Kind::Number) {
      lex_.next();
      return lg::mk_int(t.value);
    }
    if (t.kind == Token::Kind::Ident) {
      lex_.next();
      return surface_symbol(t, {}, bound);
    }
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.next();
      Token head = lex_.next();
      if (head.kind == Token::Kind::Punct &&
          (head.text == "+" || head.text == "-" || head.text == "*")) {
        std::vector<lg::TermPtr> args;
        while (!(lex_.peek().kind == Token::Kind::Punct &&
                 lex_.peek().text == ")"))
          args.push_back(parse_surface_term(bound));
        lex_.next();
        if (args.empty()) lex_.fail("operand");
        if (head.text == "-" && args.size() == 1)
          return lg::mk_int_bin(lg::IntOp::Sub, lg::mk_int(0), args[0]);
        lg::IntOp op = head.text == "+" ? lg::IntOp::Add
                     : head.text == "-" ? lg::IntOp::Sub
                                        : lg::IntOp::Mul;
        lg::TermPtr acc = args[0];
        for (size_t i = 1; i < args.size(); ++i)
          acc = lg::mk_int_bin(op, acc, args[i]);
        return acc;
      }
      if (head.kind != Token::Kind::Ident) lex_.fail("function symbol");
      std::vector<lg::TermPtr> raw_args;
      std::vector<Token> arg_tokens;
      while (!(lex_.peek().kind == Token::Kind::Punct &&
               lex_.peek().text == ")")) {
        // `main_end` is only legal as the timepoint slot of an application.
        if (lex_.peek().kind == Token::Kind::Ident &&
            lex_.peek().text == "main_end") {
          arg_tokens.push_back(lex_.next());
          raw_args.push_back(nullptr);  // placeholder for the timepoint
          continue;
        }
        arg_tokens.push_back(lex_.peek());
        raw_args.push_back(parse_surface_term(bound));
      }
      lex_.next();
      return surface_application(head, raw_args, bound);
    }
    lex_.fail("assertion term");
  }

  // Bare symbol: a bound variable, a const int variable, or `a_length`.
  lg::TermPtr surface_symbol(const Token& name, const std::vector<lg::TermPtr>&,
                             const BoundVars& bound) {
    if (bound.count(name.text)) return lg::mk_var(name.text, lg::Sort::Int);
    if (auto len = length_symbol(name.text)) return len;
    const VarDecl* d = prog_.find_var(name.text);
    if (d && d->is_const() && !d->is_array())
      return lg::mk_var_app(d->name, true, false, {});
    throw ScopeError("unknown symbol '" + name.text + "' in assertion (line " +
                     std::to_string(name.line) + ")");
  }

  lg::TermPtr surface_application(const Token& head,
                                  const std::vector<lg::TermPtr>& args,
                                  const BoundVars& bound) {
    if (args.empty()) return surface_symbol(head, {}, bound);
    const VarDecl* d = prog_.find_var(head.text);
    if (!d)
      throw ScopeError("unknown symbol '" + head.text +
                       "' in assertion (line " + std::to_string(head.line) +
                       ")");
    auto tp = lg::mk_loc_app("main_end", {});
    bool has_tp = args[0] == nullptr;  // first argument was `main_end`
    if (d->is_const()) {
      if (has_tp)
        throw SortError("const variable '" + d->name +
                        "' takes no timepoint argument");
      if (!d->is_array() || args.size() != 1)
        throw SortError("bad application of '" + d->name + "' in assertion");
      return lg::mk_var_app(d->name, true, true, {args[0]});
    }
    if (!has_tp)
      throw SortError("mutable variable '" + d->name +
                      "' must be applied to main_end in the assertion");
    if (d->is_array()) {
      if (args.size() != 2 || args[1] == nullptr)
        throw SortError("array '" + d->name +
                        "' expects (name main_end pos) in the assertion");
      return lg::mk_var_app(d->name, false, true, {tp, args[1]});
    }
    if (args.size() != 1)
      throw SortError("variable '" + d->name +
                      "' expects (name main_end) in the assertion");
    return lg::mk_var_app(d->name, false, false, {tp});
  }

  lg::TermPtr length_symbol(const std::string& name) {
    if (name.size() > 7 && name.substr(name.size() - 7) == "_length") {
      std::string arr = name.substr(0, name.size() - 7);
      const VarDecl* d = prog_.find_var(arr);
      if (d && d->is_array()) return lg::mk_length(arr);
    }
    return nullptr;
  }

  // ---- desugaring and validation ----

  // Every context must be non-empty so that start/end timepoints exist;
  // fill empty branches and loop bodies with synthetic skips.
  void normalize_context(Context& ctx, bool fill_if_empty) {
    if (fill_if_empty && ctx.stmts.empty()) {
      auto skip = std::make_shared<Stmt>();
      skip->kind = Stmt::Kind::Skip;
      skip->synthetic = true;
      skip->line = ++synthetic_line_;
      ctx.stmts.push_back(std::move(skip));
      return;
    }
    for (auto& s : ctx.stmts) {
      if (s->kind == Stmt::Kind::IfElse) {
        normalize_context(s->then_ctx, true);
        normalize_context(s->else_ctx, true);
      } else if (s->kind == Stmt::Kind::While) {
        normalize_context(s->then_ctx, true);
      }
    }
  }

  void claim_line(int line) {
    if (!used_lines_.insert(line).second)
      throw SyntaxError("line " + std::to_string(line) +
                        " holds more than one statement; each statement "
                        "needs its own line");
    if (line > synthetic_line_) synthetic_line_ = line;
  }

  enum class ExprSort { Int, Bool };

  ExprSort check_expr(const ExprPtr& e, int line) {
    switch (e->kind) {
      case Expr::Kind::IntConst:
        return ExprSort::Int;
      case Expr::Kind::VarRead: {
        const VarDecl* d = prog_.find_var(e->var);
        if (!d)
          throw ScopeError("undeclared variable '" + e->var + "' (line " +
                           std::to_string(line) + ")");
        if (d->is_array())
          throw SortError("array '" + e->var +
                          "' used without an index (line " +
                          std::to_string(line) + ")");
        return ExprSort::Int;
      }
      case Expr::Kind::ArrRead: {
        const VarDecl* d = prog_.find_var(e->var);
        if (!d)
          throw ScopeError("undeclared variable '" + e->var + "' (line " +
                           std::to_string(line) + ")");
        if (!d->is_array())
          throw SortError("'" + e->var + "' is not an array (line " +
                          std::to_string(line) + ")");
        if (check_expr(e->lhs, line) != ExprSort::Int)
          throw SortError("array index must be an integer expression (line " +
                          std::to_string(line) + ")");
        return ExprSort::Int;
      }
      case Expr::Kind::LengthOf: {
        const VarDecl* d = prog_.find_var(e->var);
        if (!d)
          throw ScopeError("undeclared variable '" + e->var + "' (line " +
                           std::to_string(line) + ")");
        if (!d->is_array())
          throw SortError(".length applies only to arrays (line " +
                          std::to_string(line) + ")");
        return ExprSort::Int;
      }
      case Expr::Kind::Not:
        if (check_expr(e->lhs, line) != ExprSort::Bool)
          throw SortError("'not' expects a boolean operand (line " +
                          std::to_string(line) + ")");
        return ExprSort::Bool;
      case Expr::Kind::Bin: {
        ExprSort a = check_expr(e->lhs, line);
        ExprSort b = check_expr(e->rhs, line);
        if (is_arith(e->op)) {
          if (a != ExprSort::Int || b != ExprSort::Int)
            throw SortError("arithmetic over booleans (line " +
                            std::to_string(line) + ")");
          return ExprSort::Int;
        }
        if (is_cmp(e->op)) {
          if (a != ExprSort::Int || b != ExprSort::Int)
            throw SortError("comparison over booleans (line " +
                            std::to_string(line) + ")");
          return ExprSort::Bool;
        }
        if (a != ExprSort::Bool || b != ExprSort::Bool)
          throw SortError("'and'/'or' expect boolean operands (line " +
                          std::to_string(line) + ")");
        return ExprSort::Bool;
      }
    }
    throw SortError("unreachable expression kind");
  }

  void check_context(const Context& ctx) {
    for (const auto& s : ctx.stmts) {
      switch (s->kind) {
        case Stmt::Kind::Skip:
          break;
        case Stmt::Kind::IntAssign: {
          const VarDecl* d = prog_.find_var(s->target);
          if (!d)
            throw ScopeError("assignment to undeclared variable '" +
                             s->target + "' (line " + std::to_string(s->line) +
                             ")");
          if (d->is_const())
            throw MutabilityError("assignment to const variable '" +
                                  s->target + "' (line " +
                                  std::to_string(s->line) + ")");
          if (d->is_array())
            throw SortError("array '" + s->target +
                            "' assigned without an index (line " +
                            std::to_string(s->line) + ")");
          if (check_expr(s->expr, s->line) != ExprSort::Int)
            throw SortError("assigned expression must be an integer (line " +
                            std::to_string(s->line) + ")");
          break;
        }
        case Stmt::Kind::ArrAssign: {
          const VarDecl* d = prog_.find_var(s->target);
          if (!d)
            throw ScopeError("assignment to undeclared variable '" +
                             s->target + "' (line " + std::to_string(s->line) +
                             ")");
          if (d->is_const())
            throw MutabilityError("assignment to const array '" + s->target +
                                  "' (line " + std::to_string(s->line) + ")");
          if (!d->is_array())
            throw SortError("'" + s->target + "' is not an array (line " +
                            std::to_string(s->line) + ")");
          if (check_expr(s->index, s->line) != ExprSort::Int ||
              check_expr(s->expr, s->line) != ExprSort::Int)
            throw SortError("array assignment parts must be integers (line " +
                            std::to_string(s->line) + ")");
          break;
        }
        case Stmt::Kind::IfElse:
          if (check_expr(s->cond, s->line) != ExprSort::Bool)
            throw SortError("if condition must be boolean (line " +
                            std::to_string(s->line) + ")");
          check_context(s->then_ctx);
          check_context(s->else_ctx);
          break;
        case Stmt::Kind::While:
          if (check_expr(s->cond, s->line) != ExprSort::Bool)
            throw SortError("while condition must be boolean (line " +
                            std::to_string(s->line) + ")");
          check_context(s->then_ctx);
          break;
      }
    }
  }

  void validate() {
    if (prog_.body.stmts.empty()) {
      // normalize an empty main to a single skip so start/end are defined
      auto skip = std::make_shared<Stmt>();
      skip->kind = Stmt::Kind::Skip;
      skip->synthetic = true;
      skip->line = ++synthetic_line_;
      prog_.body.stmts.push_back(std::move(skip));
    }
    check_context(prog_.body);
    prog_.max_line = synthetic_line_;
  }

  void expect_ident(const std::string& text) {
    if (lex_.peek().kind != Token::Kind::Ident || lex_.peek().text != text)
      lex_.fail("'" + text + "'");
    lex_.next();
  }

  void expect_punct(const std::string& text) {
    if (lex_.peek().kind != Token::Kind::Punct || lex_.peek().text != text)
      lex_.fail("'" + text + "'");
    lex_.next();
  }

  Token expect_name() {
    if (lex_.peek().kind != Token::Kind::Ident || is_keyword(lex_.peek().text))
      lex_.fail("identifier");
    return lex_.next();
  }

  Lexer lex_;
  Program prog_;
  std::set<int> used_lines_;
  int synthetic_line_ = 0;
};

// ---- pretty printing ----

int expr_prec(const ExprPtr& e) {
  if (e->kind != Expr::Kind::Bin) return 6;
  switch (e->op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt:
    case BinOp::Ge: case BinOp::Eq: case BinOp::Ne: return 3;
    case BinOp::Add: case BinOp::Sub: return 4;
    case BinOp::Mul: return 5;
  }
  return 6;
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
  }
  return "?";
}

void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int prec = expr_prec(e);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case Expr::Kind::IntConst: os << e->value; break;
    case Expr::Kind::VarRead: os << e->var; break;
    case Expr::Kind::ArrRead:
      os << e->var << "[";
      print_expr(os, e->lhs, 0);
      os << "]";
      break;
    case Expr::Kind::LengthOf: os << e->var << ".length"; break;
    case Expr::Kind::Not:
      os << "not ";
      print_expr(os, e->lhs, 6);
      break;
    case Expr::Kind::Bin:
      print_expr(os, e->lhs, prec);
      os << " " << op_text(e->op) << " ";
      print_expr(os, e->rhs, prec + 1);
      break;
  }
  if (paren) os << ")";
}

void print_surface_term(std::ostream& os, const lg::TermPtr& t) {
  using K = lg::Term::Kind;
  switch (t->kind) {
    case K::Var: os << t->name; return;
    case K::IntConst:
      if (t->value < 0)
        os << "(- " << -t->value << ")";
      else
        os << t->value;
      return;
    case K::IntBin: {
      const char* op = t->op == lg::IntOp::Add ? "+"
                     : t->op == lg::IntOp::Sub ? "-"
                                               : "*";
      os << "(" << op << " ";
      print_surface_term(os, t->args[0]);
      os << " ";
      print_surface_term(os, t->args[1]);
      os << ")";
      return;
    }
    case K::VarApp: {
      if (t->var_is_const && !t->var_is_array) {
        os << t->name;
        return;
      }
      os << "(" << t->name;
      if (!t->var_is_const) os << " main_end";
      if (t->var_is_array) {
        os << " ";
        print_surface_term(os, t->args.back());
      }
      os << ")";
      return;
    }
    case K::LengthConst: os << "(" << t->name << "_length)"; return;
    default:
      throw std::logic_error("term not expressible in assertion syntax: " +
                             lg::term_to_string(t));
  }
}

void print_surface_formula(std::ostream& os, const lg::FormulaPtr& f) {
  using K = lg::Formula::Kind;
  switch (f->kind) {
    case K::True: os << "true"; return;
    case K::False: os << "false"; return;
    case K::Eq:
      os << "(= ";
      print_surface_term(os, f->terms[0]);
      os << " ";
      print_surface_term(os, f->terms[1]);
      os << ")";
      return;
    case K::IntCmp: {
      const char* op = f->cmp == lg::CmpOp::Lt ? "<"
                     : f->cmp == lg::CmpOp::Le ? "<="
                     : f->cmp == lg::CmpOp::Gt ? ">"
                                               : ">=";
      os << "(" << op << " ";
      print_surface_term(os, f->terms[0]);
      os << " ";
      print_surface_term(os, f->terms[1]);
      os << ")";
      return;
    }
    case K::Not:
      os << "(not ";
      print_surface_formula(os, f->sub[0]);
      os << ")";
      return;
    case K::And:
    case K::Or: {
      os << (f->kind == K::And ? "(and" : "(or");
      for (const auto& s : f->sub) {
        os << " ";
        print_surface_formula(os, s);
      }
      os << ")";
      return;
    }
    case K::Implies:
      os << "(=> ";
      print_surface_formula(os, f->sub[0]);
      os << " ";
      print_surface_formula(os, f->sub[1]);
      os << ")";
      return;
    case K::Forall:
    case K::Exists: {
      os << (f->kind == K::Forall ? "(forall (" : "(exists (");
      for (size_t i = 0; i < f->binders.size(); ++i) {
        if (i) os << " ";
        os << "(" << f->binders[i].name << " Int)";
      }
      os << ") ";
      print_surface_formula(os, f->sub[0]);
      os << ")";
      return;
    }
    default:
      throw std::logic_error("formula not expressible in assertion syntax: " +
                             lg::formula_to_string(f));
  }
}

void print_context(std::ostream& os, const Context& ctx, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  for (const auto& s : ctx.stmts) {
    switch (s->kind) {
      case Stmt::Kind::Skip:
        os << pad << "skip;\n";
        break;
      case Stmt::Kind::IntAssign:
        os << pad << s->target << " = ";
        print_expr(os, s->expr, 0);
        os << ";\n";
        break;
      case Stmt::Kind::ArrAssign:
        os << pad << s->target << "[";
        print_expr(os, s->index, 0);
        os << "] = ";
        print_expr(os, s->expr, 0);
        os << ";\n";
        break;
      case Stmt::Kind::IfElse: {
        os << pad << "if (";
        print_expr(os, s->cond, 0);
        os << ") {\n";
        print_context(os, s->then_ctx, indent + 1);
        os << pad << "}";
        // a purely synthetic else branch prints as an else-less if
        bool synthetic_else = s->else_ctx.stmts.size() == 1 &&
                              s->else_ctx.stmts[0]->synthetic;
        if (!synthetic_else) {
          os << " else {\n";
          print_context(os, s->else_ctx, indent + 1);
          os << pad << "}";
        }
        os << "\n";
        break;
      }
      case Stmt::Kind::While:
        os << pad << "while (";
        print_expr(os, s->cond, 0);
        os << ") {\n";
        print_context(os, s->then_ctx, indent + 1);
        os << pad << "}\n";
        break;
    }
  }
}

}  // namespace

Program parse_program(const std::string& source) {
  return Parser(source).parse();
}

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  os << "func main() {\n";
  for (const auto& d : p.decls) {
    os << "  ";
    if (d.is_const()) os << "const ";
    os << "Int";
    if (d.is_array()) os << "[]";
    os << " " << d.name << ";\n";
  }
  print_context(os, p.body, 1);
  os << "}\n";
  os << "assert ";
  if (p.assertion->kind == lg::Formula::Kind::True)
    os << "(true)";
  else if (p.assertion->kind == lg::Formula::Kind::False)
    os << "(false)";
  else
    print_surface_formula(os, p.assertion);
  os << "\n";
  return os.str();
}

}  // namespace tracegen::frontend
