#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tracegen/parser.hpp"

using namespace tracegen;
using ast::Stmt;

TEST_CASE("reference program parses into the expected shape") {
  auto p = load_corpus("copy_positive.w");

  REQUIRE(p.decls.size() == 4);
  CHECK(p.decls[0].name == "a");
  CHECK(p.decls[0].is_array());
  CHECK(p.decls[0].is_const());
  CHECK(p.decls[1].name == "b");
  CHECK(p.decls[1].is_array());
  CHECK_FALSE(p.decls[1].is_const());
  CHECK(p.decls[2].name == "i");
  CHECK(p.decls[3].name == "j");

  REQUIRE(p.body.stmts.size() == 3);  // i = 0; j = 0; while
  CHECK(p.body.stmts[0]->kind == Stmt::Kind::IntAssign);
  CHECK(p.body.stmts[0]->line == 5);
  CHECK(p.body.stmts[1]->line == 6);
  const auto& loop = *p.body.stmts[2];
  REQUIRE(loop.kind == Stmt::Kind::While);
  CHECK(loop.line == 7);
  REQUIRE(loop.then_ctx.stmts.size() == 2);
  const auto& branch = *loop.then_ctx.stmts[0];
  REQUIRE(branch.kind == Stmt::Kind::IfElse);
  CHECK(branch.line == 8);
  REQUIRE(branch.then_ctx.stmts.size() == 2);
  CHECK(branch.then_ctx.stmts[0]->kind == Stmt::Kind::ArrAssign);
  CHECK(branch.then_ctx.stmts[0]->line == 9);
  CHECK(branch.then_ctx.stmts[1]->line == 10);
  CHECK(loop.then_ctx.stmts[1]->line == 12);

  // the else-less if gains a synthetic skip on a fresh line
  REQUIRE(branch.else_ctx.stmts.size() == 1);
  CHECK(branch.else_ctx.stmts[0]->kind == Stmt::Kind::Skip);
  CHECK(branch.else_ctx.stmts[0]->synthetic);
  CHECK(branch.else_ctx.stmts[0]->line > p.max_line - 1);

  REQUIRE(p.assertion);
  CHECK(p.assertion->kind == logic::Formula::Kind::Forall);
}

TEST_CASE("pretty-print round trip is structure-preserving") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto p = load_corpus(name);
    auto text = frontend::pretty_print(p);
    auto q = frontend::parse_program(text);
    CHECK(ast::struct_equal(p, q));
    // printing is a fixpoint after one round
    CHECK(frontend::pretty_print(q) == text);
  }
}

TEST_CASE("parse errors carry the right category") {
  auto wrap = [](const std::string& body, const std::string& assert_clause =
                                              "assert (true)") {
    return "func main()\n{\n" + body + "}\n" + assert_clause + "\n";
  };

  SUBCASE("syntax") {
    CHECK_THROWS_AS(frontend::parse_program("func main() {"),
                    ast::SyntaxError);
    CHECK_THROWS_AS(frontend::parse_program(wrap("Int i = ;\n")),
                    ast::SyntaxError);
    CHECK_THROWS_AS(frontend::parse_program(wrap("const Int[] a = 3;\n")),
                    ast::SyntaxError);
  }
  SUBCASE("scope") {
    CHECK_THROWS_AS(frontend::parse_program(wrap("i = 1;\n")),
                    ast::ScopeError);
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("Int i = 0;\nInt i = 1;\n")),
        ast::ScopeError);
    CHECK_THROWS_AS(frontend::parse_program(wrap("Int i = x;\n")),
                    ast::ScopeError);
  }
  SUBCASE("mutability") {
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("const Int c;\nc = 1;\n")),
        ast::MutabilityError);
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("const Int[] a;\na[0] = 1;\n")),
        ast::MutabilityError);
  }
  SUBCASE("sorts") {
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("Int i = 0;\ni = i < 1;\n")),
        ast::SortError);
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("Int i = 0;\nwhile (i) {\ni = i + 1;\n}\n")),
        ast::SortError);
    CHECK_THROWS_AS(
        frontend::parse_program(wrap("Int i = 0;\nInt j = i.length;\n")),
        ast::SortError);
  }
}

TEST_CASE("empty branches and bodies are filled with synthetic skips") {
  auto p = frontend::parse_program(
      "func main()\n{\n"
      "    Int i = 0;\n"
      "    if (i > 0) {\n"
      "    } else {\n"
      "        i = 1;\n"
      "    }\n"
      "    while (i < 0) {\n"
      "    }\n"
      "}\n"
      "assert (>= (i main_end) 0)\n");
  const auto& ifs = *p.body.stmts[1];
  REQUIRE(ifs.then_ctx.stmts.size() == 1);
  CHECK(ifs.then_ctx.stmts[0]->kind == Stmt::Kind::Skip);
  CHECK(ifs.then_ctx.stmts[0]->synthetic);
  const auto& loop = *p.body.stmts[2];
  REQUIRE(loop.then_ctx.stmts.size() == 1);
  CHECK(loop.then_ctx.stmts[0]->synthetic);
  // fresh lines stay unique
  CHECK(ifs.then_ctx.stmts[0]->line != loop.then_ctx.stmts[0]->line);
}

TEST_CASE("assertion surface accepts the documented symbols only") {
  auto src = [](const std::string& clause) {
    return "func main()\n{\n    Int i = 0;\n}\n" + clause + "\n";
  };
  CHECK_NOTHROW(frontend::parse_program(src("assert (= (i main_end) 0)")));
  CHECK_THROWS_AS(frontend::parse_program(src("assert (= (q main_end) 0)")),
                  ast::ScopeError);
  CHECK_THROWS_AS(frontend::parse_program(src("assert (= (i) 0)")),
                  ast::ScopeError);
  CHECK_THROWS_AS(frontend::parse_program(src("assert (= (i main_end 1) 0)")),
                  ast::SortError);
}
