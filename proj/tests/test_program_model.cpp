#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "tracegen/program_model.hpp"

using namespace tracegen;
namespace lg = logic;

TEST_CASE("reference program signature") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  auto sig = m.signature();

  // locations in source order, synthetic skip included, l_end last
  REQUIRE(sig.locations.size() == 9);
  std::vector<std::pair<std::string, size_t>> expect_locs = {
      {"l5", 0}, {"l6", 0}, {"l7", 1}, {"l8", 1}, {"l9", 1},
      {"l10", 1}, {"l13", 1}, {"l12", 1}, {"l_end", 0}};
  for (size_t i = 0; i < expect_locs.size(); ++i) {
    CHECK(sig.locations[i].name == expect_locs[i].first);
    CHECK(sig.locations[i].nat_arity == expect_locs[i].second);
  }

  REQUIRE(sig.last_its.size() == 1);
  CHECK(sig.last_its[0].name == "n7");
  CHECK(sig.last_its[0].nat_arity == 0);

  REQUIRE(sig.variables.size() == 4);
  CHECK(sig.variables[0].name == "a");
  CHECK(sig.variables[0].is_const);
  CHECK(sig.variables[0].is_array);
  CHECK(sig.variables[1].name == "b");
  CHECK_FALSE(sig.variables[1].is_const);

  // every array owns a length constant
  CHECK(sig.arrays == std::vector<std::string>{"a", "b"});
}

TEST_CASE("timepoint terms for the reference program") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  const auto* loop = p.body.stmts[2].get();
  const auto* ifs = loop->then_ctx.stmts[0].get();
  const auto* arr_asg = ifs->then_ctx.stmts[0].get();
  const auto* i_inc = loop->then_ctx.stmts[1].get();

  CHECK(lg::term_to_string(m.start_of(p.body.stmts[0].get())) == "l5");
  // a while's own timepoint carries its iteration variable
  CHECK(lg::term_to_string(m.tp(loop, m.iter_var(loop))) == "l7(it7)");
  CHECK(lg::term_to_string(m.start_of(loop)) == "l7(zero)");
  CHECK(lg::term_to_string(m.start_of(arr_asg)) == "l9(it7)");
  CHECK(lg::term_to_string(m.last_it(loop)) == "n7");
  // loop body wraps around to the next iteration
  CHECK(lg::term_to_string(m.end_of(i_inc)) == "l7(suc(it7))");
  // while statement ends where the following context ends
  CHECK(lg::term_to_string(m.end_of(loop)) == "l_end");
  CHECK(lg::term_to_string(m.end_term()) == "l_end");

  // explicit iteration assignments
  std::map<std::string, lg::TermPtr> iters{{"it7", lg::nat_const(2)}};
  CHECK(lg::term_to_string(m.tp_of(arr_asg, iters)) ==
        "l9(suc(suc(zero)))");
  CHECK_THROWS_AS(m.tp_of(arr_asg, {}), model::ArityError);
}

TEST_CASE("consecutive statements chain end to start") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto p = load_corpus(name);
    model::ProgramModel m(p);
    for (const auto& c : m.contexts()) {
      const auto& stmts = c.ctx->stmts;
      for (size_t i = 0; i + 1 < stmts.size(); ++i)
        CHECK(lg::term_equal(m.end_of(stmts[i].get()),
                             m.start_of(stmts[i + 1].get())));
      // the last statement ends where its context ends
      CHECK(lg::term_equal(m.end_of(stmts.back().get()), m.end_of(c)));
    }
  }
}

TEST_CASE("enclosing loops are outermost-first") {
  auto p = load_corpus("nested.w");
  model::ProgramModel m(p);
  auto ws = m.whiles();
  REQUIRE(ws.size() == 2);
  const auto* inner_body_stmt = ws[1]->then_ctx.stmts[0].get();
  auto encl = m.enclosing_loops(inner_body_stmt);
  REQUIRE(encl.size() == 2);
  CHECK(encl[0] == ws[0]);
  CHECK(encl[1] == ws[1]);
  // the inner loop's own timepoint sees the outer iteration
  CHECK(lg::term_to_string(m.tp(ws[1], m.iter_var(ws[1]))) ==
        "l9(it7,it9)");
  CHECK(lg::term_to_string(m.last_it(ws[1])) == "n9(it7)");
}

TEST_CASE("mutable variables keep declaration order") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  auto mv = m.mutable_vars();
  REQUIRE(mv.size() == 3);
  CHECK(mv[0].name == "b");
  CHECK(mv[1].name == "i");
  CHECK(mv[2].name == "j");
}
