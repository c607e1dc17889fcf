#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tracegen/lemmas.hpp"

using namespace tracegen;
namespace lg = logic;

namespace {

bool mentions_reach(const lg::FormulaPtr& f) {
  if (f->kind == lg::Formula::Kind::Reach) return true;
  for (const auto& s : f->sub)
    if (mentions_reach(s)) return true;
  return false;
}

}  // namespace

TEST_CASE("instantiation policy: four lemmas per (loop, mutable variable)") {
  SUBCASE("one loop, three mutable variables") {
    auto p = load_corpus("copy_positive.w");
    model::ProgramModel m(p);
    auto all = lem::instantiate_all(m);
    REQUIRE(all.size() == 12);
    std::vector<std::string> labels;
    for (const auto& i : all) labels.push_back(i.label);
    CHECK(labels == std::vector<std::string>{
                        "lemma-a1-eq-l7-b", "lemma-a1-leq-l7-b",
                        "lemma-b1-l7-b", "lemma-b2-l7-b",
                        "lemma-a1-eq-l7-i", "lemma-a1-leq-l7-i",
                        "lemma-b1-l7-i", "lemma-b2-l7-i",
                        "lemma-a1-eq-l7-j", "lemma-a1-leq-l7-j",
                        "lemma-b1-l7-j", "lemma-b2-l7-j"});
  }
  SUBCASE("loop-free programs get none") {
    for (const char* name : {"set_flag.w", "skip.w", "max_of_two.w"}) {
      CAPTURE(name);
      auto p = load_corpus(name);
      model::ProgramModel m(p);
      CHECK(lem::instantiate_all(m).empty());
    }
  }
  SUBCASE("two loops over one mutable int") {
    auto p = frontend::parse_program(
        "func main()\n{\n"
        "    Int i = 0;\n"
        "    while (i < 3) {\n"
        "        i = i + 1;\n"
        "    }\n"
        "    while (i < 6) {\n"
        "        i = i + 1;\n"
        "    }\n"
        "}\n"
        "assert (= (i main_end) 6)\n");
    model::ProgramModel m(p);
    CHECK(lem::instantiate_all(m).size() == 8);
  }
}

TEST_CASE("lemmas speak about values only, never reachability") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  for (const auto& i : lem::instantiate_all(m)) {
    CAPTURE(i.label);
    CHECK_FALSE(mentions_reach(i.formula));
    CHECK(lg::free_vars(i.formula).empty());
  }
}

TEST_CASE("array lemmas are position-lifted") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  auto all = lem::instantiate_all(m);
  // lemmas over array b start with the position quantifier
  REQUIRE(all[0].variable == "b");
  REQUIRE(all[0].formula->kind == lg::Formula::Kind::Forall);
  REQUIRE(all[0].formula->binders.size() == 1);
  CHECK(all[0].formula->binders[0].name == "pos");
  CHECK(all[0].formula->binders[0].sort == lg::Sort::Int);
  // scalar lemmas have no position quantifier at the top
  const auto& scalar = all[4];  // lemma-a1-eq-l7-i
  REQUIRE(scalar.formula->kind == lg::Formula::Kind::Forall);
  CHECK(scalar.formula->binders[0].name == "bl");
}

TEST_CASE("nested loops close lemmas over the outer iteration") {
  auto p = load_corpus("nested.w");
  model::ProgramModel m(p);
  auto all = lem::instantiate_all(m);
  // loops in pre-order: outer l7 first, then inner l9; vars j then c... in
  // declaration order (i, j, c are the mutable ints)
  bool found = false;
  for (const auto& inst : all)
    if (inst.label == "lemma-b2-l9-c") {
      found = true;
      REQUIRE(inst.formula->kind == lg::Formula::Kind::Forall);
      REQUIRE(inst.formula->binders.size() == 1);
      CHECK(inst.formula->binders[0].name == "it7");
      CHECK(inst.formula->binders[0].sort == lg::Sort::Nat);
    }
  CHECK(found);
}

TEST_CASE("density premise golden form") {
  auto p = load_corpus("atleast_one_iteration.w");
  model::ProgramModel m(p);
  auto ws = m.whiles();
  REQUIRE(ws.size() == 1);
  auto mv = m.mutable_vars();
  auto dense = lem::dense_formula(m, ws.front(), mv.front());
  auto s = lg::formula_to_string(dense);
  CHECK(s.substr(0, 14) == "forall it:Nat.");
  // each iteration either keeps the value or bumps it by one
  CHECK(s.find("| ") != std::string::npos);
  CHECK(s.find("+ 1") != std::string::npos);
}

// The B1/B2 statements are about arbitrary dense sequences; exhaustively
// verify them on every short dense sequence so that the emitted axioms
// can't silently encode an unsound schema.
TEST_CASE("intermediate-value and injectivity statements hold on all dense "
          "sequences") {
  const int kLen = 7;  // values v[0..kLen]
  std::vector<long long> v(kLen + 1);
  // enumerate all 2^kLen step patterns (bit = increment at that step)
  for (unsigned mask = 0; mask < (1u << kLen); ++mask) {
    v[0] = -2;
    for (int i = 0; i < kLen; ++i) v[i + 1] = v[i] + ((mask >> i) & 1);
    const int n = kLen;
    // B1: every x in [v[0], v[n]) is hit exactly at an incrementing step
    for (long long x = v[0]; x < v[n]; ++x) {
      bool hit = false;
      for (int it = 0; it < n; ++it)
        if (v[it] == x && v[it + 1] == v[it] + 1) hit = true;
      CHECK(hit);
    }
    // B2: after an incrementing step the old value never recurs
    for (int it1 = 0; it1 < n; ++it1) {
      if (v[it1 + 1] != v[it1] + 1) continue;
      for (int it2 = it1 + 1; it2 <= n; ++it2) CHECK(v[it1] != v[it2]);
    }
  }
}
