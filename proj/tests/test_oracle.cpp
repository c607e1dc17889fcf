#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "tracegen/oracle.hpp"

using namespace tracegen;

namespace {

oracle::InputValuation with_array(const std::string& name,
                                  std::vector<long long> vals) {
  oracle::InputValuation inp;
  inp.arrays[name] = std::move(vals);
  return inp;
}

}  // namespace

TEST_CASE("reference program executes to the documented final state") {
  auto p = load_corpus("copy_positive.w");
  auto tr = oracle::execute(p, with_array("a", {1, -2, 3}));

  CHECK(tr.terminated);
  REQUIRE(tr.states.count("l_end"));
  const auto& fin = tr.states.at("l_end");
  CHECK(fin.ints.at("i") == 3);
  CHECK(fin.ints.at("j") == 2);
  CHECK(fin.arrays.at("b").at(0) == 1);
  CHECK(fin.arrays.at("b").at(1) == 3);
  CHECK(tr.last_iterations.at("n7") == 3);

  // loop visited at iterations 0..3; the branch body runs at iterations
  // 0 and 2, the synthetic else at iteration 1
  for (const char* tp : {"l7(0)", "l7(1)", "l7(2)", "l7(3)", "l9(0)",
                         "l9(2)", "l13(1)", "l_end"})
    CHECK(tr.reached_set.count(tp));
  CHECK_FALSE(tr.reached_set.count("l7(4)"));
  CHECK_FALSE(tr.reached_set.count("l9(1)"));
}

TEST_CASE("empty input exits the loop at iteration zero") {
  auto p = load_corpus("copy_positive.w");
  auto tr = oracle::execute(p, with_array("a", {}));
  CHECK(tr.terminated);
  CHECK(tr.last_iterations.at("n7") == 0);
  CHECK(tr.states.at("l_end").ints.at("j") == 0);
  CHECK(tr.reached_set.count("l7(0)"));
  CHECK_FALSE(tr.reached_set.count("l9(0)"));
}

TEST_CASE("execution is deterministic and auditable") {
  auto p = load_corpus("copy_positive.w");
  auto inp = with_array("a", {2, 0, -1, 3});
  auto t1 = oracle::execute(p, inp);
  auto t2 = oracle::execute(p, inp);
  CHECK(oracle::trace_dump(t1) == oracle::trace_dump(t2));
  // one audit record per reached timepoint
  CHECK(t1.reached.size() == t1.rules.size());
  CHECK(t1.step_count == static_cast<long long>(t1.reached.size()));
  auto dump = oracle::trace_dump(t1);
  CHECK(dump.rfind("l5 asg", 0) == 0);
  CHECK(std::count(dump.begin(), dump.end(), '\n') ==
        static_cast<long long>(t1.reached.size()));
}

TEST_CASE("divergent programs hit the step limit") {
  auto p = frontend::parse_program(
      "func main()\n{\n"
      "    Int i = 0;\n"
      "    while (0 < 1) {\n"
      "        skip;\n"
      "    }\n"
      "}\n"
      "assert (true)\n");
  oracle::ExecOptions opts;
  opts.step_limit = 500;
  CHECK_THROWS_AS(oracle::execute(p, {}, opts), oracle::StepLimitExceeded);
}

TEST_CASE("out-of-bounds reads are loud by default, permissive on request") {
  auto p = frontend::parse_program(
      "func main()\n{\n"
      "    const Int[] a;\n"
      "    Int x = 0;\n"
      "    x = a[5];\n"
      "}\n"
      "assert (true)\n");
  auto inp = with_array("a", {7, 8});
  CHECK_THROWS_AS(oracle::execute(p, inp), oracle::OutOfBoundsRead);
  oracle::ExecOptions opts;
  opts.permissive_reads = true;
  auto tr = oracle::execute(p, inp, opts);
  CHECK(tr.terminated);
  CHECK(tr.states.at("l_end").ints.at("x") == 0);
}

TEST_CASE("evaluation domains cover the trace") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  auto tr = oracle::execute(p, with_array("a", {1, -2, 3}));
  auto dom = oracle::make_domains(m.signature(), tr);
  CHECK(dom.nat_bound >= tr.max_iter + 1);
  for (long long v : {-2LL, -1LL, 0LL, 3LL, 5LL})
    CHECK(std::count(dom.int_window.begin(), dom.int_window.end(), v) == 1);
  // unreached ground timepoints still belong to the time domain
  CHECK(std::count(dom.time_domain.begin(), dom.time_domain.end(),
                   "l9(2)") == 1);
}

TEST_CASE("formula evaluation against a trace") {
  auto p = load_corpus("copy_positive.w");
  model::ProgramModel m(p);
  auto task = sem::build_task(p);
  auto tr = oracle::execute(p, with_array("a", {1, -2, 3}));
  auto dom = oracle::make_domains(m.signature(), tr);

  auto l_end = logic::mk_loc_app("l_end", {});
  CHECK(oracle::eval_formula(logic::mk_reach(l_end), tr, dom) ==
        oracle::EvalResult::True);
  CHECK(oracle::eval_formula(
            logic::mk_reach(logic::mk_loc_app("l7", {logic::nat_const(4)})),
            tr, dom) == oracle::EvalResult::False);
  auto i_end = logic::mk_var_app("i", false, false, {l_end});
  CHECK(oracle::eval_formula(logic::mk_eq(i_end, logic::mk_int(3)), tr,
                             dom) == oracle::EvalResult::True);
  CHECK(oracle::eval_formula(logic::mk_eq(i_end, logic::mk_int(0)), tr,
                             dom) == oracle::EvalResult::False);
  // the embedded property holds on this input
  CHECK(oracle::eval_formula(task.conjecture.formula, tr, dom) ==
        oracle::EvalResult::True);
}

TEST_CASE("task checking: clean generator passes, faulty generator fails") {
  auto p = load_corpus("copy_positive.w");
  std::vector<oracle::ExecutionTrace> traces;
  for (const auto& inp : oracle::sample_inputs(p, 10, 3))
    traces.push_back(oracle::execute(p, inp));

  auto clean = oracle::check_task(sem::build_task(p), traces);
  CHECK(clean.checks > 0);
  CHECK(clean.violations.empty());
  CHECK(clean.conjecture_failures.empty());

  sem::GenOptions bad;
  bad.corrupt_frame = 0;
  auto faulty = oracle::check_task(sem::build_task(p, bad), traces);
  CHECK_FALSE(faulty.violations.empty());
  // a violation names the axiom and the falsifying input
  CHECK_FALSE(faulty.violations.front().label.empty());
}

TEST_CASE("reachability facts hold on terminating traces") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    auto p = load_corpus(name);
    for (const auto& inp : oracle::sample_inputs(p, 10, 5)) {
      auto tr = oracle::execute(p, inp);
      CHECK(oracle::check_reach_facts(p, tr).empty());
    }
  }
}

TEST_CASE("input sampling is deterministic with fixed boundary cases") {
  auto p = load_corpus("copy_positive.w");
  auto a = oracle::sample_inputs(p, 50, 7);
  auto b = oracle::sample_inputs(p, 50, 7);
  REQUIRE(a.size() == 50);
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].describe() == b[i].describe());

  // all-empty first, boundary (max-length, all-zero) second
  CHECK((a[0].arrays.count("a") == 0 || a[0].arrays.at("a").empty()));
  CHECK(a[1].arrays.at("a").size() == 5);
  for (long long v : a[1].arrays.at("a")) CHECK(v == 0);

  oracle::SampleBounds bounds;
  bounds.max_len = 3;
  bounds.val_lo = -1;
  bounds.val_hi = 1;
  for (const auto& inp : oracle::sample_inputs(p, 30, 2, bounds)) {
    if (!inp.arrays.count("a")) continue;  // the all-empty boundary case
    CHECK(inp.arrays.at("a").size() <= 3);
    for (long long v : inp.arrays.at("a")) {
      CHECK(v >= -1);
      CHECK(v <= 1);
    }
  }
}
