#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "smtlib_checker.hpp"
#include "tracegen/prover.hpp"
#include "tracegen/semantics.hpp"
#include "tracegen/smtlib.hpp"

using namespace tracegen;

namespace {

std::string emit(const std::string& corpus_file,
                 backend::EmissionConfig cfg = {}) {
  auto p = load_corpus(corpus_file);
  auto task = sem::build_task(p);
  return backend::emit_smtlib(task, cfg);
}

}  // namespace

TEST_CASE("emission is deterministic") {
  for (auto mode : {backend::NatMode::Algebraic, backend::NatMode::Integer}) {
    backend::EmissionConfig cfg;
    cfg.nat_mode = mode;
    CHECK(emit("copy_positive.w", cfg) == emit("copy_positive.w", cfg));
  }
}

TEST_CASE("declaration goldens for the reference program") {
  auto text = emit("copy_positive.w");
  CHECK(text.rfind("(set-logic ALL)\n", 0) == 0);
  CHECK(text.find("(declare-sort Time 0)") != std::string::npos);
  CHECK(text.find("(declare-datatypes ((Nat 0)) (((zero) (suc (pred "
                  "Nat)))))") != std::string::npos);
  CHECK(text.find("(declare-fun n7 () Nat)") != std::string::npos);
  CHECK(text.find("(declare-fun b (Time Int) Int)") != std::string::npos);
  CHECK(text.find("(declare-fun a (Int) Int)") != std::string::npos);
  CHECK(text.find("(declare-fun a_length () Int)") != std::string::npos);
  CHECK(text.find("(declare-fun l7 (Nat) Time)") != std::string::npos);
  CHECK(text.find("(declare-fun l_end () Time)") != std::string::npos);
  CHECK(text.find(":named semantics-l12") != std::string::npos);
  CHECK(text.find(":named reach-l_end") != std::string::npos);
  CHECK(text.find(":named lemma-b2-l7-j") != std::string::npos);
  // negated conjecture, then a final check-sat
  CHECK(text.find("(assert (! (not (forall ((k Int))") != std::string::npos);
  CHECK(text.substr(text.size() - 12) == "(check-sat)\n");
}

TEST_CASE("integer mode embeds Nat into guarded integers") {
  backend::EmissionConfig cfg;
  cfg.nat_mode = backend::NatMode::Integer;
  auto text = emit("copy_positive.w", cfg);
  CHECK(text.find("declare-datatypes") == std::string::npos);
  CHECK(text.find("(declare-fun n7 () Int)") != std::string::npos);
  // declared Nat-valued constants carry explicit range facts
  CHECK(text.find("(assert (! (<= 0 n7) :named nat-range-n7))") !=
        std::string::npos);
  // Nat binders are guarded
  CHECK(text.find("(forall ((it7 Int)) (=> (<= 0 it7)") != std::string::npos);
  CHECK(text.find("zero") == std::string::npos);
  CHECK(text.find("(suc ") == std::string::npos);
}

TEST_CASE("lemma section respects the configuration") {
  backend::EmissionConfig cfg;
  cfg.include_lemmas = false;
  auto text = emit("copy_positive.w", cfg);
  CHECK(text.find("; trace lemmas") == std::string::npos);
  CHECK(text.find("lemma-a1") == std::string::npos);
  CHECK(emit("copy_positive.w").find("; trace lemmas") != std::string::npos);
}

TEST_CASE("alternative conjecture syntax") {
  backend::EmissionConfig cfg;
  cfg.conjecture_mode = backend::ConjectureMode::AssertNot;
  auto text = emit("skip.w", cfg);
  CHECK(text.find("(assert-not true)") != std::string::npos);
  // no negated-conjecture assert in this mode
  CHECK(text.find("(assert (! (not") == std::string::npos);
}

TEST_CASE("emitted scripts pass an independent surface parser") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    for (auto mode :
         {backend::NatMode::Algebraic, backend::NatMode::Integer}) {
      backend::EmissionConfig cfg;
      cfg.nat_mode = mode;
      auto diag = smtcheck::check_smtlib(emit(name, cfg));
      CHECK_MESSAGE(diag.empty(), name << ": " << diag);
    }
  }
}

TEST_CASE("the surface parser itself rejects malformed scripts") {
  CHECK_FALSE(smtcheck::check_smtlib("(assert (= x 1)").empty());
  CHECK_FALSE(smtcheck::check_smtlib("(frobnicate)\n(check-sat)").empty());
  CHECK_FALSE(smtcheck::check_smtlib("(assert ())\n(check-sat)").empty());
  CHECK_FALSE(smtcheck::check_smtlib("(assert (= x 1))").empty());  // no check-sat
  CHECK_FALSE(smtcheck::check_smtlib("(check-sat) extra)").empty());
  CHECK(smtcheck::check_smtlib(
            "(set-logic ALL)\n(declare-fun x () Int)\n"
            "(assert (! (= x 1) :named a))\n(check-sat)\n")
            .empty());
}

TEST_CASE("prover driver verdict mapping") {
  backend::EmissionConfig cfg;
  cfg.timeout_seconds = 1;
  const std::string dummy = "(check-sat)\n";

  SUBCASE("explicit unsat is the only route to Proven") {
    CHECK(backend::run_prover(dummy, "echo unsat", cfg).status ==
          backend::ProverStatus::Proven);
    CHECK(backend::run_prover(dummy, "echo sat", cfg).status ==
          backend::ProverStatus::Unknown);
    CHECK(backend::run_prover(dummy, "echo unknown", cfg).status ==
          backend::ProverStatus::Unknown);
    // substring matches do not count
    CHECK(backend::run_prover(dummy, "echo unsatisfiable", cfg).status ==
          backend::ProverStatus::Unknown);
  }
  SUBCASE("resolution-style refutation reports") {
    auto v = backend::run_prover(dummy, "echo Termination reason: Refutation",
                                 cfg);
    CHECK(v.status == backend::ProverStatus::Proven);
  }
  SUBCASE("missing executable") {
    CHECK(backend::run_prover(dummy, "/no/such/prover-binary", cfg).status ==
          backend::ProverStatus::SpawnError);
  }
  SUBCASE("wall-clock timeout") {
    auto v = backend::run_prover(dummy, "sh -c 'sleep 5' {file}", cfg);
    CHECK(v.status == backend::ProverStatus::Timeout);
    CHECK(v.wall_time < 3.0);
  }
  SUBCASE("crash without a verdict") {
    CHECK(backend::run_prover(dummy, "false", cfg).status ==
          backend::ProverStatus::ProverError);
  }
  SUBCASE("the problem file reaches the prover") {
    auto v = backend::run_prover("hello unsat world\n", "cat", cfg);
    CHECK(v.status == backend::ProverStatus::Proven);
    CHECK(v.raw_output.find("hello unsat world") != std::string::npos);
  }
}
