#pragma once

#include <stdexcept>
#include <string>

#include "tracegen/semantics.hpp"

namespace tracegen::backend {

enum class NatMode { Algebraic, Integer };
enum class ConjectureMode { NegatedAssert, AssertNot };

struct EmissionConfig {
  NatMode nat_mode = NatMode::Algebraic;
  ConjectureMode conjecture_mode = ConjectureMode::NegatedAssert;
  bool include_lemmas = true;
  int timeout_seconds = 60;
};

struct UnsupportedFeature : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic SMT-LIB 2.6 text for the task. Algebraic mode declares
// Nat as a datatype with an axiomatized leq; integer mode embeds Nat
// into the non-negative integers with quantifier guards.
std::string emit_smtlib(const sem::VerificationTask& task,
                        const EmissionConfig& cfg);

}  // namespace tracegen::backend
