#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/semantics.hpp"

// Reference interpreter and bounded formula evaluator: executes a program
// on concrete inputs, builds the induced execution interpretation, and
// checks every generated axiom against it with finite quantifier domains.

namespace tracegen::oracle {

struct OutOfBoundsRead : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StepLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputValuation {
  std::map<std::string, long long> ints;  // const ints and initial mutables
  std::map<std::string, std::vector<long long>> arrays;  // const arrays
  std::string describe() const;
};

struct ExecOptions {
  bool permissive_reads = false;  // out-of-bounds const-array reads give 0
  long long step_limit = 100000;
};

struct VarState {
  std::map<std::string, long long> ints;
  std::map<std::string, std::map<long long, long long>> arrays;
};

struct ExecutionTrace {
  InputValuation input;
  std::vector<std::string> reached;  // ground timepoints in visit order
  std::vector<std::string> rules;    // rule applied at each visit
  std::set<std::string> reached_set;
  std::map<std::string, VarState> states;  // snapshot at each timepoint
  std::map<std::string, unsigned long long> last_iterations;
  std::map<std::string, long long> lengths;  // per const array
  bool terminated = false;
  long long step_count = 0;
  unsigned long long max_iter = 0;
};

ExecutionTrace execute(const ast::Program& p, const InputValuation& inp,
                       const ExecOptions& opts = {});

// One line per visited timepoint: `<timepoint> <rule> <var>=<value>...`.
std::string trace_dump(const ExecutionTrace& tr);

struct EvalDomains {
  unsigned long long nat_bound = 0;       // Nat quantifiers range over [0, nat_bound]
  std::vector<long long> int_window;
  std::vector<std::string> time_domain;   // ground timepoints (incl. unreached)
};

EvalDomains make_domains(const model::Signature& sig,
                         const ExecutionTrace& tr);

enum class EvalResult { False, True, OutOfDomain };

EvalResult eval_formula(const logic::FormulaPtr& f, const ExecutionTrace& tr,
                        const EvalDomains& dom);

struct Violation {
  std::string label;
  std::string input;
};

struct CheckReport {
  long long checks = 0;
  std::vector<Violation> violations;            // axiom/lemma failures
  std::vector<Violation> conjecture_failures;   // property false on a trace
};

CheckReport check_task(const sem::VerificationTask& task,
                       const std::vector<ExecutionTrace>& traces);

// Reach facts on terminating traces: a reached subprogram start implies a
// reached end, and a reached loop implies all iterations up to lastIt.
std::vector<Violation> check_reach_facts(const ast::Program& p,
                                         const ExecutionTrace& tr);

struct SampleBounds {
  int max_len = 5;
  long long val_lo = -3;
  long long val_hi = 3;
};

// Deterministic; the first two valuations are the all-empty and the
// all-zero/max-length boundary cases.
std::vector<InputValuation> sample_inputs(const ast::Program& p, int count,
                                          unsigned seed,
                                          const SampleBounds& bounds = {});

}  // namespace tracegen::oracle
