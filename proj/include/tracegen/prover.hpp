#pragma once

#include <string>

#include "tracegen/smtlib.hpp"

namespace tracegen::backend {

enum class ProverStatus { Proven, Unknown, Timeout, ProverError, SpawnError };

struct ProverVerdict {
  ProverStatus status = ProverStatus::ProverError;
  double wall_time = 0.0;  // seconds
  std::string raw_output;
};

const char* status_name(ProverStatus s);

// Writes the SMT-LIB text to a temporary file and runs the prover command
// on it under a wall-clock timeout. The command may contain a `{file}`
// placeholder; otherwise the file path is appended. Proven is reported
// only on an explicit unsat/refutation token in the output.
ProverVerdict run_prover(const std::string& smtlib_text,
                         const std::string& prover_cmd,
                         const EmissionConfig& cfg);

}  // namespace tracegen::backend
