#include "tracegen/prover.hpp"

#include <unistd.h>

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tracegen::backend {

namespace {

// True if `word` occurs in `text` without letter characters touching it,
// so "unsat" never matches inside e.g. "unsatisfiable-cores".
bool has_word(const std::string& text, const std::string& word) {
  size_t pos = 0;
  auto is_wordchar = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while ((pos = text.find(word, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !is_wordchar(text[pos - 1]);
    size_t end = pos + word.size();
    bool right_ok = end == text.size() || !is_wordchar(text[end]);
    if (left_ok && right_ok) return true;
    pos = end;
  }
  return false;
}

std::string write_temp(const std::string& text) {
  std::string tmpl = "/tmp/tracegen-XXXXXX.smt2";
  int fd = mkstemps(tmpl.data(), 5);
  if (fd < 0) throw std::runtime_error("cannot create temporary file");
  FILE* f = fdopen(fd, "w");
  fwrite(text.data(), 1, text.size(), f);
  fclose(f);
  return tmpl;
}

std::string substitute_file(const std::string& cmd, const std::string& path) {
  std::string out = cmd;
  size_t pos = out.find("{file}");
  if (pos == std::string::npos) return out + " " + path;
  while (pos != std::string::npos) {
    out.replace(pos, 6, path);
    pos = out.find("{file}", pos + path.size());
  }
  return out;
}

}  // namespace

const char* status_name(ProverStatus s) {
  switch (s) {
    case ProverStatus::Proven: return "Proven";
    case ProverStatus::Unknown: return "Unknown";
    case ProverStatus::Timeout: return "Timeout";
    case ProverStatus::ProverError: return "ProverError";
    case ProverStatus::SpawnError: return "SpawnError";
  }
  return "?";
}

ProverVerdict run_prover(const std::string& smtlib_text,
                         const std::string& prover_cmd,
                         const EmissionConfig& cfg) {
  std::string path = write_temp(smtlib_text);
  std::string cmd = "timeout " + std::to_string(cfg.timeout_seconds) + " " +
                    substitute_file(prover_cmd, path) + " 2>&1";

  ProverVerdict v;
  auto t0 = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::remove(path.c_str());
    v.status = ProverStatus::SpawnError;
    return v;
  }
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    v.raw_output.append(buf.data(), n);
  int rc = pclose(pipe);
  auto t1 = std::chrono::steady_clock::now();
  v.wall_time = std::chrono::duration<double>(t1 - t0).count();
  std::remove(path.c_str());

  int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  if (has_word(v.raw_output, "unsat") ||
      has_word(v.raw_output, "Refutation")) {
    v.status = ProverStatus::Proven;
  } else if (exit_code == 124) {  // killed by timeout(1)
    v.status = ProverStatus::Timeout;
  } else if (exit_code == 127 || exit_code == 126) {
    v.status = ProverStatus::SpawnError;
  } else if (has_word(v.raw_output, "sat") ||
             has_word(v.raw_output, "unknown") ||
             has_word(v.raw_output, "Satisfiable")) {
    v.status = ProverStatus::Unknown;
  } else {
    v.status = exit_code == 0 ? ProverStatus::Unknown
                              : ProverStatus::ProverError;
  }
  return v;
}

}  // namespace tracegen::backend
