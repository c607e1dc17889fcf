#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "tracegen/lemmas.hpp"
#include "tracegen/oracle.hpp"
#include "tracegen/parser.hpp"
#include "tracegen/prover.hpp"
#include "tracegen/semantics.hpp"
#include "tracegen/smtlib.hpp"

namespace fs = std::filesystem;
using namespace tracegen;

namespace {

// exit codes: 0 success/Proven, 1 Unknown/Timeout, 2 usage or input
// error, 3 oracle violation
constexpr int kOk = 0;
constexpr int kNotProven = 1;
constexpr int kInputError = 2;
constexpr int kViolation = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> collect_programs(const std::string& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == ".w") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  if (files.empty()) throw std::runtime_error("no .w programs under " + path);
  return files;
}

struct EmitFlags {
  std::string nat_mode = "algebraic";
  bool no_lemmas = false;
  int timeout = 60;

  backend::EmissionConfig config() const {
    backend::EmissionConfig cfg;
    cfg.nat_mode = nat_mode == "integer" ? backend::NatMode::Integer
                                         : backend::NatMode::Algebraic;
    cfg.include_lemmas = !no_lemmas;
    cfg.timeout_seconds = timeout;
    return cfg;
  }
};

void add_emit_flags(CLI::App* cmd, EmitFlags& f) {
  cmd->add_option("--nat-mode", f.nat_mode, "Nat encoding")
      ->check(CLI::IsMember({"algebraic", "integer"}));
  cmd->add_flag("--no-lemmas", f.no_lemmas, "omit trace lemma instances");
}

std::string emit_for(const std::string& path, const EmitFlags& flags) {
  auto prog = frontend::parse_program(read_file(path));
  sem::GenOptions gopts;
  gopts.include_lemmas = !flags.no_lemmas;
  auto task = sem::build_task(prog, gopts);
  return backend::emit_smtlib(task, flags.config());
}

struct SweepFlags {
  int count = 50;
  unsigned seed = 1;
  int max_len = 5;
  std::string val_range = "-3:3";

  oracle::SampleBounds bounds() const {
    oracle::SampleBounds b;
    b.max_len = max_len;
    auto sep = val_range.find(':', 1);  // allow a leading minus
    if (sep == std::string::npos)
      throw CLI::ValidationError("--val-range expects lo:hi");
    b.val_lo = std::stoll(val_range.substr(0, sep));
    b.val_hi = std::stoll(val_range.substr(sep + 1));
    if (b.val_lo > b.val_hi)
      throw CLI::ValidationError("--val-range expects lo <= hi");
    return b;
  }
};

int run_check(const std::string& path, const SweepFlags& flags) {
  auto bounds = flags.bounds();
  long long total_checks = 0;
  long long total_violations = 0;
  for (const auto& file : collect_programs(path)) {
    auto prog = frontend::parse_program(read_file(file.string()));
    auto task = sem::build_task(prog);
    std::vector<oracle::ExecutionTrace> traces;
    for (const auto& inp :
         oracle::sample_inputs(prog, flags.count, flags.seed, bounds))
      traces.push_back(oracle::execute(prog, inp));
    auto rep = oracle::check_task(task, traces);

    std::vector<oracle::Violation> reach_facts;
    for (const auto& tr : traces) {
      auto v = oracle::check_reach_facts(prog, tr);
      reach_facts.insert(reach_facts.end(), v.begin(), v.end());
      total_checks += 1;
    }

    total_checks += rep.checks;
    auto all = rep.violations;
    all.insert(all.end(), rep.conjecture_failures.begin(),
               rep.conjecture_failures.end());
    all.insert(all.end(), reach_facts.begin(), reach_facts.end());
    total_violations += static_cast<long long>(all.size());
    for (const auto& v : all)
      std::cout << file.filename().string() << ": " << v.label
                << " falsified on input " << v.input << "\n";
  }
  std::cout << total_violations << " violations / " << total_checks
            << " checks\n";
  return total_violations == 0 ? kOk : kViolation;
}

struct BenchRow {
  std::string name;
  backend::ProverVerdict verdict;
};

int run_bench(const std::string& path, const EmitFlags& eflags,
              const std::string& prover, int jobs,
              const std::string& out_tsv) {
  auto files = collect_programs(path);
  std::vector<BenchRow> rows(files.size());
  std::atomic<size_t> next{0};
  std::mutex err_mtx;
  auto worker = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < files.size();) {
      rows[i].name = files[i].stem().string();
      try {
        auto text = emit_for(files[i].string(), eflags);
        rows[i].verdict =
            backend::run_prover(text, prover, eflags.config());
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(err_mtx);
        rows[i].verdict.status = backend::ProverStatus::ProverError;
        rows[i].verdict.raw_output = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < std::max(1, jobs); ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::ostringstream tsv;
  tsv << "benchmark\tstatus\twall_time_s\n";
  int solved = 0;
  for (const auto& r : rows) {
    if (r.verdict.status == backend::ProverStatus::Proven) ++solved;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", r.verdict.wall_time);
    tsv << r.name << "\t" << backend::status_name(r.verdict.status) << "\t"
        << buf << "\n";
  }
  if (!out_tsv.empty()) {
    std::ofstream out(out_tsv);
    out << tsv.str();
  }

  size_t width = 9;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::cout << std::left;
  for (const auto& r : rows) {
    std::cout.width(static_cast<std::streamsize>(width + 2));
    std::cout << r.name;
    std::cout << backend::status_name(r.verdict.status) << "  "
              << std::fixed;
    std::cout.precision(2);
    std::cout << r.verdict.wall_time << "s\n";
  }
  std::cout << "Total solved " << solved << "/" << rows.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-logic verification condition generator"};
  app.require_subcommand(1);

  std::string input, output, prover;
  if (const char* env = std::getenv("TRACEGEN_PROVER")) prover = env;
  EmitFlags eflags;
  SweepFlags sflags;
  int jobs = 1;

  auto* emit = app.add_subcommand("emit", "translate a program to SMT-LIB");
  emit->add_option("input", input, "program file")->required();
  emit->add_option("-o,--output", output, "output file (default stdout)");
  add_emit_flags(emit, eflags);

  auto* verify =
      app.add_subcommand("verify", "emit and run the external prover");
  verify->add_option("input", input, "program file")->required();
  verify->add_option("--prover", prover, "prover command ({file} placeholder)");
  verify->add_option("--timeout", eflags.timeout, "prover timeout in seconds")
      ->check(CLI::PositiveNumber);
  add_emit_flags(verify, eflags);

  auto* check =
      app.add_subcommand("check", "oracle soundness sweep over programs");
  check->add_option("input", input, "program file or directory")->required();
  check->add_option("--count", sflags.count, "inputs per program")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", sflags.seed, "sampling seed");
  check->add_option("--max-len", sflags.max_len, "maximum array length")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--val-range", sflags.val_range, "value range lo:hi");

  auto* bench = app.add_subcommand("bench", "verify a benchmark directory");
  bench->add_option("input", input, "directory of .w programs")->required();
  bench->add_option("--prover", prover, "prover command ({file} placeholder)");
  bench->add_option("--timeout", eflags.timeout, "prover timeout in seconds")
      ->check(CLI::PositiveNumber);
  bench->add_option("--jobs", jobs, "parallel prover runs")
      ->check(CLI::PositiveNumber);
  bench->add_option("-o,--output", output, "TSV report file");
  add_emit_flags(bench, eflags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (emit->parsed()) {
      auto text = emit_for(input, eflags);
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output);
        if (!out) throw std::runtime_error("cannot write " + output);
        out << text;
      }
      return kOk;
    }
    if (verify->parsed()) {
      if (prover.empty())
        throw std::runtime_error(
            "no prover configured (use --prover or TRACEGEN_PROVER)");
      auto text = emit_for(input, eflags);
      auto v = backend::run_prover(text, prover, eflags.config());
      std::cout << backend::status_name(v.status) << " ("
                << std::fixed;
      std::cout.precision(2);
      std::cout << v.wall_time << "s)\n";
      switch (v.status) {
        case backend::ProverStatus::Proven:
          return kOk;
        case backend::ProverStatus::Unknown:
        case backend::ProverStatus::Timeout:
          return kNotProven;
        default:
          std::cerr << v.raw_output << "\n";
          return kInputError;
      }
    }
    if (check->parsed()) return run_check(input, sflags);
    if (bench->parsed()) {
      if (prover.empty())
        throw std::runtime_error(
            "no prover configured (use --prover or TRACEGEN_PROVER)");
      return run_bench(input, eflags, prover, jobs, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
