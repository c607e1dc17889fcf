#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegen/parser.hpp"

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(CORPUS_DIR) + "/" + name;
}

inline tracegen::ast::Program load_corpus(const std::string& name) {
  return tracegen::frontend::parse_program(read_file(corpus_path(name)));
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {
      "atleast_one_iteration.w",
      "copy.w",
      "copy_positive.w",
      "empty_loop.w",
      "find_sentinel.w",
      "guard_skip.w",
      "inc_by_one.w",
      "init.w",
      "max_of_two.w",
      "nested.w",
      "set_flag.w",
      "set_to_one.w",
      "skip.w",
      "str_len.w",
      "two_loops.w",
  };
  return names;
}
