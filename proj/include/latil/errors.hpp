#pragma once

#include <stdexcept>
#include <string>

namespace latil {

// Generator set does not span a full-rank sublattice.
struct rank_error : std::invalid_argument {
  explicit rank_error(const std::string &msg) : std::invalid_argument(msg) {}
};

// Enumeration volume exceeds the configured safety cap.
struct box_limit_error : std::runtime_error {
  explicit box_limit_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Combinatorial budget (subset enumeration, search) exceeded.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Instance file syntax / semantics problems, with a 1-based line number.
struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string &msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

} // namespace latil
