#pragma once

#include <stdexcept>
#include <string>

namespace inhomog {

// Deterministic resource cutoffs. Message always names the budget that tripped
// and carries whatever partial progress the caller can report.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an inequality stayed undecided at the precision cap.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace inhomog
