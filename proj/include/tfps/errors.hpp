#ifndef TFPS_ERRORS_HPP
#define TFPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfps {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixed variable contexts or mixed coefficient fields.
struct ContextError : Error {
  explicit ContextError(const std::string& msg) : Error(msg) {}
};

// Inverting a non-unit, differentiating at precision 1, and similar
// violations of an operation's mathematical precondition.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// The requested answer is masked by truncation; retry with more precision.
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

// An explicit enumeration budget would be exceeded.
struct BudgetError : Error {
  explicit BudgetError(const std::string& msg) : Error(msg) {}
};

// Syntax error with position information.
struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " at line " + std::to_string(line_) + ", column " +
              std::to_string(column_)),
        line(line_),
        column(column_) {}
};

}  // namespace tfps

#endif
