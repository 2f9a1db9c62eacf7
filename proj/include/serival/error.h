#ifndef SERIVAL_ERROR_H
#define SERIVAL_ERROR_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace serival {

struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

// Raised when an answer cannot be certified at the available precision.
struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeBudgetExceeded : std::runtime_error {
  explicit DegreeBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::invalid_argument {
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at offset " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace serival

#endif  // SERIVAL_ERROR_H
