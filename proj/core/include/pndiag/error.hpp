#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pndiag {

enum class ErrorCode {
  kSyntax,
  kSchema,
  kUnknownPlace,
  kUnknownTransition,
  kDuplicateName,
  kEmptyPreset,
  kObservableFault,
  kNegativeCount,
  kNotObservable,
  kDisabledTransition,
  kBudgetExhausted,
  kConfiguration,
};

/// Stable identifier used in CLI error output, e.g. "E_UNKNOWN_PLACE".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed JSON; line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::kSyntax, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The explanation search stopped on a budget dimension. Never returned
/// alongside a partial answer.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::string dimension, std::size_t limit)
      : Error(ErrorCode::kBudgetExhausted,
              "search budget exhausted: " + dimension + " = " + std::to_string(limit)),
        dimension_(std::move(dimension)),
        limit_(limit) {}

  const std::string& dimension() const noexcept { return dimension_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::string dimension_;
  std::size_t limit_;
};

}  // namespace pndiag
