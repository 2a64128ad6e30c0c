#ifndef CTXUPB_ERROR_HPP
#define CTXUPB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ctxupb {

/// Domain error categories. The CLI reports `to_string(kind)` verbatim.
enum class ErrorKind {
  NonHermitian,
  DimensionMismatch,
  BadOrder,
  TooLarge,
  SizeMismatch,
  NotPrime,
  DegenerateParameter,
  BadT,
  BadPrime,
  EmptyFamily,
  BudgetExceeded,
  NotOrthogonalSet,
  Inconclusive,
  NotUpb,
  BadDecomposition,
  BadSize,
  InvalidState,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::BadT: return "BadT";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotOrthogonalSet: return "NotOrthogonalSet";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::NotUpb: return "NotUpb";
    case ErrorKind::BadDecomposition: return "BadDecomposition";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Condition-1 failure of an orthogonal product set; carries the offending pair.
class NotOrthogonalError : public Error {
 public:
  NotOrthogonalError(std::size_t first, std::size_t second)
      : Error(ErrorKind::NotOrthogonalSet,
              "condition 1 fails: states " + std::to_string(first) + " and " +
                  std::to_string(second) + " are orthogonal in no party"),
        first_(first),
        second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

}  // namespace ctxupb

#endif  // CTXUPB_ERROR_HPP
