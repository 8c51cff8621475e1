#ifndef FILIFORM_ERROR_HPP
#define FILIFORM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace filiform {

enum class ErrorKind {
  DimensionMismatch,
  Singular,
  NotADerivation,
  NotInvariant,
  SingularOnDerived,
  NotClosed,
  Degenerate,
  BadDimension,
  BadRange,
  WrongLambdaCount,
  AllZeroLambdas,
  UnknownFamily,
  Parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotADerivation: return "NotADerivation";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::SingularOnDerived: return "SingularOnDerived";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::WrongLambdaCount: return "WrongLambdaCount";
    case ErrorKind::AllZeroLambdas: return "AllZeroLambdas";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace filiform

#endif  // FILIFORM_ERROR_HPP
