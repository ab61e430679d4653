#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nufact {

enum class ErrorKind {
  ShapeMismatch,
  InvalidGroup,
  InvalidInstance,
  NotElement,
  ZeroElement,
  EnumerationBudgetExceeded,
  NotMultiPrime,
  NotAtom,
  NotPrimitive,
  NotMember,
  NotSaturated,
  InvalidSemigroup,
  FieldMismatch,
  BadCertificate,
  NotInSubring,
  QuintupleMismatch,
  Unsupported,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::NotElement: return "NotElement";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::NotMultiPrime: return "NotMultiPrime";
    case ErrorKind::NotAtom: return "NotAtom";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotMember: return "NotMember";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::InvalidSemigroup: return "InvalidSemigroup";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::BadCertificate: return "BadCertificate";
    case ErrorKind::NotInSubring: return "NotInSubring";
    case ErrorKind::QuintupleMismatch: return "QuintupleMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace nufact
