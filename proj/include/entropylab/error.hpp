#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entropylab {

enum class ErrorKind {
  // validation / parse
  PrefixViolation,
  EmptyImage,
  InvalidResidual,
  BadSymbol,
  NondeterministicKey,
  EpsilonInEpsilonFree,
  SpecSyntax,
  UnknownLanguage,
  AlphabetMismatch,
  AmbiguousDecode,
  BadFile,
  InvalidArgument,
  // resource limits
  BudgetExceeded,
  StepBudgetExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PrefixViolation: return "PrefixViolation";
    case ErrorKind::EmptyImage: return "EmptyImage";
    case ErrorKind::InvalidResidual: return "InvalidResidual";
    case ErrorKind::BadSymbol: return "BadSymbol";
    case ErrorKind::NondeterministicKey: return "NondeterministicKey";
    case ErrorKind::EpsilonInEpsilonFree: return "EpsilonInEpsilonFree";
    case ErrorKind::SpecSyntax: return "SpecSyntax";
    case ErrorKind::UnknownLanguage: return "UnknownLanguage";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::AmbiguousDecode: return "AmbiguousDecode";
    case ErrorKind::BadFile: return "BadFile";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
  }
  return "Unknown";
}

/// Every recoverable failure in the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_budget() const noexcept {
    return kind_ == ErrorKind::BudgetExceeded || kind_ == ErrorKind::StepBudgetExceeded;
  }

 private:
  ErrorKind kind_;
};

/// Misuse of an API contract (e.g. a word over the wrong alphabet). Not an
/// `Error`: these indicate bugs in the caller, not bad input.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace entropylab
