#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpk {

enum class ErrorCode {
  DimensionError,
  UnsupportedDegree,
  InvalidClass,
  InvalidRoot,
  InvalidWord,
  TooLarge,
  InternalError,
  BudgetExceeded,
  NotHomogeneous,
  Inconclusive,
  DegenerateIntersection,
  UnexpectedDegree,
  LineHasRationalPoint,
  ConstructionFailed,
  InvalidPerturbation,
  UnsupportedPrime,
  NotSmooth,
  IncompleteData,
  RankError,
  InvalidConfig,
  InconsistentEvidence,
  ParseError,
  InvalidField,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::InvalidClass: return "InvalidClass";
    case ErrorCode::InvalidRoot: return "InvalidRoot";
    case ErrorCode::InvalidWord: return "InvalidWord";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::DegenerateIntersection: return "DegenerateIntersection";
    case ErrorCode::UnexpectedDegree: return "UnexpectedDegree";
    case ErrorCode::LineHasRationalPoint: return "LineHasRationalPoint";
    case ErrorCode::ConstructionFailed: return "ConstructionFailed";
    case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::IncompleteData: return "IncompleteData";
    case ErrorCode::RankError: return "RankError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InconsistentEvidence: return "InconsistentEvidence";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidField: return "InvalidField";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace dpk
