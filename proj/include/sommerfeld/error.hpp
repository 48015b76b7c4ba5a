#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sommerfeld {

enum class ErrorCode {
  InvalidParameter,
  SupercriticalCoupling,
  UnsupportedDimension,
  NotApplicable,
  DomainViolation,
  OutOfBoundRange,
  NoSuchBoundState,
  NoClassicalRegion,
  OutOfRange,
  DegenerateWell,
  ToleranceNotMet,
  BracketingFailed,
  NoRealK,
  DegenerateSigma,
  NoBoundBranch,
  AmbiguousBranch,
  NotSommerfeldType,
  Overflow,
  GridTooCoarse,
  InsufficientGrids,
  FitUnstable,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SupercriticalCoupling: return "SupercriticalCoupling";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::OutOfBoundRange: return "OutOfBoundRange";
    case ErrorCode::NoSuchBoundState: return "NoSuchBoundState";
    case ErrorCode::NoClassicalRegion: return "NoClassicalRegion";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateWell: return "DegenerateWell";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::BracketingFailed: return "BracketingFailed";
    case ErrorCode::NoRealK: return "NoRealK";
    case ErrorCode::DegenerateSigma: return "DegenerateSigma";
    case ErrorCode::NoBoundBranch: return "NoBoundBranch";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::NotSommerfeldType: return "NotSommerfeldType";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::InsufficientGrids: return "InsufficientGrids";
    case ErrorCode::FitUnstable: return "FitUnstable";
  }
  return "Unknown";
}

// Every failure in the library is reported through this type; code() is what
// callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sommerfeld
