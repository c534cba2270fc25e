#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrakit {

enum class ErrorCode {
  ResolutionMismatch,
  CoarseningUnsupported,
  NotRepresentable,
  BadGrid,
  GridTooCoarse,
  ZeroArgument,
  NonRealSpectrum,
  DegenerateSpectrum,
  InadmissibleFilter,
  NonOrthogonalFamily,
  DegenerateBase,
  InvalidValue,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorCode::CoarseningUnsupported: return "CoarseningUnsupported";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::BadGrid: return "BadGrid";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NonRealSpectrum: return "NonRealSpectrum";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::InadmissibleFilter: return "InadmissibleFilter";
    case ErrorCode::NonOrthogonalFamily: return "NonOrthogonalFamily";
    case ErrorCode::DegenerateBase: return "DegenerateBase";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// CLI prints the code name verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mrakit
