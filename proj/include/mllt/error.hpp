#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mllt {

enum class ErrorCode {
  NonProbability,
  MassOverflow,
  ZeroTrials,
  OutOfSimplex,
  Eta,
  TooLarge,
  Degree,
  UnsupportedRegion,
  Counts,
  Index,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonProbability: return "RejectsNonProbability";
    case ErrorCode::MassOverflow: return "RejectsMassOverflow";
    case ErrorCode::ZeroTrials: return "RejectsZeroTrials";
    case ErrorCode::OutOfSimplex: return "RejectsOutOfSimplex";
    case ErrorCode::Eta: return "RejectsEta";
    case ErrorCode::TooLarge: return "RejectsTooLarge";
    case ErrorCode::Degree: return "RejectsDegree";
    case ErrorCode::UnsupportedRegion: return "RejectsUnsupportedRegion";
    case ErrorCode::Counts: return "RejectsCounts";
    case ErrorCode::Index: return "RejectsIndex";
    case ErrorCode::InvalidArgument: return "RejectsInvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mllt
