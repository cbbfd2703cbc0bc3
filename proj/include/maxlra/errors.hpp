#pragma once

#include <stdexcept>
#include <string>

namespace maxlra {

enum class ErrorCode {
  InvalidArgument = 1,
  ShapeMismatch,
  InvalidRank,
  RankDeficient,
  NoConvergence,
  NotOrthonormal,
  ZeroMatrix,
  InvalidEps,
  InvalidBand,
  NotPowerOfTwo,
  InvalidBracket,
  EmptyInput,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::InvalidBracket: return "InvalidBracket";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace maxlra
