#pragma once

#include <stdexcept>
#include <string>

namespace graud {

enum class ErrorCode {
  Ok = 0,
  InvalidArgument,
  IndexOutOfRange,
  SelfLoop,
  DimensionMismatch,
  Parse,
  Io,
  MissingNode,
  DuplicateNode,
  RankDeficientColumns,
  FullRowRank,
  NotPsd,
  AllZeroSpectrum,
  AssumptionViolated,
  NonPositiveCount,
  DivergedLoss,
  NonFiniteIterate,
  InvalidProbability,
  InvalidDelta,
  InvalidEps,
  SmoothnessUnreachable,
  FoldTooSmall,
  ZeroTruthNorm,
  UnknownExperiment,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace graud
