#pragma once

#include <stdexcept>
#include <string>

namespace sle {

enum class ErrorCode {
  PoleAtMarkedPoint,
  DegenerateMap,
  InsufficientJet,
  PoleAtDriving,
  DiagonalSingularity,
  BranchCutCrossing,
  Unsupported,
  InsertionSingularity,
  ContourCollision,
  NearMarkedPoint,
  BadStep,
  TraceInstability,
  SolverFailure,
  Stopped,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace sle
