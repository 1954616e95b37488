#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

enum class ErrorCode {
  DivergentInput,
  PoleParameter,
  NoConvergence,
  ArityMismatch,
  DegenerateMu,
  SingularPivot,
  SpecializationMismatch,
  BlockMismatch,
  NonIntegralResult,
  NotUnimodular,
  PreconditionViolated,
  SingularSample,
  IntegrabilityViolated,
  NonIntegrableExponent,
  BranchCollision,
  DomainViolated,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperlab
