#pragma once

#include <stdexcept>
#include <string>

namespace hsym {

enum class Errc {
  SpecMismatch,
  Singular,
  NotHermitianPair,
  NotPositive,
  UnknownUnit,
  NotInLieAlgebra,
  Unsupported,
  NotInGroup,
  NotInModel,
  SingularDenominator,
  NotRegular,
  NonTransverse,
  KernelRankMismatch,
  NotTangent,
  StepTooLarge,
  NotPattern,
  ShapeMismatch,
  ParseError,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace hsym
