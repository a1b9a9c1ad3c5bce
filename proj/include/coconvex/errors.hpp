#ifndef COCONVEX_ERRORS_HPP
#define COCONVEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coconvex {

enum class ErrorCode {
  // cone construction and queries
  NotPointed,
  DegenerateCone,
  ZetaFailure,
  NotUnit,
  NonPositiveT,
  DimensionCap,
  // halfspace intersection
  Unbounded,
  Empty,
  LowDimensional,
  // coconvex sets and measures
  EmptyOmega,
  NonPositiveF,
  DuplicateDirection,
  ZeroP,
  BothZero,
  ConeMismatch,
  StepTooLarge,
  EmptyMeasure,
  PEqualsN,
  ZeroVolume,
  InternalGeometryError,
  // instance generation
  GenerationFailure,
  // serialization and CLI
  ParseError,
  SchemaError,
  UnsupportedPlotDimension,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coconvex

#endif
