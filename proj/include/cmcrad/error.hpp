#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmcrad {

enum class ErrorKind {
  DimensionOutOfRange,
  EmptyInterval,
  HypothesisViolation,
  PreconditionViolation,
  Domain,
  UnattainableCurvature,
  NonConvergence,
  InvalidCap,
  DegenerateTriangle,
  NoBoundary,
  NoApplicableBound,
  Usage,
  ConfigParse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the
/// failure classes that callers (CLI exit codes, tests) branch on.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace cmcrad
