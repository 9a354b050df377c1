#include "cmcrad/error.hpp"

namespace cmcrad {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionOutOfRange: return "dimension-out-of-range";
    case ErrorKind::EmptyInterval: return "empty-interval";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::Domain: return "domain-error";
    case ErrorKind::UnattainableCurvature: return "unattainable-curvature";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::InvalidCap: return "invalid-cap";
    case ErrorKind::DegenerateTriangle: return "degenerate-triangle";
    case ErrorKind::NoBoundary: return "no-boundary";
    case ErrorKind::NoApplicableBound: return "no-applicable-bound";
    case ErrorKind::Usage: return "usage-error";
    case ErrorKind::ConfigParse: return "config-parse-error";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown-error";
}

}  // namespace cmcrad
