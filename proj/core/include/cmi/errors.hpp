#pragma once

#include <stdexcept>
#include <string>

namespace cmi {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// geometry
struct InvalidDomain : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct PathLeavesDomain : Error { using Error::Error; };
struct OffsetTooLarge : Error { using Error::Error; };

// holomorphic
struct NearPole : Error { using Error::Error; };
struct ZeroOnContour : Error { using Error::Error; };
struct AmbiguousWinding : Error { using Error::Error; };
struct SprayVanishes : Error { using Error::Error; };

// nullcurve
struct ZeroPoleMismatch : Error { using Error::Error; };
struct NullityViolated : Error { using Error::Error; };
struct PoleInDomain : Error { using Error::Error; };
struct CommonZero : Error { using Error::Error; };
struct LiftAmbiguous : Error { using Error::Error; };

// periodsolver
struct NotFull : Error { using Error::Error; };
struct SpanSelectionFailed : Error { using Error::Error; };
struct TargetOutsideSpan : Error { using Error::Error; };
struct MaxIterations : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct ContinuationStalled : Error { using Error::Error; };
struct SolverFailed : Error { using Error::Error; };
struct NotNowhereFlat : Error { using Error::Error; };
struct CorrectionFailed : Error { using Error::Error; };

// surface
struct RealPeriodsNonzero : Error { using Error::Error; };
struct ComplexPeriodsNonzero : Error { using Error::Error; };
struct DegenerateCell : Error { using Error::Error; };
struct ExactnessFailed : Error { using Error::Error; };
struct InvalidGrid : Error { using Error::Error; };

// cli / parsing
struct ConfigError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace cmi
