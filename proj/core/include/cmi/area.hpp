#pragma once

#include <string>

#include "cmi/rational.hpp"

namespace cmi {

/// Area of the spherical Gauss image, counted with multiplicity:
/// integral of 4 |g'|^2 / (1 + |g|^2)^2 over the domain, by tensor midpoint
/// quadrature refined by doubling until the relative change is below 1e-6.
/// The integrand is evaluated from the numerator/denominator pair directly,
/// so poles of g are harmless. Throws NonConvergent.
double sphericalArea(const RationalMap& g, const CircularDomain& domain,
                     int resolution = 64);

struct StabilityReport {
  double sphericalArea = 0.0;
  bool stableByAreaCriterion = false;  // true iff sphericalArea < 2*pi
  std::string verdict;                 // "stable" or "not concluded"
  double maxDensity = 0.0;             // peak integrand value (diagnostics)
};

/// Sufficient stability criterion: spherical image area below 2*pi. Reports
/// "not concluded" (never "unstable") otherwise.
StabilityReport stabilityCheck(const RationalMap& g, const CircularDomain& domain,
                               int resolution = 64);

}  // namespace cmi
