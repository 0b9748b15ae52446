#pragma once

#include <functional>

#include "cmi/domain.hpp"

namespace cmi {

using ComplexFn = std::function<Complex(Complex)>;

/// Loop integral of F over a circle by the periodic trapezoid rule, refined
/// by doubling the sample count until two successive values agree to
/// quad.pathTolerance. Throws NonConvergent if the refinement cap is hit.
Complex contourIntegral(const ComplexFn& F, const HomologyLoop& loop,
                        const QuadratureSpec& quad = {});

/// Same, but also reports the sample count that met the tolerance.
Complex contourIntegral(const ComplexFn& F, const HomologyLoop& loop,
                        const QuadratureSpec& quad, int* samplesUsed);

/// Fixed-count periodic trapezoid value (no refinement); exposed for
/// convergence studies.
Complex contourIntegralFixed(const ComplexFn& F, const HomologyLoop& loop, int samples);

/// Integral of F along a piecewise-linear path by composite Gauss-Legendre
/// on each segment. Every sample point must lie in the domain; throws
/// PathLeavesDomain otherwise. Pass nullptr to skip the containment check.
Complex pathIntegral(const ComplexFn& F, const PathInDomain& path,
                     const QuadratureSpec& quad = {},
                     const CircularDomain* domain = nullptr);

/// Gauss-Legendre integral of F along the straight segment [a, b].
Complex segmentIntegral(const ComplexFn& F, Complex a, Complex b, int order = 12);

}  // namespace cmi
