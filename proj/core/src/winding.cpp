#include "cmi/winding.hpp"

#include <cmath>
#include <vector>

namespace cmi {

int windingNumber(const ComplexFn& F, const HomologyLoop& loop, const QuadratureSpec& quad) {
  int n = quad.samplesPerLoop < 16 ? 16 : quad.samplesPerLoop;
  for (int attempt = 0; attempt <= quad.maxRefinements; ++attempt, n *= 2) {
    std::vector<Complex> vals(n);
    double minAbs = 1e300, maxAbs = 0.0;
    int minIdx = 0;
    for (int k = 0; k < n; ++k) {
      vals[k] = F(loop.point(static_cast<double>(k) / n));
      double a = std::abs(vals[k]);
      if (a < minAbs) {
        minAbs = a;
        minIdx = k;
      }
      maxAbs = std::max(maxAbs, a);
    }
    if (!std::isfinite(maxAbs)) {
      throw AmbiguousWinding("function is not finite on the contour");
    }
    // A zero on the contour shows up as an exact zero or a sharp dip relative
    // to the adjacent samples. Comparing against neighbours (not the global
    // max) keeps smooth nonvanishing functions with a large dynamic range,
    // such as exp of a multiplier exponent, from being misread as vanishing.
    double neighbor = 0.5 * (std::abs(vals[(minIdx + n - 1) % n]) +
                             std::abs(vals[(minIdx + 1) % n]));
    if (minAbs == 0.0 || minAbs < 1e-13 * neighbor) {
      throw ZeroOnContour("function vanishes on the contour");
    }
    double total = 0.0;
    bool resolved = true;
    for (int k = 0; k < n; ++k) {
      double d = std::arg(vals[(k + 1) % n] / vals[k]);
      if (std::abs(d) > kPi / 2.0) {
        resolved = false;
        break;
      }
      total += d;
    }
    if (!resolved) continue;
    double w = total / (2.0 * kPi) * loop.orientation;
    double nearest = std::round(w);
    if (std::abs(w - nearest) > 0.1) {
      throw AmbiguousWinding("winding estimate too far from an integer");
    }
    return static_cast<int>(nearest);
  }
  throw AmbiguousWinding("phase steps not resolved at the refinement cap");
}

int zeroCount(const ComplexFn& F, const CircularDomain& domain, const QuadratureSpec& quad) {
  HomologyLoop outer{Complex(0.0), 1.0, +1};
  int count = windingNumber(F, outer, quad);
  for (const Hole& h : domain.holes()) {
    count -= windingNumber(F, HomologyLoop{h.center, h.radius, +1}, quad);
  }
  return count;
}

bool assertNonvanishing(const ComplexFn& F, const CircularDomain& domain,
                        const DomainGrid& grid, const QuadratureSpec& quad) {
  if (zeroCount(F, domain, quad) != 0) return false;
  // The argument-principle count above already rules out zeros of an analytic
  // F with any multiplicity, so the pointwise sweep only needs to catch exact
  // zeros and non-finite values; an absolute magnitude threshold would reject
  // legitimately small values of wide-dynamic-range multipliers.
  for (const auto& p : grid.points()) {
    double a = std::abs(F(p.z));
    if (!(a > 0.0) || !std::isfinite(a)) return false;
  }
  return true;
}

}  // namespace cmi
