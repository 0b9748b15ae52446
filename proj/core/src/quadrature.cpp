#include "cmi/quadrature.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace cmi {

Complex contourIntegralFixed(const ComplexFn& F, const HomologyLoop& loop, int samples) {
  Complex sum = 0.0;
  for (int k = 0; k < samples; ++k) {
    double t = static_cast<double>(k) / samples;
    sum += F(loop.point(t)) * loop.tangent(t);
  }
  return sum / static_cast<double>(samples) * static_cast<double>(loop.orientation);
}

Complex contourIntegral(const ComplexFn& F, const HomologyLoop& loop,
                        const QuadratureSpec& quad, int* samplesUsed) {
  int n = quad.samplesPerLoop < 16 ? 16 : quad.samplesPerLoop;
  Complex prev = contourIntegralFixed(F, loop, n);
  for (int r = 0; r < quad.maxRefinements; ++r) {
    n *= 2;
    Complex cur = contourIntegralFixed(F, loop, n);
    if (std::abs(cur - prev) < quad.pathTolerance) {
      if (samplesUsed) *samplesUsed = n;
      return cur;
    }
    prev = cur;
  }
  std::ostringstream os;
  os << "contour integral did not converge to " << quad.pathTolerance << " within "
     << quad.maxRefinements << " refinements (last n=" << n << ")";
  throw NonConvergent(os.str());
}

Complex contourIntegral(const ComplexFn& F, const HomologyLoop& loop,
                        const QuadratureSpec& quad) {
  return contourIntegral(F, loop, quad, nullptr);
}

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 6> kGlNodes12 = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> kGlWeights12 = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

}  // namespace

Complex segmentIntegral(const ComplexFn& F, Complex a, Complex b, int order) {
  (void)order;  // only the 12-point rule is implemented
  Complex mid = 0.5 * (a + b);
  Complex half = 0.5 * (b - a);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < kGlNodes12.size(); ++i) {
    double x = kGlNodes12[i];
    sum += kGlWeights12[i] * (F(mid + half * x) + F(mid - half * x));
  }
  return sum * half;
}

Complex pathIntegral(const ComplexFn& F, const PathInDomain& path,
                     const QuadratureSpec& quad, const CircularDomain* domain) {
  (void)quad;
  if (path.points.size() < 2) return 0.0;
  if (domain) {
    auto checkSegment = [&](Complex a, Complex b) {
      for (int k = 0; k <= 64; ++k) {
        Complex p = a + (b - a) * (k / 64.0);
        if (!domain->containsClosed(p, 1e-12)) {
          std::ostringstream os;
          os << "path sample (" << p.real() << "," << p.imag() << ") leaves the domain";
          throw PathLeavesDomain(os.str());
        }
      }
    };
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
      checkSegment(path.points[i], path.points[i + 1]);
    }
    if (path.closed) checkSegment(path.points.back(), path.points.front());
  }
  Complex sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
    sum += segmentIntegral(F, path.points[i], path.points[i + 1]);
  }
  if (path.closed && path.points.front() != path.points.back()) {
    sum += segmentIntegral(F, path.points.back(), path.points.front());
  }
  return sum;
}

}  // namespace cmi
