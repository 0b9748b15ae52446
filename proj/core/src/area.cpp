#include "cmi/area.hpp"

#include <cmath>

namespace cmi {

namespace {

// 4 |g'|^2 / (1 + |g|^2)^2 written over the (num, den) pair: with g = P/Q,
// this is 4 |P'Q - PQ'|^2 / (|P|^2 + |Q|^2)^2, smooth across poles of g.
struct SphericalDensity {
  Poly P, Q, Pd, Qd;
  double* peak = nullptr;

  explicit SphericalDensity(const RationalMap& g, double* peakOut = nullptr)
      : P(g.num()), Q(g.den()), Pd(g.num().derivative()), Qd(g.den().derivative()),
        peak(peakOut) {}

  double operator()(Complex z) const {
    Complex p = P(z), q = Q(z);
    Complex w = Pd(z) * q - p * Qd(z);
    double denom = std::norm(p) + std::norm(q);
    double v = 4.0 * std::norm(w) / (denom * denom);
    if (peak && v > *peak) *peak = v;
    return v;
  }
};

// Midpoint tensor quadrature of the density over a disk (center, radius).
double diskIntegral(const SphericalDensity& rho, Complex center, double radius,
                    int rings) {
  int angles = 4 * rings;
  double dr = radius / rings;
  double dth = 2.0 * kPi / angles;
  double sum = 0.0;
  for (int i = 0; i < rings; ++i) {
    double r = (i + 0.5) * dr;
    double ringSum = 0.0;
    for (int j = 0; j < angles; ++j) {
      double th = (j + 0.5) * dth;
      ringSum += rho(center + std::polar(r, th));
    }
    sum += ringSum * r;
  }
  return sum * dr * dth;
}

}  // namespace

double sphericalArea(const RationalMap& g, const CircularDomain& domain, int resolution) {
  if (g.isConstant()) return 0.0;
  SphericalDensity rho(g);
  int rings = std::max(8, resolution);
  auto total = [&](int k) {
    double area = diskIntegral(rho, Complex(0.0), 1.0, k);
    for (const Hole& h : domain.holes()) {
      int holeRings = std::max(8, static_cast<int>(std::ceil(k * h.radius)));
      area -= diskIntegral(rho, h.center, h.radius, holeRings);
    }
    return area;
  };
  double prev = total(rings);
  for (int refine = 0; refine < 8; ++refine) {
    rings *= 2;
    double cur = total(rings);
    if (std::abs(cur - prev) < 1e-6 * std::max(1.0, std::abs(cur)) / 2.0) {
      // Richardson extrapolation: the radial midpoint error is clean O(h^2).
      return cur + (cur - prev) / 3.0;
    }
    prev = cur;
  }
  throw NonConvergent("spherical area did not converge under grid doubling");
}

StabilityReport stabilityCheck(const RationalMap& g, const CircularDomain& domain,
                               int resolution) {
  StabilityReport report;
  report.sphericalArea = sphericalArea(g, domain, resolution);
  // Strict inequality with a margin wider than the quadrature tolerance, so
  // the boundary case (area == 2*pi up to roundoff) is never reported stable.
  report.stableByAreaCriterion = report.sphericalArea < 2.0 * kPi - 1e-6;
  report.verdict = report.stableByAreaCriterion ? "stable" : "not concluded";
  double peak = 0.0;
  SphericalDensity rho(g, &peak);
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 64; ++j) {
      Complex z = std::polar((i + 0.5) / 32.0, 2.0 * kPi * (j + 0.5) / 64.0);
      if (domain.contains(z)) rho(z);
    }
  }
  report.maxDensity = peak;
  return report;
}

}  // namespace cmi
