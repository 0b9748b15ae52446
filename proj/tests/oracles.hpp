// Independent oracles for the test suite. Everything here is computed by a
// different method than the library code under test: residues symbolically
// from the rational normal form, interval integrals by composite Simpson.
#pragma once

#include <random>

#include "cmi/interval.hpp"
#include "cmi/nulldata.hpp"
#include "cmi/rational.hpp"

namespace cmitest {

using cmi::Complex;
using cmi::RationalMap;

/// Loop integral of a rational map by the residue theorem: 2*pi*i times the
/// sum over poles strictly inside the loop of
///   Res_c r = (1/(m-1)!) d^{m-1}/dz^{m-1} [ (z-c)^m r(z) ]  at z = c.
/// The derivative is taken symbolically on the rational normal form, so this
/// shares no code path with the trapezoid quadrature.
inline Complex residueIntegralOracle(const RationalMap& r, const cmi::HomologyLoop& loop) {
  Complex sum = 0.0;
  for (const auto& [c, m] : r.poles()) {
    if (std::abs(c - loop.center) >= loop.radius) continue;
    // (z - c)^m * r, cancelled exactly by normal-form clustering.
    cmi::Poly shift = cmi::Poly::fromRoots(std::vector<Complex>(m, c));
    RationalMap g = r * RationalMap(shift, cmi::Poly::constant(1.0));
    double fact = 1.0;
    for (int k = 1; k < m; ++k) {
      g = g.derivative();
      fact *= k;
    }
    sum += g(c) / fact;
  }
  return Complex(0.0, 2.0 * cmi::kPi) * sum * static_cast<double>(loop.orientation);
}

/// Composite Simpson integral of a complex function over [0, 1].
inline Complex simpson01(const std::function<Complex(double)>& f, int panels) {
  Complex acc = 0.0;
  double h = 1.0 / panels;
  for (int k = 0; k < panels; ++k) {
    double a = k * h;
    acc += (h / 6.0) * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
  }
  return acc;
}

/// Random full Weierstrass data whose lift is pole-free on the closed domain:
/// g a degree-1 rational map with zero and pole outside the closed unit disk,
/// phi3 a nonvanishing linear polynomial with its root outside as well.
inline cmi::WeierstrassPair randomFullWeierstrass(std::mt19937& rng) {
  std::uniform_real_distribution<double> mag(1.4, 2.6), ang(0.0, 2.0 * cmi::kPi),
      coef(0.4, 1.8);
  auto outside = [&] { return std::polar(mag(rng), ang(rng)); };
  Complex zero = outside(), pole = outside();
  while (std::abs(zero - pole) < 0.3) pole = outside();
  Complex beta = std::polar(coef(rng), ang(rng));
  RationalMap g(cmi::Poly({-zero * beta, beta}), cmi::Poly({-pole, 1.0}));
  Complex root = outside();
  RationalMap phi3(cmi::Poly({-root, 1.0}) * std::polar(coef(rng), ang(rng)),
                   cmi::Poly::constant(1.0));
  return {g, phi3};
}

}  // namespace cmitest
