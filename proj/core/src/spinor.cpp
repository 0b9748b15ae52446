#include "cmi/spinor.hpp"

#include <cmath>
#include <sstream>

#include "cmi/solver.hpp"

namespace cmi {

namespace {

// One branch pair (a, b) with a^2 = A2, b^2 = B2, 2ab = F3, picking whichever
// square root is better conditioned and recovering the partner from F3.
std::pair<Complex, Complex> branchPair(Complex A2, Complex B2, Complex F3) {
  if (std::abs(A2) >= std::abs(B2)) {
    Complex a = std::sqrt(A2);
    Complex b = std::abs(a) > 1e-150 ? F3 / (2.0 * a) : std::sqrt(B2);
    return {a, b};
  }
  Complex b = std::sqrt(B2);
  Complex a = std::abs(b) > 1e-150 ? F3 / (2.0 * b) : std::sqrt(A2);
  return {a, b};
}

}  // namespace

SpinorLift buildSpinorLift(const NullData& f, const HomologyLoop& loop, int samples) {
  SpinorLift lift;
  lift.a.reserve(samples + 1);
  lift.b.reserve(samples + 1);
  lift.t.reserve(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    double t = static_cast<double>(k) / samples;
    Complex z = loop.point(t);
    Complex f1 = f.components[0](z);
    Complex f2 = f.components[1](z);
    Complex f3 = f.components[2](z);
    Complex A2 = 0.5 * (f1 - Complex(0.0, 1.0) * f2);
    Complex B2 = -0.5 * (f1 + Complex(0.0, 1.0) * f2);
    auto [a, b] = branchPair(A2, B2, f3);
    if (k > 0) {
      // Continue the sign choice: the pair is determined up to a global sign.
      double keep = std::abs(a - lift.a.back()) + std::abs(b - lift.b.back());
      double flip = std::abs(a + lift.a.back()) + std::abs(b + lift.b.back());
      if (flip < keep) {
        a = -a;
        b = -b;
      }
    }
    lift.a.push_back(a);
    lift.b.push_back(b);
    lift.t.push_back(t);
  }
  return lift;
}

int z2Invariant(const NullData& f, const HomologyLoop& loop, const QuadratureSpec& quad) {
  if (f.n != 3) throw Error("the Z2 invariant is defined for n = 3 data");
  int samples = std::max(64, quad.samplesPerLoop);
  for (int attempt = 0; attempt <= quad.maxRefinements; ++attempt, samples *= 2) {
    SpinorLift lift = buildSpinorLift(f, loop, samples);
    bool resolved = true;
    for (std::size_t k = 1; k < lift.a.size(); ++k) {
      double jump = std::abs(lift.a[k] - lift.a[k - 1]) + std::abs(lift.b[k] - lift.b[k - 1]);
      double scale = 0.5 * (std::abs(lift.a[k]) + std::abs(lift.b[k]) +
                            std::abs(lift.a[k - 1]) + std::abs(lift.b[k - 1]));
      if (jump > 0.2 * scale) {
        resolved = false;
        break;
      }
    }
    if (!resolved) continue;
    Complex a0 = lift.a.front(), b0 = lift.b.front();
    Complex a1 = lift.a.back(), b1 = lift.b.back();
    double dPlus = std::abs(a1 - a0) + std::abs(b1 - b0);
    double dMinus = std::abs(a1 + a0) + std::abs(b1 + b0);
    if (std::min(dPlus, dMinus) > 0.5 * std::max(dPlus, dMinus)) continue;  // refine
    return dPlus <= dMinus ? 0 : 1;
  }
  throw LiftAmbiguous("spinor lift not resolved at the refinement cap");
}

std::vector<int> componentClass(const NullData& f, const QuadratureSpec& quad) {
  std::vector<int> bits;
  for (const HomologyLoop& loop : f.domain.loops()) {
    bits.push_back(z2Invariant(f, loop, quad));
  }
  return bits;
}

FlatRepresentative flatClassRepresentativeDetailed(const CircularDomain& domain,
                                                   const std::vector<int>& targetClass,
                                                   const QuadratureSpec& quad) {
  if (targetClass.size() != domain.homologyRank()) {
    throw ConfigError("target class length must equal the homology rank");
  }
  std::vector<Complex> roots;
  for (std::size_t j = 0; j < targetClass.size(); ++j) {
    if (targetClass[j] != 0 && targetClass[j] != 1) {
      throw ConfigError("target class entries must be 0 or 1");
    }
    if (targetClass[j] == 1) roots.push_back(domain.holes()[j].center);
  }
  RationalMap g0(Poly::fromRoots(roots), Poly::constant(1.0));

  // Flat data along (1, i, 0); kill its complex periods with an exp multiplier.
  NullData flat{3,
                {DataFun(g0), DataFun(g0 * Complex(0.0, 1.0)), DataFun(RationalMap())},
                domain};
  PeriodTarget target;
  target.q = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(domain.homologyRank()), 3);
  SolveOptions opt;
  opt.quad = quad;
  SolveReport report;
  try {
    report = solveMultiplier(flat, target, opt);
  } catch (const Error& e) {
    throw SolverFailed(std::string("flat representative period solve failed: ") + e.what());
  }

  FlatRepresentative out;
  out.windingFactor = g0;
  out.h = report.multiplier;
  const LaurentExpansion& u = report.multiplier.u;
  RationalMap zero;
  out.data = NullData{
      3,
      {DataFun({zero, g0}, u), DataFun({zero, g0 * Complex(0.0, 1.0)}, u), DataFun(zero)},
      domain};
  return out;
}

NullData flatClassRepresentative(const CircularDomain& domain,
                                 const std::vector<int>& targetClass,
                                 const QuadratureSpec& quad) {
  return flatClassRepresentativeDetailed(domain, targetClass, quad).data;
}

}  // namespace cmi
