#pragma once

#include "cmi/nulldata.hpp"

namespace cmi {

/// Two-sheeted lift (a, b) of null data along a loop, with a^2 - b^2 = f1,
/// i(a^2 + b^2) = f2, 2ab = f3.
struct SpinorLift {
  std::vector<Complex> a, b;
  std::vector<double> t;  // loop parameters of the samples
};

/// Tracks the spinor lift once around the loop; used by z2Invariant.
SpinorLift buildSpinorLift(const NullData& f, const HomologyLoop& loop, int samples);

/// Z2 homotopy class of f restricted to the loop: 0 if the spinor lift
/// closes, 1 if it returns to its negative. Doubles the sampling until all
/// consecutive jumps are below 0.2 in relative norm; throws LiftAmbiguous at
/// the cap.
int z2Invariant(const NullData& f, const HomologyLoop& loop, const QuadratureSpec& quad = {});

/// z2Invariant per homology loop, in hole order.
std::vector<int> componentClass(const NullData& f, const QuadratureSpec& quad = {});

/// Flat null data (1, i, 0) * g * h whose component class equals targetClass,
/// with real periods killed by a solver-found exp multiplier h.
/// Throws SolverFailed.
NullData flatClassRepresentative(const CircularDomain& domain,
                                 const std::vector<int>& targetClass,
                                 const QuadratureSpec& quad = {});

/// The multiplier found for the representative, when needed alongside the
/// rational part.
struct FlatRepresentative {
  NullData data;          // rational part times multiplier folded in
  RationalMap windingFactor;
  ExpMultiplier h;
};

FlatRepresentative flatClassRepresentativeDetailed(const CircularDomain& domain,
                                                   const std::vector<int>& targetClass,
                                                   const QuadratureSpec& quad = {});

}  // namespace cmi
