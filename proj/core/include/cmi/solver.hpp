#pragma once

#include "cmi/periods.hpp"

namespace cmi {

struct SolveOptions {
  double tol = 1e-9;
  int maxIterations = 200;
  int maxHalvings = 20;
  int degree = 8;     // initial expansion degree
  int degreeCap = 32; // raised on stagnation, up to this cap
  QuadratureSpec quad{};
  const LaurentExpansion* initialGuess = nullptr;  // optional warm start
  // Freeze the constant coefficient of the exponent at its initial value.
  // Needed when the target is (or tends to) zero: otherwise a constant
  // exponent with large negative real part shrinks the residual below any
  // tolerance without solving anything. Auto-enabled for identically zero
  // targets.
  bool pinConstant = false;
};

struct SolveReport {
  ExpMultiplier multiplier;
  double residualNorm = 0.0;
  int iterations = 0;
  double sigmaMin = 0.0;  // smallest singular value of the final Jacobian
  double t = 1.0;         // parameter along a continuation path
  int continuationSteps = 0;
};

/// Finds a nowhere-vanishing multiplier h = exp(u) with period vector of h*f
/// matching the target (all of it, or its real part only, per target.mode)
/// to opt.tol, by damped Gauss-Newton on the expansion coefficients with
/// minimal-norm pseudoinverse steps. The expansion degree is raised on
/// stagnation up to opt.degreeCap.
/// Throws TargetOutsideSpan / RankDeficient / MaxIterations.
SolveReport solveMultiplier(const NullData& f, const PeriodTarget& target,
                            const SolveOptions& opt = {});

/// Continuation along targetPath(t), t in [0, 1], warm-starting each solve
/// from the previous multiplier. Steps are halved adaptively on failure;
/// throws ContinuationStalled below the minimum step. Returns one report per
/// accepted step (t strictly increasing, ending at t = 1).
std::vector<SolveReport> solveMultiplierFamily(
    const NullData& f, const std::function<PeriodTarget(double)>& targetPath, int steps,
    const SolveOptions& opt = {});

/// Finds a multiplier h = exp(u) with ALL complex periods of h*f zero (the
/// null-curve condition). The zero target pins the constant coefficient of u
/// (see SolveOptions::pinConstant); u = 0 is a critical point of the pinned
/// period map, so the solve starts from small random exponents. Runs
/// `attempts` seeded starts and returns the converged solution whose
/// modulus has the smallest dynamic range over the domain (wild exponents
/// make the downstream geometry numerically hostile). Throws SolverFailed if
/// no start converges.
ExpMultiplier solveNullCurveMultiplier(const NullData& f, const SolveOptions& opt = {},
                                       unsigned seed = 0, int attempts = 8);

struct GG2Result {
  ExpMultiplier g;
  double residualNorm = 0.0;
  int iterations = 0;
};

/// Solves the coupled pair of period families
///   \oint_{C_j} e^u dz = q1_j,   \oint_{C_j} e^{2u} dz = q2_j
/// with u nonconstant (enforced by a seeded start; the nonconstant part of u
/// must come out with norm >= 0.1). Throws SolverFailed.
GG2Result solveGG2(const CircularDomain& domain,
                   const std::vector<std::pair<Complex, Complex>>& targets,
                   const SolveOptions& opt = {});

}  // namespace cmi
