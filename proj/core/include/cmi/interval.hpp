#pragma once

#include <Eigen/Dense>
#include <array>

#include "cmi/quadrature.hpp"

namespace cmi {

/// Path [0,1] -> C^n given by a callable; checked to be nowhere flat (full
/// numerical rank on every subinterval of length >= 0.1).
struct SampledPath {
  int n = 2;
  std::function<Eigen::VectorXcd(double)> f;
};

/// Nonvanishing profile h: [0,1] -> C_* returned by the interval
/// constructions, as a callable plus a dense sample grid.
struct IntervalFunction {
  std::vector<double> s;
  std::vector<Complex> values;
  std::function<Complex(double)> eval;
  double residualNorm = 0.0;

  Complex operator()(double x) const { return eval(x); }
};

/// Throws NotNowhereFlat unless sampled f-values have rank n on every
/// subinterval of length >= 0.1.
void checkNowhereFlat(const SampledPath& fPath);

/// Finds h: [0,1] -> C_* with  int_0^1 h(s) f(s) ds = alpha  to tol,
/// h(0) = h(1) = 1 and min |h| > 0. Construction: segment integrals V_j over
/// an N = 2n subdivision, plateau values g_j solving sum g_j V_j = alpha at
/// minimal distance to (1,...,1) (zeros perturbed off 0), smooth ramps
/// between plateaus, then a bump-spray correction solved by least squares.
/// Throws NotNowhereFlat / SpanSelectionFailed / CorrectionFailed.
IntervalFunction intervalMultiplier(const SampledPath& fPath, const Eigen::VectorXcd& alpha,
                                    const QuadratureSpec& quad = {}, double tol = 1e-8);

/// Finds h: [0,1] -> C_* with  int_0^1 a(s) (h f, h^2 f^2) ds = (x1, x2)
/// to tol, h(0) = h(1) = 1 and min |h| > 0. Construction: two plateau points
/// where {(f(s_i), 2 f(s_i)^2)} spans C^2, plateau/valley profile with small
/// valley value, closed-form plateau heights, then a bump Gauss-Newton
/// polish. Throws SpanSelectionFailed / CorrectionFailed.
IntervalFunction intervalGG2(const std::function<Complex(double)>& f,
                             const std::function<Complex(double)>& a,
                             const std::array<Complex, 2>& x,
                             const QuadratureSpec& quad = {}, double tol = 1e-6);

}  // namespace cmi
