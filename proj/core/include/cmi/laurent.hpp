#pragma once

#include "cmi/quadrature.hpp"
#include "cmi/rational.hpp"

namespace cmi {

/// Truncated Laurent-type expansion on a circular domain:
///
///   u(z) = sum_k a_k z^k  +  sum_j sum_m b_{j,m} (s_j/(z - c_j))^m
///
/// with k = 0..d, m = 1..d, one singular block per hole center c_j. The
/// per-center scale s_j keeps basis terms O(1) on the homology loops.
class LaurentExpansion {
 public:
  LaurentExpansion() = default;
  LaurentExpansion(std::vector<Complex> centers, std::vector<double> scales, int degree);

  /// Expansion adapted to a domain: one singular block per hole, scales set
  /// to the homology loop radii.
  static LaurentExpansion forDomain(const CircularDomain& domain, int degree);

  int degree() const { return degree_; }
  std::size_t centerCount() const { return centers_.size(); }
  std::size_t size() const { return coeffs_.size(); }  // total coefficient count
  bool empty() const { return coeffs_.empty(); }

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  void setCoefficients(std::vector<Complex> c);
  Complex coefficient(std::size_t i) const { return coeffs_[i]; }
  void setCoefficient(std::size_t i, Complex v) { coeffs_[i] = v; }

  Complex operator()(Complex z) const;
  /// Value of the i-th basis function at z (u is linear in its coefficients).
  Complex basis(std::size_t i, Complex z) const;

  double norm() const;  // l2 norm of the coefficient vector

  /// Same centers/scales, higher degree; existing coefficients are kept.
  LaurentExpansion raised(int newDegree) const;

 private:
  std::vector<Complex> centers_;
  std::vector<double> scales_;
  int degree_ = 0;
  std::vector<Complex> coeffs_;  // [outer 0..d][center0 m=1..d][center1 ...]
};

/// Nowhere-vanishing multiplier h = exp(u). Nonvanishing and zero winding
/// around every homology loop are structural.
struct ExpMultiplier {
  LaurentExpansion u;

  Complex operator()(Complex z) const { return std::exp(u(z)); }
  ComplexFn fn() const {
    LaurentExpansion v = u;
    return [v](Complex z) { return std::exp(v(z)); };
  }
};

/// Product spray Xi(zeta, z) = prod_i (1 + zeta_i g_i(z)); Xi(0,.) == 1.
struct SprayMultiplier {
  std::vector<RationalMap> basis;
  std::vector<Complex> zeta;  // same length as basis

  Complex operator()(Complex z) const;
  ComplexFn fn() const {
    SprayMultiplier copy = *this;
    return [copy](Complex z) { return copy(z); };
  }
};

inline Complex evalMultiplier(const ExpMultiplier& h, Complex z) { return h(z); }
Complex evalMultiplier(const SprayMultiplier& h, Complex z);

}  // namespace cmi
