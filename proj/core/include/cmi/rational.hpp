#pragma once

#include "cmi/polynomial.hpp"

namespace cmi {

/// Quotient of complex polynomials, kept in normal form: no common roots
/// (within a relative tolerance) and monic denominator.
class RationalMap {
 public:
  RationalMap() : num_(Poly::constant(0.0)), den_(Poly::constant(1.0)) {}
  RationalMap(Poly num, Poly den);
  static RationalMap constant(Complex c) { return RationalMap(Poly::constant(c), Poly::constant(1.0)); }
  static RationalMap identity() { return RationalMap(Poly::identity(), Poly::constant(1.0)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isConstant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

  /// Horner evaluation; throws NearPole close to a denominator root.
  Complex operator()(Complex z) const;

  RationalMap derivative() const;

  RationalMap operator+(const RationalMap& o) const;
  RationalMap operator-(const RationalMap& o) const;
  RationalMap operator*(const RationalMap& o) const;
  RationalMap operator/(const RationalMap& o) const;
  RationalMap operator*(Complex s) const;

  /// Poles with multiplicity (clustered denominator roots).
  std::vector<std::pair<Complex, int>> poles() const;
  /// Zeros with multiplicity (clustered numerator roots).
  std::vector<std::pair<Complex, int>> zeros() const;

  /// Coefficientwise comparison of normal forms.
  bool approxEqual(const RationalMap& o, double tol = 1e-9) const;

 private:
  void normalize();
  Poly num_, den_;
};

/// Spec-facing free functions.
inline Complex evalRational(const RationalMap& r, Complex z) { return r(z); }
inline RationalMap derivative(const RationalMap& r) { return r.derivative(); }

/// Clusters a root list into (representative, multiplicity) pairs.
std::vector<std::pair<Complex, int>> clusterRoots(const std::vector<Complex>& roots,
                                                  double tol = 1e-7);

}  // namespace cmi
