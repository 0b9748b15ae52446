#pragma once

#include <complex>
#include <vector>

#include "cmi/domain.hpp"

namespace cmi {

/// Dense complex polynomial, coefficients in ascending order of degree.
/// The zero polynomial is represented by an empty (or all-zero) vector.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<Complex> c) : coeffs_(c) { trim(); }
  explicit Poly(std::vector<Complex> c) : coeffs_(std::move(c)) { trim(); }
  static Poly constant(Complex c) { return Poly({c}); }
  static Poly identity() { return Poly({0.0, 1.0}); }  // z
  static Poly fromRoots(const std::vector<Complex>& roots, Complex leading = 1.0);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool isZero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }
  double maxAbsCoeff() const;

  Complex operator()(Complex z) const;  // Horner
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex s) const;

  /// Long division: *this = q * d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  /// Synthetic division by (z - root); the remainder is discarded.
  Poly deflate(Complex root) const;

  /// All roots via the companion matrix (empty for constants).
  std::vector<Complex> roots() const;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

}  // namespace cmi
