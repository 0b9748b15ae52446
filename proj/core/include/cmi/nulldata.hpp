#pragma once

#include <optional>

#include "cmi/grid.hpp"
#include "cmi/laurent.hpp"

namespace cmi {

/// Holomorphic function of the form  sum_k c_k(z) * G(z)^k  with rational
/// coefficients c_k and generator G = exp(u). Pure rational data is the
/// k=0 case. Closed under ring operations; division is exact long division
/// in G over the rational function field.
class DataFun {
 public:
  DataFun() : coeffs_{RationalMap()} {}
  DataFun(RationalMap r) : coeffs_{std::move(r)} {}  // NOLINT(google-explicit-constructor)
  DataFun(std::vector<RationalMap> coeffs, LaurentExpansion gen);

  bool isRational() const { return coeffs_.size() <= 1; }
  const RationalMap& rational() const;
  const std::vector<RationalMap>& coeffs() const { return coeffs_; }
  const std::optional<LaurentExpansion>& generator() const { return gen_; }
  bool isZero() const;

  Complex operator()(Complex z) const;
  ComplexFn fn() const {
    DataFun copy = *this;
    return [copy](Complex z) { return copy(z); };
  }

  DataFun operator+(const DataFun& o) const;
  DataFun operator-(const DataFun& o) const;
  DataFun operator*(const DataFun& o) const;
  DataFun operator*(Complex s) const;
  /// Exact division; throws if the quotient is not of DataFun form.
  DataFun operator/(const DataFun& o) const;

  /// Largest numerator coefficient over all rational coefficients.
  double maxScale() const;
  /// True when every coefficient is numerically the zero rational map.
  bool approxZero(double tol, double scale) const;

 private:
  void trim();
  std::vector<RationalMap> coeffs_;          // coefficient of G^k, k = 0..
  std::optional<LaurentExpansion> gen_;      // absent for pure rational data
};

/// Map into the punctured null quadric: n components summing squarewise to
/// zero, pole-free and without common zeros on the closed domain.
struct NullData {
  int n = 3;
  std::vector<DataFun> components;
  CircularDomain domain;
};

/// Weierstrass input data: complex Gauss map g and third 1-form coefficient.
struct WeierstrassPair {
  RationalMap g;
  RationalMap phi3;
};

struct ValidationReport {
  int rank = 0;
  bool full = false;
  double nullityResidual = 0.0;
  double minModulusOnGrid = 0.0;
};

/// f = (1/2 (1/g - g), i/2 (1/g + g), 1) * phi3, checked for pole/zero
/// compensation on the closed domain. Throws ZeroPoleMismatch.
NullData liftWeierstrass(const WeierstrassPair& pair, const CircularDomain& domain);

/// Confirms the NullData invariants (nullity as a cleared-denominator
/// polynomial identity, no poles in the closed domain, no common zeros) and
/// reports the numerical rank of the sampled image. Throws NullityViolated /
/// PoleInDomain / CommonZero.
ValidationReport validateNull(const NullData& f);

/// Generalized Gauss map representative; for n=3 also the complex Gauss map
/// g = f3 / (f1 - i f2).
struct GaussMapResult {
  std::vector<DataFun> components;  // projective representative
  std::optional<DataFun> complexGauss;
};

GaussMapResult gaussMapFromNull(const NullData& f);

/// True when a and b agree as projective maps (all cross products vanish).
bool projectivelyEqual(const std::vector<DataFun>& a, const std::vector<DataFun>& b,
                       double tol = 1e-9);

}  // namespace cmi
