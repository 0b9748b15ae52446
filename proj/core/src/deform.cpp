#include "cmi/deform.hpp"

#include <cmath>
#include <sstream>

namespace cmi {

namespace {

void checkExact(const char* name, const ComplexFn& form,
                const std::vector<HomologyLoop>& loops, const QuadratureSpec& quad,
                double tol = 1e-8) {
  for (std::size_t j = 0; j < loops.size(); ++j) {
    Complex p = contourIntegral(form, loops[j], quad);
    if (std::abs(p) > tol) {
      std::ostringstream os;
      os << name << " is not exact: period on loop " << j << " is (" << p.real() << ","
         << p.imag() << ")";
      throw ExactnessFailed(os.str());
    }
  }
}

void checkNoPoles(const char* name, const RationalMap& r, const CircularDomain& domain) {
  for (const auto& [p, mult] : r.poles()) {
    if (domain.containsClosed(p, 1e-9)) {
      std::ostringstream os;
      os << name << " has a pole of order " << mult << " at (" << p.real() << ","
         << p.imag() << ")";
      throw ZeroPoleMismatch(os.str());
    }
  }
}

}  // namespace

ExpMultiplier associatedFamily(const NullData& f, const ExpMultiplier& h, double s,
                               const QuadratureSpec& quad) {
  PeriodVector P = periodMap(f, h.fn(), f.domain.loops(), quad);
  double norm = P.norm();
  if (norm > 1e-8) {
    std::ostringstream os;
    os << "null-curve condition fails: complex period norm " << norm;
    throw ComplexPeriodsNonzero(os.str());
  }
  ExpMultiplier rotated = h;
  rotated.u.setCoefficient(0, rotated.u.coefficient(0) + Complex(0.0, s));
  return rotated;
}

NullData flatDeformationAvoiding(const WeierstrassPair& pair, const CircularDomain& domain,
                                 double lambda, const QuadratureSpec& quad) {
  if (pair.g.isZero()) throw ZeroPoleMismatch("Gauss map is identically zero");
  RationalMap invg = RationalMap::constant(1.0) / pair.g;
  RationalMap gp = pair.g * pair.phi3;
  RationalMap igp = invg * pair.phi3;
  checkNoPoles("phi3", pair.phi3, domain);
  checkNoPoles("g*phi3", gp, domain);
  checkNoPoles("phi3/g", igp, domain);
  std::vector<HomologyLoop> loops = domain.loops();
  auto asFn = [](const RationalMap& r) {
    return ComplexFn([r](Complex z) { return r(z); });
  };
  checkExact("phi3", asFn(pair.phi3), loops, quad);
  checkExact("g*phi3", asFn(gp), loops, quad);
  checkExact("phi3/g", asFn(igp), loops, quad);

  Complex l2(lambda * lambda, 0.0);
  std::vector<DataFun> comps = {
      DataFun((igp - gp * l2) * Complex(0.5)),
      DataFun((igp + gp * l2) * Complex(0.0, 0.5)),
      DataFun(pair.phi3 * Complex(lambda))};
  return NullData{3, std::move(comps), domain};
}

NullData nonflatDeformation(const ExpMultiplier& g, const RationalMap& phi3,
                            const CircularDomain& domain, double lambda,
                            const QuadratureSpec& quad) {
  checkNoPoles("phi3", phi3, domain);
  std::vector<HomologyLoop> loops = domain.loops();
  const LaurentExpansion& u = g.u;
  checkExact("phi3", ComplexFn([phi3](Complex z) { return phi3(z); }), loops, quad);
  checkExact("g*phi3", [&u, &phi3](Complex z) { return std::exp(u(z)) * phi3(z); }, loops,
             quad);
  checkExact("g^2*phi3", [&u, &phi3](Complex z) { return std::exp(2.0 * u(z)) * phi3(z); },
             loops, quad);

  RationalMap zero;
  Complex l2(lambda * lambda, 0.0);
  std::vector<DataFun> comps = {
      DataFun({phi3, zero, phi3 * (-l2)}, u),
      DataFun({phi3 * Complex(0.0, 1.0), zero, phi3 * Complex(0.0, 1.0) * l2}, u),
      DataFun({zero, phi3 * Complex(2.0 * lambda)}, u)};
  return NullData{3, std::move(comps), domain};
}

}  // namespace cmi
