#include "cmi/periods.hpp"

namespace cmi {

PeriodVector periodMap(const NullData& f, const ComplexFn& h,
                       const std::vector<HomologyLoop>& basis, const QuadratureSpec& quad) {
  PeriodVector out;
  out.P.resize(static_cast<Eigen::Index>(basis.size()), f.n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (int c = 0; c < f.n; ++c) {
      const DataFun& comp = f.components[c];
      ComplexFn integrand;
      if (h) {
        integrand = [&comp, &h](Complex z) { return h(z) * comp(z); };
      } else {
        integrand = [&comp](Complex z) { return comp(z); };
      }
      out.P(static_cast<Eigen::Index>(j), c) = contourIntegral(integrand, basis[j], quad);
    }
  }
  return out;
}

PeriodVector periodMap(const NullData& f, const std::vector<HomologyLoop>& basis,
                       const QuadratureSpec& quad) {
  return periodMap(f, ComplexFn(), basis, quad);
}

FluxHomomorphism flux(const PeriodVector& P, double realTol) {
  FluxHomomorphism out;
  out.p = P.P.imag();
  out.realPeriodsVanish = P.realNorm() <= realTol * (1.0 + P.norm());
  return out;
}

}  // namespace cmi
