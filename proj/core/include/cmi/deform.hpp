#pragma once

#include "cmi/laurent.hpp"
#include "cmi/periods.hpp"

namespace cmi {

enum class FamilyKind { Associated, FlatLimit, Nonflatization, FluxIsotopy };

/// Discrete deformation family: one null-data sample per parameter value.
struct DeformationFamily {
  FamilyKind kind = FamilyKind::Associated;
  std::vector<double> params;
  std::vector<NullData> samples;
};

/// Rotates the multiplier of a null curve: h -> e^{is} h. All complex periods
/// of h f must vanish (else the rotated real periods fail); throws
/// ComplexPeriodsNonzero.
ExpMultiplier associatedFamily(const NullData& f, const ExpMultiplier& h, double s,
                               const QuadratureSpec& quad = {});

/// One sample of the deformation to a flat limit that keeps the third
/// coordinate:  Phi_lambda = (1/2 (1/g - lambda^2 g), i/2 (1/g + lambda^2 g),
/// lambda) phi3.  Requires phi3, g phi3 and phi3/g all exact (all periods
/// zero); throws ExactnessFailed naming the failing form.
NullData flatDeformationAvoiding(const WeierstrassPair& pair, const CircularDomain& domain,
                                 double lambda, const QuadratureSpec& quad = {});

/// One sample of the deformation away from flatness:
/// Phi_lambda = ((1 - lambda^2 g^2), i (1 + lambda^2 g^2), 2 lambda g) phi3
/// with nonvanishing g = exp(u). Requires phi3, g phi3 and g^2 phi3 exact;
/// throws ExactnessFailed.
NullData nonflatDeformation(const ExpMultiplier& g, const RationalMap& phi3,
                            const CircularDomain& domain, double lambda,
                            const QuadratureSpec& quad = {});

}  // namespace cmi
