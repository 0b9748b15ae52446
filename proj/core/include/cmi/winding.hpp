#pragma once

#include "cmi/grid.hpp"
#include "cmi/quadrature.hpp"

namespace cmi {

/// Winding number of F along the loop by continuous argument tracking
/// (the argument-principle count (1/2pi i) \oint F'/F dz for F analytic and
/// nonvanishing on the loop circle). Refines the sampling until every phase
/// step is resolved. Throws ZeroOnContour / AmbiguousWinding.
int windingNumber(const ComplexFn& F, const HomologyLoop& loop,
                  const QuadratureSpec& quad = {});

/// True iff F has argument-principle zero count 0 in the domain (winding
/// along the outer boundary minus the sum over hole boundaries) and
/// min |F| over the grid exceeds 1e-10.
bool assertNonvanishing(const ComplexFn& F, const CircularDomain& domain,
                        const DomainGrid& grid, const QuadratureSpec& quad = {});

/// Argument-principle zero count of F in the domain.
int zeroCount(const ComplexFn& F, const CircularDomain& domain,
              const QuadratureSpec& quad = {});

}  // namespace cmi
