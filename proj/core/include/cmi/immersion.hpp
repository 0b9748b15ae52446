#pragma once

#include <Eigen/Dense>

#include "cmi/periods.hpp"

namespace cmi {

/// Conformal immersion sampled on a grid: X = 2 Re \int h f dz from a
/// basepoint.
struct ImmersionField {
  DomainGrid grid;
  int n = 3;
  std::vector<Eigen::VectorXd> X;  // one R^n value per grid point
  int basepointIndex = 0;
  Eigen::VectorXd baseValue;
  double closureResidual = 0.0;  // real-period norm over the homology basis
};

/// Integrates 2 Re(h f dz) over a spanning tree of grid edges rooted at the
/// grid point nearest to basepoint. Real periods must vanish (checked first);
/// throws RealPeriodsNonzero naming the offending loop.
ImmersionField integrateImmersion(const NullData& f, const ComplexFn& h,
                                  const DomainGrid& grid, Complex basepoint,
                                  const QuadratureSpec& quad = {});

/// First derivatives X_x, X_y at every grid point with a full 8th-order
/// stencil (4 neighbours each way radially and angularly).
struct FieldDerivatives {
  std::vector<int> points;  // indices into grid.points()
  std::vector<Eigen::VectorXd> Xx, Xy;
};

FieldDerivatives fieldDerivatives(const ImmersionField& F);

/// max over stencil-interior points of (| |X_x|^2 - |X_y|^2 | + 2 |X_x.X_y|)
/// normalized by |X_x|^2 + |X_y|^2. Throws DegenerateCell when the immersion
/// degenerates, InvalidGrid when no point has a full stencil.
double conformalityResidual(const ImmersionField& F);

/// Stereographically projects the unit normal X_x x X_y / |.| and compares to
/// g: max |(N1 + i N2)/(1 - N3) - g(z)| / (1 + |g(z)|). Requires n = 3.
double gaussResidual(const ImmersionField& F, const RationalMap& g);

/// max norm of the polar Laplacian of X over stencil-interior points
/// (harmonicity surrogate for minimality).
double harmonicResidual(const ImmersionField& F);

}  // namespace cmi
