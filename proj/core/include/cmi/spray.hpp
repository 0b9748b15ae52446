#pragma once

#include "cmi/periods.hpp"

namespace cmi {

/// Builds a product spray Xi(zeta, z) = prod_i (1 + zeta_i g_i(z)) at zeta = 0
/// whose period derivatives dominate. The basis mixes low-order monomials
/// z^0..z^(n-2) with per-hole kernels (s_j/(z - c_j))^m; monomials are needed
/// because pure first-order hole kernels can produce rank-deficient period
/// derivatives (residues at infinity cancel for decaying integrands).
///
/// Requires full data (rank n on a sample grid, NotFull otherwise) and, per
/// loop, n loop samples whose f-values span C^n (SpanSelectionFailed
/// otherwise). minFactors is a lower bound on the number of factors; at least
/// (n - 1) + homologyRank * n factors are produced.
SprayMultiplier buildSpray(const NullData& f, const std::vector<HomologyLoop>& basis,
                           int minFactors);

/// Derivative of the period map of Xi * f at zeta = 0: entry
/// ((j, c), i) = \oint_{C_j} g_i f_c dz, an (l*n) x N matrix, with its
/// smallest singular value.
struct SprayJacobian {
  Eigen::MatrixXcd J;
  double sigmaMin = 0.0;
};

SprayJacobian sprayJacobian(const NullData& f, const SprayMultiplier& spray,
                            const std::vector<HomologyLoop>& basis,
                            const QuadratureSpec& quad = {});

}  // namespace cmi
