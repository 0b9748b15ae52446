#pragma once

#include <Eigen/Dense>

#include "cmi/nulldata.hpp"

namespace cmi {

/// l x n matrix of loop periods P[j] = \oint_{C_j} h f dz.
struct PeriodVector {
  Eigen::MatrixXcd P;  // rows: loops, cols: components

  double norm() const { return P.size() ? P.norm() : 0.0; }
  double realNorm() const { return P.size() ? P.real().matrix().norm() : 0.0; }
};

/// Values of the flux homomorphism on the homology basis (rows: loops).
struct FluxHomomorphism {
  Eigen::MatrixXd p;
  bool realPeriodsVanish = true;  // warning flag, not an error
};

enum class PeriodMode { FullComplex, RealPartOnly };

struct PeriodTarget {
  Eigen::MatrixXcd q;  // l x n
  PeriodMode mode = PeriodMode::FullComplex;
};

/// Period map over the homology basis; h may be empty (h == 1).
PeriodVector periodMap(const NullData& f, const ComplexFn& h,
                       const std::vector<HomologyLoop>& basis,
                       const QuadratureSpec& quad = {});

PeriodVector periodMap(const NullData& f, const std::vector<HomologyLoop>& basis,
                       const QuadratureSpec& quad = {});

/// Flux values p_j = Im(P[j]); flags non-vanishing real parts.
FluxHomomorphism flux(const PeriodVector& P, double realTol = 1e-8);

}  // namespace cmi
