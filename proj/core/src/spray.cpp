#include "cmi/spray.hpp"

#include <cmath>
#include <sstream>

namespace cmi {

namespace {

Complex evalData(const NullData& f, int c, Complex z) { return f.components[c](z); }

/// Greedy selection of n loop samples whose f-values span C^n.
void checkLoopSpan(const NullData& f, const HomologyLoop& loop, std::size_t loopIndex) {
  const int M = 64;
  Eigen::MatrixXcd vals(f.n, M);
  for (int k = 0; k < M; ++k) {
    Complex z = loop.point(static_cast<double>(k) / M);
    for (int c = 0; c < f.n; ++c) vals(c, k) = evalData(f, c, z);
  }
  // Greedy: repeatedly pick the column with the largest residual against the
  // span of the columns picked so far.
  Eigen::MatrixXcd picked(f.n, f.n);
  int count = 0;
  Eigen::MatrixXcd resid = vals;
  for (int step = 0; step < f.n; ++step) {
    int best = -1;
    double bestNorm = 0.0;
    for (int k = 0; k < M; ++k) {
      double nn = resid.col(k).norm();
      if (nn > bestNorm) {
        bestNorm = nn;
        best = k;
      }
    }
    if (best < 0 || bestNorm < 1e-10 * (1.0 + vals.norm())) break;
    Eigen::VectorXcd q = resid.col(best) / bestNorm;
    picked.col(count++) = vals.col(best);
    for (int k = 0; k < M; ++k) resid.col(k) -= q * (q.adjoint() * resid.col(k));
  }
  if (count < f.n) {
    std::ostringstream os;
    os << "loop " << loopIndex << ": sampled data values span only a rank-" << count
       << " subspace of C^" << f.n;
    throw SpanSelectionFailed(os.str());
  }
}

RationalMap kernel(Complex center, double scale, int order) {
  Poly den = Poly::fromRoots(std::vector<Complex>(order, center));
  return RationalMap(Poly::constant(std::pow(scale, order)), den);
}

RationalMap monomial(int k) {
  std::vector<Complex> c(k + 1, Complex(0.0));
  c[k] = 1.0;
  return RationalMap(Poly(std::move(c)), Poly::constant(1.0));
}

}  // namespace

SprayMultiplier buildSpray(const NullData& f, const std::vector<HomologyLoop>& basis,
                           int minFactors) {
  ValidationReport report = validateNull(f);
  if (!report.full) {
    std::ostringstream os;
    os << "data is not full: sampled rank " << report.rank << " < " << f.n;
    throw NotFull(os.str());
  }
  for (std::size_t j = 0; j < basis.size(); ++j) checkLoopSpan(f, basis[j], j);

  SprayMultiplier spray;
  // Global monomials first; they pick up residues at infinity that decaying
  // hole kernels miss.
  for (int k = 0; k + 1 < f.n; ++k) spray.basis.push_back(monomial(k));
  // Per-hole kernels of increasing order, round-robin across loops until the
  // requested factor count is met (at least n per loop).
  std::size_t l = basis.size();
  int perLoop = f.n;
  if (l > 0) {
    int need = minFactors - static_cast<int>(spray.basis.size());
    int fromNeed = static_cast<int>((need + static_cast<int>(l) - 1) / static_cast<int>(l));
    perLoop = std::max(perLoop, fromNeed);
  }
  for (int m = 1; m <= perLoop; ++m) {
    for (const HomologyLoop& loop : basis) {
      spray.basis.push_back(kernel(loop.center, loop.radius, m));
    }
  }
  spray.zeta.assign(spray.basis.size(), Complex(0.0));
  return spray;
}

SprayJacobian sprayJacobian(const NullData& f, const SprayMultiplier& spray,
                            const std::vector<HomologyLoop>& basis,
                            const QuadratureSpec& quad) {
  std::size_t l = basis.size();
  std::size_t N = spray.basis.size();
  SprayJacobian out;
  out.J.resize(static_cast<Eigen::Index>(l) * f.n, static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < l; ++j) {
    for (int c = 0; c < f.n; ++c) {
      const DataFun& comp = f.components[c];
      for (std::size_t i = 0; i < N; ++i) {
        const RationalMap& g = spray.basis[i];
        ComplexFn integrand = [&comp, &g](Complex z) { return g(z) * comp(z); };
        out.J(static_cast<Eigen::Index>(j) * f.n + c, static_cast<Eigen::Index>(i)) =
            contourIntegral(integrand, basis[j], quad);
      }
    }
  }
  if (out.J.rows() > 0 && out.J.cols() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(out.J);
    out.sigmaMin = svd.singularValues()(svd.singularValues().size() - 1);
  }
  return out;
}

}  // namespace cmi
