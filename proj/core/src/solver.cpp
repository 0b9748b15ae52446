#include "cmi/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace cmi {

namespace {

Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

// Real 2K x 2m form of a complex K x m matrix acting on [Re x; Im x].
Eigen::MatrixXd realifyFull(const Eigen::MatrixXcd& J) {
  Eigen::MatrixXd out(2 * J.rows(), 2 * J.cols());
  out.topLeftCorner(J.rows(), J.cols()) = J.real();
  out.topRightCorner(J.rows(), J.cols()) = -J.imag();
  out.bottomLeftCorner(J.rows(), J.cols()) = J.imag();
  out.bottomRightCorner(J.rows(), J.cols()) = J.real();
  return out;
}

// Real K x 2m matrix of x -> Re(J (Re x + i Im x)).
Eigen::MatrixXd realifyRealPart(const Eigen::MatrixXcd& J) {
  Eigen::MatrixXd out(J.rows(), 2 * J.cols());
  out.leftCols(J.cols()) = J.real();
  out.rightCols(J.cols()) = -J.imag();
  return out;
}

Eigen::VectorXd coeffsToVector(const LaurentExpansion& u) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) c(static_cast<Eigen::Index>(i)) = u.coefficient(i);
  return realify(c);
}

LaurentExpansion withCoeffs(const LaurentExpansion& u, const Eigen::VectorXd& x) {
  std::size_t m = u.size();
  std::vector<Complex> c(m);
  for (std::size_t i = 0; i < m; ++i) {
    c[i] = Complex(x(static_cast<Eigen::Index>(i)), x(static_cast<Eigen::Index>(m + i)));
  }
  LaurentExpansion out = u;
  out.setCoefficients(std::move(c));
  return out;
}

struct GNProblem {
  std::function<Eigen::VectorXd(const LaurentExpansion&)> residual;
  std::function<Eigen::MatrixXd(const LaurentExpansion&)> jacobian;
};

struct GNOutcome {
  LaurentExpansion u;
  double residualNorm = 0.0;
  int iterations = 0;
  double sigmaMin = 0.0;
};

GNOutcome dampedGaussNewton(LaurentExpansion u, const GNProblem& prob,
                            const SolveOptions& opt) {
  Eigen::VectorXd r = prob.residual(u);
  double rn = r.norm();
  int iterations = 0;
  double sigmaMin = 0.0;
  auto diag = [&](const char* what) {
    std::ostringstream os;
    os << what << " (iterations=" << iterations << ", residual=" << rn
       << ", degree=" << u.degree() << ", sigmaMin=" << sigmaMin << ")";
    return os.str();
  };
  while (true) {
    if (rn < opt.tol) {
      Eigen::MatrixXd J = prob.jacobian(u);
      Eigen::BDCSVD<Eigen::MatrixXd> svd(J);
      sigmaMin = svd.singularValues()(svd.singularValues().size() - 1);
      return {u, rn, iterations, sigmaMin};
    }
    if (iterations >= opt.maxIterations) throw MaxIterations(diag("iteration cap reached"));
    Eigen::MatrixXd J = prob.jacobian(u);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    sigmaMin = svd.singularValues()(svd.singularValues().size() - 1);
    Eigen::VectorXd delta = svd.solve(-r);
    Eigen::VectorXd x = coeffsToVector(u);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= opt.maxHalvings; ++h, lambda *= 0.5) {
      LaurentExpansion trial = withCoeffs(u, x + lambda * delta);
      Eigen::VectorXd rTrial;
      try {
        rTrial = prob.residual(trial);
      } catch (const NonConvergent&) {
        continue;  // quadrature blew up on a wild trial point: reject
      }
      double rnTrial = rTrial.norm();
      if (rnTrial < opt.tol || rnTrial < rn * (1.0 - 1e-4 * lambda)) {
        u = std::move(trial);
        r = std::move(rTrial);
        rn = rnTrial;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (u.degree() < opt.degreeCap) {
        u = u.raised(std::min(2 * u.degree(), opt.degreeCap));
        r = prob.residual(u);
        rn = r.norm();
        continue;
      }
      if (svd.rank() < J.rows()) throw RankDeficient(diag("Jacobian rank below constraint count"));
      throw MaxIterations(diag("step stalled at the degree cap"));
    }
    ++iterations;
  }
}

// Flattened period vector of exp(u) * f over the homology basis
// (loop-major, component within each loop).
Eigen::VectorXcd multiplierPeriods(const NullData& f, const LaurentExpansion& u,
                                   const std::vector<HomologyLoop>& loops,
                                   const QuadratureSpec& quad) {
  Eigen::VectorXcd P(static_cast<Eigen::Index>(loops.size()) * f.n);
  for (std::size_t j = 0; j < loops.size(); ++j) {
    for (int c = 0; c < f.n; ++c) {
      const DataFun& comp = f.components[c];
      ComplexFn integrand = [&u, &comp](Complex z) { return std::exp(u(z)) * comp(z); };
      P(static_cast<Eigen::Index>(j) * f.n + c) = contourIntegral(integrand, loops[j], quad);
    }
  }
  return P;
}

// d/dcoeff of the flattened period vector: column b is
// \oint basis_b * exp(u) * f dz.
Eigen::MatrixXcd multiplierJacobian(const NullData& f, const LaurentExpansion& u,
                                    const std::vector<HomologyLoop>& loops,
                                    const QuadratureSpec& quad) {
  std::size_t m = u.size();
  Eigen::MatrixXcd J(static_cast<Eigen::Index>(loops.size()) * f.n,
                     static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < loops.size(); ++j) {
    for (int c = 0; c < f.n; ++c) {
      const DataFun& comp = f.components[c];
      for (std::size_t b = 0; b < m; ++b) {
        ComplexFn integrand = [&u, &comp, b](Complex z) {
          return u.basis(b, z) * std::exp(u(z)) * comp(z);
        };
        J(static_cast<Eigen::Index>(j) * f.n + c, static_cast<Eigen::Index>(b)) =
            contourIntegral(integrand, loops[j], quad);
      }
    }
  }
  return J;
}

void checkTargetInSpan(const NullData& f, const PeriodTarget& target,
                       const std::vector<HomologyLoop>& loops) {
  // Values of non-full data lie in a proper subspace of C^n; every
  // achievable period vector then lies (rowwise) in that subspace.
  const int M = 64;
  Eigen::MatrixXcd vals(f.n, static_cast<Eigen::Index>(loops.size()) * M);
  for (std::size_t j = 0; j < loops.size(); ++j) {
    for (int k = 0; k < M; ++k) {
      Complex z = loops[j].point(static_cast<double>(k) / M);
      for (int c = 0; c < f.n; ++c) {
        vals(c, static_cast<Eigen::Index>(j) * M + k) = f.components[c](z);
      }
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(vals, Eigen::ComputeThinU);
  double thresh = 1e-8 * svd.singularValues()(0);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > thresh) ++rank;
  }
  if (rank >= f.n) return;  // full data: all of C^n is reachable
  Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
  for (Eigen::Index j = 0; j < target.q.rows(); ++j) {
    Eigen::VectorXcd q = target.q.row(j).transpose();
    double qn = q.norm();
    if (target.mode == PeriodMode::FullComplex) {
      double res = (q - U * (U.adjoint() * q)).norm();
      if (res > 1e-8 * (1.0 + qn)) {
        std::ostringstream os;
        os << "target row " << j << " lies outside the data value span (distance " << res
           << ")";
        throw TargetOutsideSpan(os.str());
      }
    } else {
      // Real parts of vectors in the complex span of U.
      Eigen::MatrixXd R = realifyRealPart(U);
      Eigen::VectorXd qr = q.real();
      Eigen::VectorXd proj = R * R.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                                     .solve(qr);
      double res = (qr - proj).norm();
      if (res > 1e-8 * (1.0 + qr.norm())) {
        std::ostringstream os;
        os << "target row " << j
           << " has real part outside the reachable real span (distance " << res << ")";
        throw TargetOutsideSpan(os.str());
      }
    }
  }
}

}  // namespace

SolveReport solveMultiplier(const NullData& f, const PeriodTarget& target,
                            const SolveOptions& opt) {
  std::vector<HomologyLoop> loops = f.domain.loops();
  if (target.q.rows() != static_cast<Eigen::Index>(loops.size()) ||
      (loops.size() > 0 && target.q.cols() != f.n)) {
    throw ConfigError("period target shape does not match (loops x components)");
  }
  SolveReport report;
  if (loops.empty()) {
    report.multiplier.u = LaurentExpansion::forDomain(f.domain, opt.degree);
    return report;
  }
  checkTargetInSpan(f, target, loops);

  Eigen::VectorXcd qFlat(static_cast<Eigen::Index>(loops.size()) * f.n);
  for (std::size_t j = 0; j < loops.size(); ++j) {
    for (int c = 0; c < f.n; ++c) {
      qFlat(static_cast<Eigen::Index>(j) * f.n + c) = target.q(static_cast<Eigen::Index>(j), c);
    }
  }

  LaurentExpansion u0 = opt.initialGuess ? *opt.initialGuess
                                         : LaurentExpansion::forDomain(f.domain, opt.degree);
  bool full = target.mode == PeriodMode::FullComplex;
  bool pin = opt.pinConstant || qFlat.norm() == 0.0;
  GNProblem prob;
  prob.residual = [&f, &loops, &opt, qFlat, full](const LaurentExpansion& u) {
    Eigen::VectorXcd r = multiplierPeriods(f, u, loops, opt.quad) - qFlat;
    return full ? realify(r) : Eigen::VectorXd(r.real());
  };
  prob.jacobian = [&f, &loops, &opt, full, pin](const LaurentExpansion& u) {
    Eigen::MatrixXcd J = multiplierJacobian(f, u, loops, opt.quad);
    Eigen::MatrixXd R = full ? realifyFull(J) : realifyRealPart(J);
    if (pin) {
      // Zero columns make the minimal-norm step leave the constant alone.
      Eigen::Index m = static_cast<Eigen::Index>(u.size());
      R.col(0).setZero();
      R.col(m).setZero();
    }
    return R;
  };
  GNOutcome out = dampedGaussNewton(u0, prob, opt);
  report.multiplier.u = out.u;
  report.residualNorm = out.residualNorm;
  report.iterations = out.iterations;
  report.sigmaMin = out.sigmaMin;
  return report;
}

std::vector<SolveReport> solveMultiplierFamily(
    const NullData& f, const std::function<PeriodTarget(double)>& targetPath, int steps,
    const SolveOptions& opt) {
  if (steps < 1) throw ConfigError("continuation needs at least one step");
  std::vector<SolveReport> reports;
  SolveOptions local = opt;
  SolveReport first = solveMultiplier(f, targetPath(0.0), local);
  first.t = 0.0;
  LaurentExpansion warm = first.multiplier.u;
  reports.push_back(std::move(first));
  double t = 0.0;
  double step = 1.0 / steps;
  const double minStep = (1.0 / steps) / 64.0;
  while (t < 1.0) {
    double tNext = std::min(1.0, t + step);
    local.initialGuess = &warm;
    try {
      SolveReport r = solveMultiplier(f, targetPath(tNext), local);
      r.t = tNext;
      r.continuationSteps = static_cast<int>(reports.size());
      warm = r.multiplier.u;
      reports.push_back(std::move(r));
      t = tNext;
      step = std::min(step * 2.0, 1.0 / steps);
    } catch (const TargetOutsideSpan&) {
      throw;
    } catch (const Error&) {
      step *= 0.5;
      if (step < minStep) {
        std::ostringstream os;
        os << "continuation stalled at t=" << t << " (step " << step << " below minimum)";
        throw ContinuationStalled(os.str());
      }
    }
  }
  return reports;
}

ExpMultiplier solveNullCurveMultiplier(const NullData& f, const SolveOptions& opt,
                                       unsigned seed, int attempts) {
  std::vector<HomologyLoop> loops = f.domain.loops();
  PeriodTarget target;
  target.q = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(loops.size()), f.n);
  if (loops.empty()) return solveMultiplier(f, target, opt).multiplier;

  // Sample points for ranking solutions by the spread of Re u.
  std::vector<Complex> probes;
  for (const HomologyLoop& loop : loops) {
    for (int k = 0; k < 32; ++k) probes.push_back(loop.point(k / 32.0));
  }
  for (int k = 0; k < 64; ++k) {
    Complex z = std::polar(0.98, 2.0 * kPi * k / 64.0);
    if (f.domain.contains(z)) probes.push_back(z);
  }

  SolveOptions local = opt;
  local.degree = 2;
  local.degreeCap = std::max(4, opt.degree / 2);
  std::mt19937 rng(seed + 1);
  std::normal_distribution<double> nd(0.0, 0.5);
  bool found = false;
  double bestSpread = 0.0;
  ExpMultiplier best;
  std::string lastErr;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    LaurentExpansion u0 = LaurentExpansion::forDomain(f.domain, local.degree);
    for (std::size_t i = 1; i < u0.size(); ++i) u0.setCoefficient(i, Complex(nd(rng), nd(rng)));
    local.initialGuess = &u0;
    SolveReport r;
    try {
      r = solveMultiplier(f, target, local);
    } catch (const Error& e) {
      lastErr = e.what();
      continue;
    }
    double lo = 1e300, hi = -1e300;
    for (Complex z : probes) {
      double re = r.multiplier.u(z).real();
      lo = std::min(lo, re);
      hi = std::max(hi, re);
    }
    if (!found || hi - lo < bestSpread) {
      found = true;
      bestSpread = hi - lo;
      best = r.multiplier;
    }
  }
  if (!found) throw SolverFailed("null-curve multiplier solve failed on all seeds: " + lastErr);
  return best;
}

GG2Result solveGG2(const CircularDomain& domain,
                   const std::vector<std::pair<Complex, Complex>>& targets,
                   const SolveOptions& opt) {
  std::vector<HomologyLoop> loops = domain.loops();
  if (targets.size() != loops.size()) {
    throw ConfigError("one target pair per homology loop is required");
  }
  GG2Result result;
  if (loops.empty()) {
    // No periods to kill; any nonconstant exponent works.
    LaurentExpansion u = LaurentExpansion::forDomain(domain, std::max(1, opt.degree));
    u.setCoefficient(1, Complex(1.0));  // u = z
    result.g.u = std::move(u);
    return result;
  }

  Eigen::VectorXcd qFlat(2 * static_cast<Eigen::Index>(loops.size()));
  for (std::size_t j = 0; j < loops.size(); ++j) {
    qFlat(2 * static_cast<Eigen::Index>(j)) = targets[j].first;
    qFlat(2 * static_cast<Eigen::Index>(j) + 1) = targets[j].second;
  }

  auto periods = [&loops, &opt](const LaurentExpansion& u) {
    Eigen::VectorXcd P(2 * static_cast<Eigen::Index>(loops.size()));
    for (std::size_t j = 0; j < loops.size(); ++j) {
      P(2 * static_cast<Eigen::Index>(j)) = contourIntegral(
          [&u](Complex z) { return std::exp(u(z)); }, loops[j], opt.quad);
      P(2 * static_cast<Eigen::Index>(j) + 1) = contourIntegral(
          [&u](Complex z) { return std::exp(2.0 * u(z)); }, loops[j], opt.quad);
    }
    return P;
  };

  GNProblem prob;
  prob.residual = [&periods, qFlat](const LaurentExpansion& u) {
    return realify(Eigen::VectorXcd(periods(u) - qFlat));
  };
  prob.jacobian = [&loops, &opt](const LaurentExpansion& u) {
    std::size_t m = u.size();
    Eigen::MatrixXcd J(2 * static_cast<Eigen::Index>(loops.size()),
                       static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < loops.size(); ++j) {
      for (std::size_t b = 0; b < m; ++b) {
        J(2 * static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b)) = contourIntegral(
            [&u, b](Complex z) { return u.basis(b, z) * std::exp(u(z)); }, loops[j],
            opt.quad);
        J(2 * static_cast<Eigen::Index>(j) + 1, static_cast<Eigen::Index>(b)) =
            2.0 * contourIntegral(
                      [&u, b](Complex z) { return u.basis(b, z) * std::exp(2.0 * u(z)); },
                      loops[j], opt.quad);
      }
    }
    return realifyFull(J);
  };

  // Seeded starts break the constant solutions; retry with stronger seeds if
  // the solver drifts back to a nearly constant exponent.
  double seed = 0.3;
  for (int attempt = 0; attempt < 3; ++attempt, seed *= 2.0) {
    LaurentExpansion u0 = LaurentExpansion::forDomain(domain, opt.degree);
    if (opt.initialGuess) {
      u0 = *opt.initialGuess;
    } else {
      u0.setCoefficient(1, Complex(0.2 * seed / 0.3));
      u0.setCoefficient(static_cast<std::size_t>(u0.degree()) + 1, Complex(seed));
    }
    GNOutcome out;
    try {
      out = dampedGaussNewton(u0, prob, opt);
    } catch (const Error& e) {
      if (attempt == 2) throw SolverFailed(std::string("coupled period solve failed: ") + e.what());
      continue;
    }
    double nonconstant = 0.0;
    for (std::size_t i = 1; i < out.u.size(); ++i) nonconstant += std::norm(out.u.coefficient(i));
    nonconstant = std::sqrt(nonconstant);
    if (nonconstant >= 0.1) {
      result.g.u = out.u;
      result.residualNorm = out.residualNorm;
      result.iterations = out.iterations;
      return result;
    }
    if (opt.initialGuess) break;  // caller-provided start: no reseeding
  }
  throw SolverFailed("exponent collapsed to a constant despite seeded starts");
}

}  // namespace cmi
