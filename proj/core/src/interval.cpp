#include "cmi/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmi {

namespace {

constexpr std::array<double, 6> kNodes = {
    0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
    0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr std::array<double, 6> kWeights = {
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// C^2 quintic smoothstep on [0, 1].
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

/// Piecewise profile: constant plateaus joined by log-space ramps (the ramp
/// value is va * (vb/va)^smoothstep, which never passes through 0).
struct Piece {
  double a = 0.0, b = 1.0;
  Complex va{1.0}, vb{1.0};
  bool ramp = false;
};

struct Profile {
  std::vector<Piece> pieces;

  Complex operator()(double s) const {
    const Piece* p = &pieces.back();
    for (const Piece& q : pieces) {
      if (s <= q.b) {
        p = &q;
        break;
      }
    }
    if (!p->ramp) return p->va;
    double x = smoothstep((s - p->a) / (p->b - p->a));
    return p->va * std::exp(x * std::log(p->vb / p->va));
  }

  std::vector<double> breakpoints() const {
    std::vector<double> brk{0.0};
    for (const Piece& p : pieces) brk.push_back(p.b);
    return brk;
  }
};

/// sin^2 bump supported on [a, b], peak value 1.
struct Bump {
  double a = 0.0, b = 1.0;

  double operator()(double s) const {
    if (s <= a || s >= b) return 0.0;
    double x = (s - a) / (b - a);
    double t = std::sin(kPi * x);
    return t * t;
  }
};

/// Composite Gauss-Legendre over [0,1] honoring the given breakpoints.
Eigen::VectorXcd integratePieces(const std::function<Eigen::VectorXcd(double)>& F, int dim,
                                 std::vector<double> brk, double maxLen) {
  brk.push_back(0.0);
  brk.push_back(1.0);
  std::sort(brk.begin(), brk.end());
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(dim);
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double a = std::max(0.0, brk[i]), b = std::min(1.0, brk[i + 1]);
    if (b - a < 1e-14) continue;
    int panels = std::max(1, static_cast<int>(std::ceil((b - a) / maxLen)));
    double len = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = a + (p + 0.5) * len;
      double half = 0.5 * len;
      for (std::size_t k = 0; k < kNodes.size(); ++k) {
        sum += (kWeights[k] * half) *
               (F(mid + half * kNodes[k]) + F(mid - half * kNodes[k]));
      }
    }
  }
  return sum;
}

int sampledRank(const Eigen::MatrixXcd& vals, double relThresh) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vals);
  if (svd.singularValues().size() == 0 || svd.singularValues()(0) == 0.0) return 0;
  double thresh = relThresh * svd.singularValues()(0);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > thresh) ++rank;
  }
  return rank;
}

void densify(IntervalFunction& out, int samples) {
  out.s.resize(samples + 1);
  out.values.resize(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    double s = static_cast<double>(k) / samples;
    out.s[k] = s;
    out.values[k] = out.eval(s);
  }
}

void checkNonvanishing(const IntervalFunction& out) {
  for (Complex v : out.values) {
    if (std::abs(v) < 1e-12) throw CorrectionFailed("corrected profile vanishes");
  }
}

}  // namespace

void checkNowhereFlat(const SampledPath& fPath) {
  const double window = 0.1;
  const int perWindow = 16 * fPath.n + 1;
  for (double a = 0.0; a <= 1.0 - window + 1e-12; a += window / 2.0) {
    Eigen::MatrixXcd vals(fPath.n, perWindow);
    for (int k = 0; k < perWindow; ++k) {
      double s = a + window * k / (perWindow - 1);
      vals.col(k) = fPath.f(s);
    }
    int rank = sampledRank(vals, 1e-6);
    if (rank < fPath.n) {
      std::ostringstream os;
      os << "path is flat on [" << a << ", " << a + window << "]: sampled rank " << rank
         << " < " << fPath.n;
      throw NotNowhereFlat(os.str());
    }
  }
}

IntervalFunction intervalMultiplier(const SampledPath& fPath, const Eigen::VectorXcd& alpha,
                                    const QuadratureSpec& quad, double tol) {
  (void)quad;
  const int n = fPath.n;
  if (alpha.size() != n) throw ConfigError("alpha length must match the path dimension");
  checkNowhereFlat(fPath);

  // Trivial case: the constant multiplier already hits the target.
  Eigen::VectorXcd total = integratePieces(fPath.f, n, {}, 0.01);
  if ((total - alpha).norm() < tol) {
    IntervalFunction out;
    out.eval = [](double) { return Complex(1.0); };
    out.residualNorm = (total - alpha).norm();
    densify(out, 4096);
    return out;
  }

  // Segment integrals over the N = 2n subdivision.
  const int N = 2 * n;
  Eigen::MatrixXcd V(n, N);
  for (int j = 0; j < N; ++j) {
    double a = static_cast<double>(j) / N, b = static_cast<double>(j + 1) / N;
    auto seg = [&fPath, a, b](double x) { return fPath.f(a + (b - a) * x); };
    V.col(j) = integratePieces(seg, n, {}, 0.01) * (b - a);
  }
  if (sampledRank(V, 1e-10) < n) {
    throw SpanSelectionFailed("segment integrals do not span C^n");
  }

  // Plateau values: minimal-norm correction of (1,...,1).
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(N);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  Eigen::VectorXcd g = ones + svd.solve(alpha - V * ones);
  double pert = 1e-6 * (1.0 + alpha.norm());
  for (int j = 0; j < N; ++j) {
    if (std::abs(g(j)) < pert) {
      g(j) = (std::abs(g(j)) > 0.0) ? g(j) / std::abs(g(j)) * pert : Complex(pert);
    }
  }

  // Plateau/ramp profile with endpoints pinned to 1.
  const double w = std::min(0.04, 1.0 / (4.0 * N));
  Profile base;
  base.pieces.push_back({0.0, w, Complex(1.0), g(0), true});
  for (int j = 0; j < N; ++j) {
    double sj = static_cast<double>(j) / N, sj1 = static_cast<double>(j + 1) / N;
    double lo = (j == 0) ? w : sj + w;
    double hi = (j == N - 1) ? 1.0 - w : sj1 - w;
    base.pieces.push_back({lo, hi, g(j), g(j), false});
    if (j + 1 < N) base.pieces.push_back({sj1 - w, sj1 + w, g(j), g(j + 1), true});
  }
  base.pieces.push_back({1.0 - w, 1.0, g(N - 1), Complex(1.0), true});

  // One bump per plateau; the correction is linear in the bump coefficients.
  std::vector<Bump> bumps;
  for (int j = 0; j < N; ++j) {
    double sj = static_cast<double>(j) / N, sj1 = static_cast<double>(j + 1) / N;
    bumps.push_back({(j == 0) ? w : sj + w, (j == N - 1) ? 1.0 - w : sj1 - w});
  }
  std::vector<double> brk = base.breakpoints();
  Eigen::MatrixXcd M(n, N);
  for (int j = 0; j < N; ++j) {
    const Bump& bj = bumps[j];
    auto col = [&](double s) -> Eigen::VectorXcd { return base(s) * bj(s) * fPath.f(s); };
    M.col(j) = integratePieces(col, n, brk, 0.005);
  }
  auto residualOf = [&](const Eigen::VectorXcd& zeta) {
    auto hf = [&](double s) -> Eigen::VectorXcd {
      Complex factor = 1.0;
      for (int j = 0; j < N; ++j) factor += zeta(j) * bumps[j](s);
      return base(s) * factor * fPath.f(s);
    };
    return Eigen::VectorXcd(integratePieces(hf, n, brk, 0.005) - alpha);
  };

  Eigen::VectorXcd zeta = Eigen::VectorXcd::Zero(N);
  Eigen::BDCSVD<Eigen::MatrixXcd> msvd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  msvd.setThreshold(1e-12);
  Eigen::VectorXcd r = residualOf(zeta);
  for (int pass = 0; pass < 3 && r.norm() >= tol; ++pass) {
    zeta -= msvd.solve(r);
    r = residualOf(zeta);
  }
  if (r.norm() >= tol) {
    std::ostringstream os;
    os << "bump correction stalled at residual " << r.norm();
    throw CorrectionFailed(os.str());
  }

  IntervalFunction out;
  out.residualNorm = r.norm();
  out.eval = [base, bumps, zeta, N](double s) {
    Complex factor = 1.0;
    for (int j = 0; j < N; ++j) factor += zeta(j) * bumps[j](s);
    return base(s) * factor;
  };
  densify(out, 4096);
  checkNonvanishing(out);
  return out;
}

IntervalFunction intervalGG2(const std::function<Complex(double)>& f,
                             const std::function<Complex(double)>& a,
                             const std::array<Complex, 2>& x, const QuadratureSpec& quad,
                             double tol) {
  (void)quad;
  auto pair2 = [&](const std::function<Eigen::VectorXcd(double)>& F,
                   const std::vector<double>& brk) {
    return integratePieces(F, 2, brk, 0.005);
  };

  // Trivial case.
  Eigen::VectorXcd total = pair2(
      [&](double s) {
        Complex fs = f(s), as = a(s);
        return (Eigen::VectorXcd(2) << as * fs, as * fs * fs).finished();
      },
      {});
  Eigen::VectorXcd xv(2);
  xv << x[0], x[1];
  if ((total - xv).norm() < tol) {
    IntervalFunction out;
    out.eval = [](double) { return Complex(1.0); };
    out.residualNorm = (total - xv).norm();
    densify(out, 4096);
    return out;
  }

  // Plateau points where {(f(s_i), 2 f(s_i)^2)} spans C^2.
  const double tau = 0.04, w = 0.04, valley = 1e-3;
  double bestDet = 0.0;
  double s1 = 0.0, s2 = 0.0;
  double scale = 0.0;
  for (int i = 0; i < 29; ++i) {
    double si = 0.15 + 0.025 * i;
    Complex fi = f(si);
    scale = std::max(scale, std::abs(fi) * std::abs(fi) * std::abs(fi));
    for (int j = i + 1; j < 29; ++j) {
      double sj = 0.15 + 0.025 * j;
      if (sj - si < 2.0 * tau + 2.0 * w + 0.02) continue;
      Complex fj = f(sj);
      double det = std::abs(fi * 2.0 * fj * fj - fj * 2.0 * fi * fi);
      if (det > bestDet) {
        bestDet = det;
        s1 = si;
        s2 = sj;
      }
    }
  }
  if (bestDet < 1e-8 * (1.0 + scale)) {
    throw SpanSelectionFailed("no point pair with (f, 2f^2) values spanning C^2");
  }

  // Plateau weight integrals (h constant on each plateau).
  std::array<double, 2> centers = {s1, s2};
  Eigen::Vector2cd c, d;
  for (int i = 0; i < 2; ++i) {
    double lo = centers[i] - tau, hi = centers[i] + tau;
    auto seg = [&](double t) {
      double s = lo + (hi - lo) * t;
      Complex fs = f(s), as = a(s);
      return (Eigen::VectorXcd(2) << as * fs, as * fs * fs).finished();
    };
    Eigen::VectorXcd I = pair2(seg, {}) * (hi - lo);
    c(i) = I(0);
    d(i) = I(1);
  }

  // Closed-form plateau heights for c1 y1 + c2 y2 = X1, d1 y1^2 + d2 y2^2 = X2.
  auto solveHeights = [&](Complex X1, Complex X2) {
    Complex A = d(0) + d(1) * c(0) * c(0) / (c(1) * c(1));
    Complex B = -2.0 * d(1) * X1 * c(0) / (c(1) * c(1));
    Complex C = d(1) * X1 * X1 / (c(1) * c(1)) - X2;
    std::array<Eigen::Vector2cd, 2> roots;
    if (std::abs(A) < 1e-14 * (std::abs(B) + std::abs(C))) {
      Complex y1 = -C / B;
      roots[0] << y1, (X1 - c(0) * y1) / c(1);
      roots[1] = roots[0];
    } else {
      Complex disc = std::sqrt(B * B - 4.0 * A * C);
      for (int k = 0; k < 2; ++k) {
        Complex y1 = (-B + (k == 0 ? disc : -disc)) / (2.0 * A);
        roots[k] << y1, (X1 - c(0) * y1) / c(1);
      }
    }
    // Prefer the root whose plateau heights stay farther from zero.
    auto quality = [](const Eigen::Vector2cd& y) {
      return std::min(std::abs(y(0)), std::abs(y(1)));
    };
    return quality(roots[0]) >= quality(roots[1]) ? roots[0] : roots[1];
  };
  Eigen::Vector2cd y = solveHeights(x[0], x[1]);
  for (int i = 0; i < 2; ++i) {
    if (std::abs(y(i)) < valley) y(i) = valley;
  }

  // Profile: endpoint ramps to a small valley value, two plateaus.
  Complex v(valley);
  Profile base;
  base.pieces.push_back({0.0, w, Complex(1.0), v, true});
  base.pieces.push_back({w, s1 - tau - w, v, v, false});
  base.pieces.push_back({s1 - tau - w, s1 - tau, v, y(0), true});
  base.pieces.push_back({s1 - tau, s1 + tau, y(0), y(0), false});
  base.pieces.push_back({s1 + tau, s1 + tau + w, y(0), v, true});
  base.pieces.push_back({s1 + tau + w, s2 - tau - w, v, v, false});
  base.pieces.push_back({s2 - tau - w, s2 - tau, v, y(1), true});
  base.pieces.push_back({s2 - tau, s2 + tau, y(1), y(1), false});
  base.pieces.push_back({s2 + tau, s2 + tau + w, y(1), v, true});
  base.pieces.push_back({s2 + tau + w, 1.0 - w, v, v, false});
  base.pieces.push_back({1.0 - w, 1.0, v, Complex(1.0), true});
  std::vector<double> brk = base.breakpoints();

  // Bump polish inside the plateaus (Gauss-Newton; the map is quadratic).
  std::array<Bump, 2> bumps = {Bump{s1 - tau, s1 + tau}, Bump{s2 - tau, s2 + tau}};
  auto evalH = [&](const Eigen::Vector2cd& zeta, double s) {
    return base(s) * (1.0 + zeta(0) * bumps[0](s) + zeta(1) * bumps[1](s));
  };
  auto residualOf = [&](const Eigen::Vector2cd& zeta) {
    auto F = [&](double s) {
      Complex H = evalH(zeta, s);
      Complex fs = f(s), as = a(s);
      return (Eigen::VectorXcd(2) << as * H * fs, as * H * H * fs * fs).finished();
    };
    return Eigen::Vector2cd(pair2(F, brk) - xv);
  };
  Eigen::Vector2cd zeta = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd r = residualOf(zeta);
  double rn = r.norm();
  int iter = 0;
  while (rn >= tol && iter < 60) {
    Eigen::Matrix2cd J;
    for (int i = 0; i < 2; ++i) {
      const Bump& bi = bumps[i];
      auto col = [&](double s) {
        Complex H = evalH(zeta, s);
        Complex bh = base(s) * bi(s);
        Complex fs = f(s), as = a(s);
        return (Eigen::VectorXcd(2) << as * bh * fs, 2.0 * as * H * bh * fs * fs).finished();
      };
      J.col(i) = pair2(col, brk);
    }
    Eigen::Vector2cd step = J.fullPivLu().solve(-r);
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h < 20; ++h, lambda *= 0.5) {
      Eigen::Vector2cd trial = zeta + lambda * step;
      Eigen::Vector2cd rTrial = residualOf(trial);
      if (rTrial.norm() < rn * (1.0 - 1e-4 * lambda) || rTrial.norm() < tol) {
        zeta = trial;
        r = rTrial;
        rn = rTrial.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++iter;
  }
  if (rn >= tol) {
    std::ostringstream os;
    os << "plateau polish stalled at residual " << rn;
    throw CorrectionFailed(os.str());
  }

  IntervalFunction out;
  out.residualNorm = rn;
  out.eval = [base, bumps, zeta](double s) {
    return base(s) * (1.0 + zeta(0) * bumps[0](s) + zeta(1) * bumps[1](s));
  };
  densify(out, 4096);
  checkNonvanishing(out);
  return out;
}

}  // namespace cmi
