#include "cmi/immersion.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace cmi {

namespace {

// 8th-order centered first- and second-derivative stencil weights for
// offsets 1..4 (antisymmetric / symmetric respectively).
constexpr double kD1[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr double kD2Center = -205.0 / 72.0;
constexpr double kD2[4] = {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};

bool fullStencil(const DomainGrid& grid, int ring, int angle, std::array<int, 9>& radial,
                 std::array<int, 9>& angular) {
  for (int k = -4; k <= 4; ++k) {
    radial[k + 4] = grid.index(ring + k, angle);
    angular[k + 4] = grid.index(ring, angle + k);
    if (radial[k + 4] < 0 || angular[k + 4] < 0) return false;
  }
  return true;
}

}  // namespace

ImmersionField integrateImmersion(const NullData& f, const ComplexFn& h,
                                  const DomainGrid& grid, Complex basepoint,
                                  const QuadratureSpec& quad) {
  std::vector<HomologyLoop> loops = f.domain.loops();
  PeriodVector P = periodMap(f, h, loops, quad);
  for (std::size_t j = 0; j < loops.size(); ++j) {
    double re = P.P.row(static_cast<Eigen::Index>(j)).real().norm();
    if (re > 1e-8 * (1.0 + P.norm())) {
      std::ostringstream os;
      os << "real period on loop " << j << " has norm " << re;
      throw RealPeriodsNonzero(os.str());
    }
  }

  ImmersionField out;
  out.grid = grid;
  out.n = f.n;
  out.closureResidual = P.realNorm();
  std::size_t m = grid.points().size();
  if (m == 0) throw InvalidGrid("empty grid");
  out.basepointIndex = grid.nearestIndex(basepoint);
  out.baseValue = Eigen::VectorXd::Zero(f.n);

  std::vector<std::vector<int>> adj(m);
  for (const auto& [a, b] : grid.edges()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  std::vector<Eigen::VectorXcd> Z(m, Eigen::VectorXcd::Zero(f.n));
  std::vector<char> seen(m, 0);
  std::queue<int> bfs;
  bfs.push(out.basepointIndex);
  seen[out.basepointIndex] = 1;
  while (!bfs.empty()) {
    int cur = bfs.front();
    bfs.pop();
    Complex za = grid.points()[cur].z;
    for (int nb : adj[cur]) {
      if (seen[nb]) continue;
      Complex zb = grid.points()[nb].z;
      for (int c = 0; c < f.n; ++c) {
        const DataFun& comp = f.components[c];
        ComplexFn phi;
        if (h) {
          phi = [&h, &comp](Complex z) { return h(z) * comp(z); };
        } else {
          phi = comp.fn();
        }
        Z[nb](c) = Z[cur](c) + segmentIntegral(phi, za, zb);
      }
      seen[nb] = 1;
      bfs.push(nb);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!seen[i]) throw InvalidGrid("grid is not edge-connected");
  }

  out.X.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.X[i] = 2.0 * Z[i].real() + out.baseValue;
  return out;
}

FieldDerivatives fieldDerivatives(const ImmersionField& F) {
  const DomainGrid& grid = F.grid;
  FieldDerivatives out;
  double dr = grid.ringStep();
  double dth = grid.angleStep();
  std::array<int, 9> radial{}, angular{};
  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    const DomainGrid::Point& p = grid.points()[i];
    if (!fullStencil(grid, p.ring, p.angle, radial, angular)) continue;
    Eigen::VectorXd Xr = Eigen::VectorXd::Zero(F.n), Xt = Eigen::VectorXd::Zero(F.n);
    for (int k = 1; k <= 4; ++k) {
      Xr += kD1[k - 1] / dr * (F.X[radial[4 + k]] - F.X[radial[4 - k]]);
      Xt += kD1[k - 1] / dth * (F.X[angular[4 + k]] - F.X[angular[4 - k]]);
    }
    double r = grid.ringRadius(p.ring);
    double th = p.angle * dth;
    double ct = std::cos(th), st = std::sin(th);
    out.points.push_back(static_cast<int>(i));
    out.Xx.push_back(ct * Xr - st / r * Xt);
    out.Xy.push_back(st * Xr + ct / r * Xt);
  }
  return out;
}

double conformalityResidual(const ImmersionField& F) {
  FieldDerivatives d = fieldDerivatives(F);
  if (d.points.empty()) throw InvalidGrid("no grid point has a full difference stencil");
  double worst = 0.0;
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    double E = d.Xx[k].squaredNorm();
    double G = d.Xy[k].squaredNorm();
    double Fc = d.Xx[k].dot(d.Xy[k]);
    if (E + G < 1e-16) throw DegenerateCell("vanishing differential at a grid point");
    worst = std::max(worst, (std::abs(E - G) + 2.0 * std::abs(Fc)) / (E + G));
  }
  return worst;
}

double gaussResidual(const ImmersionField& F, const RationalMap& g) {
  if (F.n != 3) throw Error("gaussResidual requires n = 3");
  FieldDerivatives d = fieldDerivatives(F);
  if (d.points.empty()) throw InvalidGrid("no grid point has a full difference stencil");
  double worst = 0.0;
  for (std::size_t k = 0; k < d.points.size(); ++k) {
    Eigen::Vector3d N = Eigen::Vector3d(d.Xx[k]).cross(Eigen::Vector3d(d.Xy[k]));
    double nn = N.norm();
    if (nn < 1e-16) throw DegenerateCell("vanishing normal at a grid point");
    N /= nn;
    Complex gz = g(F.grid.points()[d.points[k]].z);
    double denom = 1.0 - N(2);
    Complex proj = (std::abs(denom) > 1e-14)
                       ? Complex(N(0), N(1)) / denom
                       : Complex(1e14, 0.0);
    worst = std::max(worst, std::abs(proj - gz) / (1.0 + std::abs(gz)));
  }
  return worst;
}

double harmonicResidual(const ImmersionField& F) {
  const DomainGrid& grid = F.grid;
  double dr = grid.ringStep();
  double dth = grid.angleStep();
  std::array<int, 9> radial{}, angular{};
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    const DomainGrid::Point& p = grid.points()[i];
    if (!fullStencil(grid, p.ring, p.angle, radial, angular)) continue;
    any = true;
    Eigen::VectorXd Xr = Eigen::VectorXd::Zero(F.n);
    Eigen::VectorXd Xrr = kD2Center / (dr * dr) * F.X[i];
    Eigen::VectorXd Xtt = kD2Center / (dth * dth) * F.X[i];
    for (int k = 1; k <= 4; ++k) {
      Xr += kD1[k - 1] / dr * (F.X[radial[4 + k]] - F.X[radial[4 - k]]);
      Xrr += kD2[k - 1] / (dr * dr) * (F.X[radial[4 + k]] + F.X[radial[4 - k]]);
      Xtt += kD2[k - 1] / (dth * dth) * (F.X[angular[4 + k]] + F.X[angular[4 - k]]);
    }
    double r = grid.ringRadius(p.ring);
    worst = std::max(worst, (Xrr + Xr / r + Xtt / (r * r)).norm());
  }
  if (!any) throw InvalidGrid("no grid point has a full difference stencil");
  return worst;
}

}  // namespace cmi
