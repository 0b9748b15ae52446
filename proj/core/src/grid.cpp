#include "cmi/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cmi {

int DomainGrid::index(int ring, int angle) const {
  if (ring < 0 || ring >= ringCount_) return -1;
  int a = ((angle % angleCount_) + angleCount_) % angleCount_;
  return indexTable_[static_cast<std::size_t>(ring) * angleCount_ + a];
}

int DomainGrid::nearestIndex(Complex z) const {
  int best = -1;
  double bestDist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    double d = std::abs(points_[i].z - z);
    if (d < bestDist) {
      bestDist = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

DomainGrid buildGrid(const CircularDomain& domain, int resolution, double boundaryOffset) {
  if (resolution < 4) throw InvalidGrid("grid resolution must be >= 4");
  if (!(boundaryOffset > 0.0)) throw OffsetTooLarge("boundary offset must be positive");

  // The offset may not exceed the smallest gap between boundary circles.
  double minGap = std::numeric_limits<double>::infinity();
  const auto& holes = domain.holes();
  for (std::size_t i = 0; i < holes.size(); ++i) {
    minGap = std::min(minGap, 1.0 - std::abs(holes[i].center) - holes[i].radius);
    for (std::size_t j = 0; j < i; ++j) {
      minGap = std::min(minGap, std::abs(holes[i].center - holes[j].center) -
                                    holes[i].radius - holes[j].radius);
    }
  }
  if (boundaryOffset >= minGap / 2.0) {
    std::ostringstream os;
    os << "boundary offset " << boundaryOffset << " exceeds half the minimum boundary gap "
       << minGap;
    throw OffsetTooLarge(os.str());
  }

  DomainGrid g;
  g.domain_ = domain;
  g.offset_ = boundaryOffset;
  g.ringCount_ = resolution;
  g.angleCount_ = 4 * resolution;

  // Radial span: skip past any hole covering the origin.
  double rinner = 0.0;
  for (const Hole& h : holes) {
    if (std::abs(h.center) < h.radius) {
      rinner = std::max(rinner, std::abs(h.center) + h.radius);
    }
  }
  g.r0_ = rinner + boundaryOffset;
  double rmax = 1.0 - boundaryOffset;
  if (g.r0_ >= rmax) throw OffsetTooLarge("collar leaves no radial span");
  g.dr_ = (rmax - g.r0_) / (resolution - 1);

  g.indexTable_.assign(static_cast<std::size_t>(g.ringCount_) * g.angleCount_, -1);
  for (int i = 0; i < g.ringCount_; ++i) {
    double r = g.ringRadius(i);
    for (int j = 0; j < g.angleCount_; ++j) {
      Complex z = std::polar(r, g.angleStep() * j);
      if (domain.boundaryDistance(z) >= boundaryOffset * (1.0 - 1e-12)) {
        g.indexTable_[static_cast<std::size_t>(i) * g.angleCount_ + j] =
            static_cast<int>(g.points_.size());
        g.points_.push_back(DomainGrid::Point{z, i, j});
      }
    }
  }
  if (g.points_.empty()) throw OffsetTooLarge("collar removed every grid point");

  auto segmentOk = [&](int a, int b) {
    Complex mid = 0.5 * (g.points_[a].z + g.points_[b].z);
    return domain.contains(mid);
  };
  for (int i = 0; i < g.ringCount_; ++i) {
    for (int j = 0; j < g.angleCount_; ++j) {
      int p = g.index(i, j);
      if (p < 0) continue;
      int right = g.index(i, j + 1);
      if (right >= 0 && segmentOk(p, right)) g.edges_.emplace_back(p, right);
      int up = g.index(i + 1, j);
      if (up >= 0 && segmentOk(p, up)) g.edges_.emplace_back(p, up);
    }
  }
  for (int i = 0; i + 1 < g.ringCount_; ++i) {
    for (int j = 0; j < g.angleCount_; ++j) {
      int a = g.index(i, j), b = g.index(i, j + 1);
      int c = g.index(i + 1, j + 1), d = g.index(i + 1, j);
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      Complex mid = 0.25 * (g.points_[a].z + g.points_[b].z + g.points_[c].z + g.points_[d].z);
      if (!domain.contains(mid)) continue;
      g.faces_.push_back(DomainGrid::Face{{a, b, c, d}});
    }
  }
  return g;
}

}  // namespace cmi
