#pragma once

#include <cstdint>
#include <vector>

#include "cmi/domain.hpp"

namespace cmi {

/// Annular tensor grid over the domain minus a boundary collar.
///
/// Points live on rings of constant |z| with a uniform angular division;
/// points closer than the collar offset to any boundary circle are dropped.
/// The (ring, angle) index structure is kept so that fields stored on the
/// grid can be differentiated with high-order stencils.
class DomainGrid {
 public:
  struct Point {
    Complex z;
    int ring = 0;   // radial index
    int angle = 0;  // angular index
  };
  struct Face {
    // Quad corners as point indices, counterclockwise.
    int v[4];
  };

  const CircularDomain& domain() const { return domain_; }
  double boundaryOffset() const { return offset_; }
  int ringCount() const { return ringCount_; }
  int angleCount() const { return angleCount_; }
  double ringRadius(int i) const { return r0_ + i * dr_; }
  double angleStep() const { return 2.0 * kPi / angleCount_; }
  double ringStep() const { return dr_; }

  const std::vector<Point>& points() const { return points_; }
  const std::vector<Face>& faces() const { return faces_; }

  /// Index of grid point (ring, angle), or -1 if absent. The angular index
  /// wraps modulo angleCount().
  int index(int ring, int angle) const;

  /// Pairs of point indices connecting grid neighbours (radial and angular).
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Index of the grid point closest to z.
  int nearestIndex(Complex z) const;

  friend DomainGrid buildGrid(const CircularDomain&, int, double);

 private:
  CircularDomain domain_;
  double offset_ = 0.0;
  int ringCount_ = 0;
  int angleCount_ = 0;
  double r0_ = 0.0, dr_ = 0.0;
  std::vector<Point> points_;
  std::vector<Face> faces_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> indexTable_;  // ringCount x angleCount, -1 for absent
};

/// Builds the annular grid. `resolution` is the number of radial rings; the
/// angular count is 4*resolution. Throws OffsetTooLarge when the collar
/// swallows the domain.
DomainGrid buildGrid(const CircularDomain& domain, int resolution, double boundaryOffset);

}  // namespace cmi
