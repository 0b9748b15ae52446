#pragma once

#include <complex>
#include <vector>

#include "cmi/errors.hpp"

namespace cmi {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Round hole cut out of the unit disk.
struct Hole {
  Complex center;
  double radius = 0.0;
};

/// Counterclockwise circle used as a homology basis element.
struct HomologyLoop {
  Complex center;
  double radius = 0.0;
  int orientation = +1;

  Complex point(double t) const {
    return center + radius * std::polar(1.0, 2.0 * kPi * t);
  }
  Complex tangent(double t) const {
    return Complex(0.0, 2.0 * kPi * radius) * std::polar(1.0, 2.0 * kPi * t);
  }
};

/// Unit disk minus k disjoint closed round subdisks. Immutable after
/// construction; the constructor validates the hole configuration.
class CircularDomain {
 public:
  CircularDomain() = default;
  explicit CircularDomain(std::vector<Hole> holes);

  const std::vector<Hole>& holes() const { return holes_; }
  double outerRadius() const { return 1.0; }
  std::size_t homologyRank() const { return holes_.size(); }

  /// One counterclockwise loop per hole, in hole order. Loop radius is the
  /// geometric mean of the hole radius and the distance from the hole center
  /// to the nearest other boundary circle.
  std::vector<HomologyLoop> loops() const;

  bool contains(Complex z) const;
  bool containsClosed(Complex z, double tol = 1e-12) const;

  /// Signed distance from z to the nearest boundary circle (positive inside
  /// the domain).
  double boundaryDistance(Complex z) const;

 private:
  std::vector<Hole> holes_;
};

struct QuadratureSpec {
  int samplesPerLoop = 256;       // power of two, >= 16
  double pathTolerance = 1e-12;
  int maxRefinements = 6;
};

/// Piecewise-linear sampled path; consecutive samples are treated as straight
/// segments.
struct PathInDomain {
  std::vector<Complex> points;
  bool closed = false;
};

}  // namespace cmi
