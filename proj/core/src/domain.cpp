#include "cmi/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cmi {

CircularDomain::CircularDomain(std::vector<Hole> holes) : holes_(std::move(holes)) {
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    const Hole& h = holes_[i];
    if (!(h.radius > 0.0)) {
      throw InvalidDomain("hole radius must be positive");
    }
    if (std::abs(h.center) + h.radius >= 1.0) {
      std::ostringstream os;
      os << "hole " << i << " is not strictly inside the unit disk";
      throw InvalidDomain(os.str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Hole& g = holes_[j];
      if (std::abs(h.center - g.center) <= h.radius + g.radius) {
        std::ostringstream os;
        os << "holes " << j << " and " << i << " are not disjoint";
        throw InvalidDomain(os.str());
      }
    }
  }
}

bool CircularDomain::contains(Complex z) const {
  if (std::abs(z) >= 1.0) return false;
  for (const Hole& h : holes_) {
    if (std::abs(z - h.center) <= h.radius) return false;
  }
  return true;
}

bool CircularDomain::containsClosed(Complex z, double tol) const {
  if (std::abs(z) > 1.0 + tol) return false;
  for (const Hole& h : holes_) {
    if (std::abs(z - h.center) < h.radius - tol) return false;
  }
  return true;
}

double CircularDomain::boundaryDistance(Complex z) const {
  double d = 1.0 - std::abs(z);
  for (const Hole& h : holes_) {
    d = std::min(d, std::abs(z - h.center) - h.radius);
  }
  return d;
}

std::vector<HomologyLoop> CircularDomain::loops() const {
  std::vector<HomologyLoop> out;
  out.reserve(holes_.size());
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    const Hole& h = holes_[i];
    double nearest = 1.0 - std::abs(h.center);  // distance to outer circle
    for (std::size_t j = 0; j < holes_.size(); ++j) {
      if (j == i) continue;
      nearest = std::min(nearest, std::abs(h.center - holes_[j].center) - holes_[j].radius);
    }
    // Geometric mean keeps the loop inside the safety annulus between the
    // hole and the nearest other boundary.
    double r = std::sqrt(h.radius * nearest);
    out.push_back(HomologyLoop{h.center, r, +1});
  }
  return out;
}

}  // namespace cmi
