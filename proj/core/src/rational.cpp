#include "cmi/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cmi {

RationalMap::RationalMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.isZero()) throw Error("rational map with zero denominator");
  normalize();
}

void RationalMap::normalize() {
  if (num_.isZero()) {
    den_ = Poly::constant(1.0);
    return;
  }
  // Cancel common roots. Coefficients are exact user data, so a tight
  // relative tolerance is appropriate. Roots are clustered first: a computed
  // multiplicity-m root splits into m estimates c + delta*omega^k (omega the
  // m-th root of unity) whose mean cancels the leading error, so cluster
  // representatives are accurate enough for the tight pairing tolerance even
  // when the individual root estimates are not.
  const double tol = 1e-10;
  if (num_.degree() >= 1 && den_.degree() >= 1) {
    // Clustering is deliberately loose (root estimates of a multiplicity-m
    // root spread like eps^(1/m)); the tight pairing test acts on the
    // accurate cluster means, and every cancellation is verified against the
    // cross-multiplied polynomial identity before being accepted.
    auto nclusters = clusterRoots(num_.roots(), 1e-4);
    auto dclusters = clusterRoots(den_.roots(), 1e-4);
    auto sameFunction = [](const Poly& n1, const Poly& d1, const Poly& n2,
                           const Poly& d2) {
      int npts = n1.degree() + d1.degree() + n2.degree() + d2.degree() + 2;
      double maxv = 0.0, maxdev = 0.0;
      for (int k = 0; k < npts; ++k) {
        Complex z = std::polar(1.7, 2.0 * std::numbers::pi * (k + 0.37) / npts);
        Complex a = n1(z) * d2(z);
        Complex b = n2(z) * d1(z);
        maxv = std::max({maxv, std::abs(a), std::abs(b)});
        maxdev = std::max(maxdev, std::abs(a - b));
      }
      return maxdev <= 1e-9 * std::max(1e-300, maxv);
    };
    for (auto& [dr, dm] : dclusters) {
      for (auto& [nr, nm] : nclusters) {
        if (nm == 0) continue;
        if (std::abs(dr - nr) < tol * (1.0 + std::abs(dr))) {
          int m = std::min(dm, nm);
          Complex r = 0.5 * (dr + nr);
          Poly n2 = num_, d2 = den_;
          for (int k = 0; k < m; ++k) {
            n2 = n2.deflate(r);
            d2 = d2.deflate(r);
          }
          if (sameFunction(num_, den_, n2, d2)) {
            num_ = std::move(n2);
            den_ = std::move(d2);
            nm -= m;
            dm -= m;
          }
          break;
        }
      }
    }
  }
  // Monic denominator.
  Complex lead = den_.leading();
  den_ = den_ * (1.0 / lead);
  num_ = num_ * (1.0 / lead);
}

Complex RationalMap::operator()(Complex z) const {
  Complex d = den_(z);
  double zscale = std::pow(std::max(1.0, std::abs(z)), std::max(0, den_.degree()));
  double scale = den_.maxAbsCoeff() * zscale;
  if (std::abs(d) < 1e-14 * scale) {
    std::ostringstream os;
    os << "evaluation near pole at (" << z.real() << "," << z.imag() << ")";
    throw NearPole(os.str());
  }
  return num_(z) / d;
}

RationalMap RationalMap::derivative() const {
  // (n/d)' = (n'd - nd')/d^2
  return RationalMap(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalMap RationalMap::operator+(const RationalMap& o) const {
  return RationalMap(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalMap RationalMap::operator-(const RationalMap& o) const {
  return RationalMap(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalMap RationalMap::operator*(const RationalMap& o) const {
  return RationalMap(num_ * o.num_, den_ * o.den_);
}
RationalMap RationalMap::operator/(const RationalMap& o) const {
  if (o.isZero()) throw Error("division by zero rational map");
  return RationalMap(num_ * o.den_, den_ * o.num_);
}
RationalMap RationalMap::operator*(Complex s) const {
  return RationalMap(num_ * s, den_);
}

std::vector<std::pair<Complex, int>> clusterRoots(const std::vector<Complex>& roots,
                                                  double tol) {
  std::vector<std::pair<Complex, int>> out;
  for (Complex r : roots) {
    bool merged = false;
    for (auto& [rep, mult] : out) {
      if (std::abs(r - rep) < tol * (1.0 + std::abs(rep))) {
        rep = (rep * static_cast<double>(mult) + r) / static_cast<double>(mult + 1);
        ++mult;
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(r, 1);
  }
  return out;
}

std::vector<std::pair<Complex, int>> RationalMap::poles() const {
  return clusterRoots(den_.roots());
}

std::vector<std::pair<Complex, int>> RationalMap::zeros() const {
  return clusterRoots(num_.roots());
}

bool RationalMap::approxEqual(const RationalMap& o, double tol) const {
  auto close = [&](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return false;
    double scale = std::max({1.0, a.maxAbsCoeff(), b.maxAbsCoeff()});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
      if (std::abs(a.coeffs()[i] - b.coeffs()[i]) > tol * scale) return false;
    }
    return true;
  };
  return close(num_, o.num_) && close(den_, o.den_);
}

}  // namespace cmi
