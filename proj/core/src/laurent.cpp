#include "cmi/laurent.hpp"

#include <cmath>

namespace cmi {

LaurentExpansion::LaurentExpansion(std::vector<Complex> centers, std::vector<double> scales,
                                   int degree)
    : centers_(std::move(centers)), scales_(std::move(scales)), degree_(degree) {
  if (centers_.size() != scales_.size()) throw Error("center/scale size mismatch");
  if (degree_ < 1) throw Error("Laurent degree must be >= 1");
  coeffs_.assign((degree_ + 1) + centers_.size() * degree_, 0.0);
}

LaurentExpansion LaurentExpansion::forDomain(const CircularDomain& domain, int degree) {
  std::vector<Complex> centers;
  std::vector<double> scales;
  for (const HomologyLoop& loop : domain.loops()) {
    centers.push_back(loop.center);
    scales.push_back(loop.radius);
  }
  return LaurentExpansion(std::move(centers), std::move(scales), degree);
}

void LaurentExpansion::setCoefficients(std::vector<Complex> c) {
  if (c.size() != coeffs_.size()) throw Error("coefficient count mismatch");
  coeffs_ = std::move(c);
}

Complex LaurentExpansion::operator()(Complex z) const {
  // Outer polynomial part, Horner.
  Complex acc = 0.0;
  for (int k = degree_; k >= 0; --k) acc = acc * z + coeffs_[k];
  // Singular blocks.
  std::size_t off = degree_ + 1;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    Complex w = scales_[j] / (z - centers_[j]);
    Complex p = 0.0;
    for (int m = degree_; m >= 1; --m) p = (p + coeffs_[off + m - 1]) * w;
    acc += p;
    off += degree_;
  }
  return acc;
}

Complex LaurentExpansion::basis(std::size_t i, Complex z) const {
  std::size_t outer = degree_ + 1;
  if (i < outer) return std::pow(z, static_cast<double>(i));
  i -= outer;
  std::size_t j = i / degree_;
  int m = static_cast<int>(i % degree_) + 1;
  return std::pow(scales_[j] / (z - centers_[j]), static_cast<double>(m));
}

double LaurentExpansion::norm() const {
  double s = 0.0;
  for (Complex c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

LaurentExpansion LaurentExpansion::raised(int newDegree) const {
  if (newDegree <= degree_) return *this;
  LaurentExpansion out(centers_, scales_, newDegree);
  for (int k = 0; k <= degree_; ++k) out.coeffs_[k] = coeffs_[k];
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    std::size_t src = (degree_ + 1) + j * degree_;
    std::size_t dst = (newDegree + 1) + j * newDegree;
    for (int m = 0; m < degree_; ++m) out.coeffs_[dst + m] = coeffs_[src + m];
  }
  return out;
}

Complex SprayMultiplier::operator()(Complex z) const {
  Complex prod = 1.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Complex zi = i < zeta.size() ? zeta[i] : Complex(0.0);
    Complex factor = 1.0 + zi * basis[i](z);
    if (std::abs(factor) < 1e-12) throw SprayVanishes("spray factor vanishes");
    prod *= factor;
  }
  return prod;
}

Complex evalMultiplier(const SprayMultiplier& h, Complex z) { return h(z); }

}  // namespace cmi
