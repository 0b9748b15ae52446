#include "cmi/polynomial.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace cmi {

void Poly::trim() {
  double scale = 0.0;
  for (Complex c : coeffs_) scale = std::max(scale, std::abs(c));
  double cut = scale * 1e-300;  // drop only exact/denormal zeros
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
}

double Poly::maxAbsCoeff() const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Poly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Complex> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Complex(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  if (isZero() || o.isZero()) return Poly();
  std::vector<Complex> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Poly(std::move(c));
}

Poly Poly::operator*(Complex s) const {
  std::vector<Complex> c(coeffs_);
  for (Complex& x : c) x *= s;
  return Poly(std::move(c));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.isZero()) throw Error("polynomial division by zero");
  std::vector<Complex> r = coeffs_;
  int dn = d.degree();
  int qn = degree() - dn;
  if (qn < 0) return {Poly(), *this};
  std::vector<Complex> q(qn + 1, 0.0);
  for (int k = qn; k >= 0; --k) {
    Complex f = r[k + dn] / d.coeffs()[dn];
    q[k] = f;
    for (int i = 0; i <= dn; ++i) r[k + i] -= f * d.coeffs()[i];
  }
  r.resize(dn > 0 ? dn : 0);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::deflate(Complex root) const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Complex> q(coeffs_.size() - 1);
  Complex carry = coeffs_.back();
  for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
    q[k] = carry;
    carry = coeffs_[k] + carry * root;
  }
  return Poly(std::move(q));
}

Poly Poly::fromRoots(const std::vector<Complex>& roots, Complex leading) {
  Poly p = Poly::constant(leading);
  for (Complex r : roots) p = p * Poly({-r, 1.0});
  return p;
}

std::vector<Complex> Poly::roots() const {
  int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / coeffs_[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

}  // namespace cmi
