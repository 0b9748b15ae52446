#include "cmi/nulldata.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace cmi {

DataFun::DataFun(std::vector<RationalMap> coeffs, LaurentExpansion gen)
    : coeffs_(std::move(coeffs)), gen_(std::move(gen)) {
  if (coeffs_.empty()) coeffs_.push_back(RationalMap());
  trim();
}

void DataFun::trim() {
  while (coeffs_.size() > 1 && coeffs_.back().isZero()) coeffs_.pop_back();
  if (coeffs_.size() <= 1) gen_.reset();
}

const RationalMap& DataFun::rational() const {
  if (!isRational()) throw Error("DataFun is not rational");
  return coeffs_[0];
}

bool DataFun::isZero() const {
  for (const RationalMap& c : coeffs_) {
    if (!c.isZero()) return false;
  }
  return true;
}

Complex DataFun::operator()(Complex z) const {
  if (isRational()) return coeffs_[0](z);
  Complex G = std::exp((*gen_)(z));
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * G + (*it)(z);
  return acc;
}

namespace {

std::optional<LaurentExpansion> mergeGen(const DataFun& a, const DataFun& b) {
  if (a.generator()) return a.generator();
  return b.generator();
}

}  // namespace

DataFun DataFun::operator+(const DataFun& o) const {
  std::vector<RationalMap> c(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    RationalMap s;
    if (i < coeffs_.size()) s = s + coeffs_[i];
    if (i < o.coeffs_.size()) s = s + o.coeffs_[i];
    c[i] = s;
  }
  auto g = mergeGen(*this, o);
  return g ? DataFun(std::move(c), *g) : DataFun(c.empty() ? RationalMap() : c[0]);
}

DataFun DataFun::operator-(const DataFun& o) const { return *this + o * Complex(-1.0); }

DataFun DataFun::operator*(const DataFun& o) const {
  std::vector<RationalMap> c(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      c[i + j] = c[i + j] + coeffs_[i] * o.coeffs_[j];
    }
  }
  auto g = mergeGen(*this, o);
  return g ? DataFun(std::move(c), *g) : DataFun(c[0]);
}

DataFun DataFun::operator*(Complex s) const {
  std::vector<RationalMap> c(coeffs_);
  for (RationalMap& r : c) r = r * s;
  return gen_ ? DataFun(std::move(c), *gen_) : DataFun(c[0]);
}

DataFun DataFun::operator/(const DataFun& o) const {
  if (o.isZero()) throw Error("division by zero DataFun");
  if (o.isRational()) {
    std::vector<RationalMap> c(coeffs_);
    for (RationalMap& r : c) r = r / o.coeffs_[0];
    return gen_ ? DataFun(std::move(c), *gen_) : DataFun(c[0]);
  }
  // Long division in G over the rational function field; must be exact.
  std::vector<RationalMap> rem(coeffs_);
  int dn = static_cast<int>(o.coeffs_.size()) - 1;
  int qn = static_cast<int>(rem.size()) - 1 - dn;
  if (qn < 0) throw Error("DataFun quotient is not polynomial in the generator");
  std::vector<RationalMap> q(qn + 1);
  for (int k = qn; k >= 0; --k) {
    RationalMap f = rem[k + dn] / o.coeffs_[dn];
    q[k] = f;
    for (int i = 0; i <= dn; ++i) rem[k + i] = rem[k + i] - f * o.coeffs_[i];
  }
  double scale = maxScale() + o.maxScale();
  for (const RationalMap& r : rem) {
    if (r.num().maxAbsCoeff() > 1e-9 * (1.0 + scale)) {
      throw Error("DataFun quotient has a nonzero remainder");
    }
  }
  auto g = mergeGen(*this, o);
  return g ? DataFun(std::move(q), *g) : DataFun(q[0]);
}

double DataFun::maxScale() const {
  double m = 0.0;
  for (const RationalMap& c : coeffs_) m = std::max(m, c.num().maxAbsCoeff());
  return m;
}

bool DataFun::approxZero(double tol, double scale) const {
  for (const RationalMap& c : coeffs_) {
    if (c.num().maxAbsCoeff() > tol * (1.0 + scale)) return false;
  }
  return true;
}

NullData liftWeierstrass(const WeierstrassPair& pair, const CircularDomain& domain) {
  if (pair.g.isZero()) throw ZeroPoleMismatch("complex Gauss map is identically zero");
  RationalMap invg = RationalMap::constant(1.0) / pair.g;
  Complex half(0.5, 0.0), ihalf(0.0, 0.5);
  std::vector<DataFun> comps = {
      DataFun((invg - pair.g) * half * pair.phi3),
      DataFun((invg + pair.g) * ihalf * pair.phi3),
      DataFun(pair.phi3)};
  // Pole/zero compensation: no component may have a pole in the closed domain.
  std::ostringstream bad;
  bool ok = true;
  for (int j = 0; j < 3; ++j) {
    for (const auto& [p, mult] : comps[j].rational().poles()) {
      if (domain.containsClosed(p, 1e-9)) {
        ok = false;
        bad << " component " << (j + 1) << ": pole of order " << mult << " at (" << p.real()
            << "," << p.imag() << ")";
      }
    }
  }
  if (!ok) throw ZeroPoleMismatch("phi3 does not compensate g:" + bad.str());
  return NullData{3, std::move(comps), domain};
}

namespace {

DomainGrid validationGrid(const CircularDomain& domain) {
  double minGap = 1.0;
  for (const Hole& h : domain.holes()) {
    minGap = std::min(minGap, 1.0 - std::abs(h.center) - h.radius);
  }
  const auto& holes = domain.holes();
  for (std::size_t i = 0; i < holes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      minGap = std::min(minGap, std::abs(holes[i].center - holes[j].center) -
                                    holes[i].radius - holes[j].radius);
    }
  }
  return buildGrid(domain, 16, std::min(0.02, minGap / 4.0));
}

}  // namespace

ValidationReport validateNull(const NullData& f) {
  if (static_cast<int>(f.components.size()) != f.n || f.n < 3) {
    throw Error("null data component count does not match n");
  }
  ValidationReport report;

  // Nullity as a polynomial identity.
  DataFun sq;
  double scale = 0.0;
  for (const DataFun& c : f.components) {
    sq = sq + c * c;
    double m = c.maxScale();
    scale = std::max(scale, m * m);
  }
  if (!sq.approxZero(1e-12, scale)) {
    throw NullityViolated("sum of squares is not the zero rational identity");
  }

  // Poles of rational coefficients must avoid the closed domain.
  for (std::size_t j = 0; j < f.components.size(); ++j) {
    for (const RationalMap& c : f.components[j].coeffs()) {
      for (const auto& [p, mult] : c.poles()) {
        if (f.domain.containsClosed(p, 1e-9)) {
          std::ostringstream os;
          os << "component " << (j + 1) << " has a pole of order " << mult << " at ("
             << p.real() << "," << p.imag() << ")";
          throw PoleInDomain(os.str());
        }
      }
    }
  }

  // Common zeros: every candidate root of a component numerator is checked
  // against all components.
  const DataFun* probe = nullptr;
  for (const DataFun& c : f.components) {
    if (!c.isZero()) {
      probe = &c;
      break;
    }
  }
  if (!probe) throw CommonZero("all components vanish identically");
  std::vector<Complex> candidates;
  for (const RationalMap& c : probe->coeffs()) {
    for (const auto& [z0, mult] : c.zeros()) {
      (void)mult;
      candidates.push_back(z0);
    }
  }
  for (Complex z0 : candidates) {
    if (!f.domain.containsClosed(z0, 1e-9)) continue;
    double maxAbs = 0.0;
    for (const DataFun& c : f.components) maxAbs = std::max(maxAbs, std::abs(c(z0)));
    if (maxAbs < 1e-9 * (1.0 + scale)) {
      std::ostringstream os;
      os << "common zero at (" << z0.real() << "," << z0.imag() << ")";
      throw CommonZero(os.str());
    }
  }

  // Sampled image rank and minimum modulus.
  DomainGrid grid = validationGrid(f.domain);
  std::size_t m = grid.points().size();
  Eigen::MatrixXcd vals(f.n, m);
  double minMod = 1e300;
  for (std::size_t i = 0; i < m; ++i) {
    double rowNorm = 0.0;
    for (int j = 0; j < f.n; ++j) {
      Complex v = f.components[j](grid.points()[i].z);
      vals(j, static_cast<Eigen::Index>(i)) = v;
      rowNorm += std::norm(v);
    }
    minMod = std::min(minMod, std::sqrt(rowNorm));
  }
  report.minModulusOnGrid = minMod;
  if (minMod < 1e-10) throw CommonZero("data nearly vanishes at a grid point");

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vals);
  double thresh = 1e-8 * svd.singularValues()(0);
  int rank = 0;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()(k) > thresh) ++rank;
  }
  report.rank = rank;
  report.full = (rank == f.n);
  return report;
}

GaussMapResult gaussMapFromNull(const NullData& f) {
  GaussMapResult out;
  out.components = f.components;
  if (f.n == 3) {
    DataFun denom = f.components[0] - f.components[1] * Complex(0.0, 1.0);
    out.complexGauss = f.components[2] / denom;
  }
  return out;
}

bool projectivelyEqual(const std::vector<DataFun>& a, const std::vector<DataFun>& b,
                       double tol) {
  if (a.size() != b.size()) return false;
  double scale = 0.0;
  for (const DataFun& c : a) scale = std::max(scale, c.maxScale());
  for (const DataFun& c : b) scale = std::max(scale, c.maxScale());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      DataFun cross = a[i] * b[j] - a[j] * b[i];
      if (!cross.approxZero(tol, scale * scale)) return false;
    }
  }
  return true;
}

}  // namespace cmi
